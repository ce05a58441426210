#include "optuple/duality.hpp"

#include <algorithm>
#include <cmath>

namespace optuple {

namespace {
constexpr double kSupportTol = 1e-12;  // relative threshold for zero coordinates
}

std::vector<int> support_coords(const Vector& x) {
  const double m = max_abs(x.entries());
  std::vector<int> out;
  for (int i = 0; i < x.dim(); ++i)
    if (std::abs(x[i]) > kSupportTol * m) out.push_back(i);
  return out;
}

std::vector<int> zero_coords(const Vector& x) {
  const double m = max_abs(x.entries());
  std::vector<int> out;
  for (int i = 0; i < x.dim(); ++i)
    if (std::abs(x[i]) <= kSupportTol * m) out.push_back(i);
  return out;
}

std::vector<int> argmax_coords(const Vector& x, double tol_cluster) {
  const double m = max_abs(x.entries());
  std::vector<int> out;
  for (int i = 0; i < x.dim(); ++i)
    if (std::abs(x[i]) >= m * (1.0 - tol_cluster)) out.push_back(i);
  return out;
}

NormingFunctionalSet duality_map(const Vector& x, double tol_cluster) {
  const double nx = lp_norm(x);
  if (nx == 0.0) throw ZeroVectorError();
  const LpSpace dual_space = x.space().dual();
  const Exponent p = x.space().p;

  if (p.is_one()) {
    // f_i = conj(sgn x_i) on the support; anything unimodular is extreme off it.
    Vector f = Vector::zeros(dual_space);
    for (int i : support_coords(x)) f[i] = std::conj(sgn(x[i]));
    NormingFunctionalSet set{std::move(f), false, zero_coords(x), {}, {}};
    set.singleton = set.free_coords.empty();
    return set;
  }

  if (p.is_infinite()) {
    std::vector<int> ks = argmax_coords(x, tol_cluster);
    std::vector<cx> phases;
    for (int k : ks) phases.push_back(std::conj(sgn(x[k])));
    Vector f = Vector::zeros(dual_space);
    f[ks.front()] = phases.front();
    return NormingFunctionalSet{std::move(f), ks.size() == 1, {}, std::move(ks),
                                std::move(phases)};
  }

  // 1 < p < inf: unique f_i = conj(sgn x_i) |x_i|^(p-1) / ||x||^(p-1).
  const double pv = p.value();
  Vector f = Vector::zeros(dual_space);
  for (int i = 0; i < x.dim(); ++i) {
    const double a = std::abs(x[i]);
    if (a == 0.0) continue;
    f[i] = std::conj(sgn(x[i])) * std::pow(a / nx, pv - 1.0);
  }
  return NormingFunctionalSet{std::move(f), true, {}, {}, {}};
}

std::vector<Vector> NormingFunctionalSet::extreme_points(int cap, int phase_samples) const {
  if (singleton || (free_coords.empty() && argmax_coords.size() <= 1))
    return {primary};

  std::vector<Vector> out;
  if (!argmax_coords.empty()) {
    // p = inf: one coordinate functional per argmax coordinate.
    for (size_t j = 0; j < argmax_coords.size(); ++j) {
      Vector f = Vector::zeros(primary.space());
      f[argmax_coords[j]] = argmax_phases[j];
      out.push_back(std::move(f));
    }
    return out;
  }

  // p = 1: complete the support signs with unimodular entries.
  const bool real_field = primary.field() == Field::real;
  const int phases = real_field ? 2 : phase_samples;
  double count = 1.0;
  for (size_t i = 0; i < free_coords.size(); ++i) {
    count *= phases;
    if (count > cap) throw DimensionTooLarge("extreme-point enumeration exceeds cap");
  }
  const int total = static_cast<int>(count);
  const double pi = std::acos(-1.0);
  for (int mask = 0; mask < total; ++mask) {
    Vector f = primary;
    int rest = mask;
    for (int k : free_coords) {
      const int ph = rest % phases;
      rest /= phases;
      f[k] = real_field ? cx(ph == 0 ? 1.0 : -1.0, 0.0)
                        : std::polar(1.0, 2.0 * pi * ph / phases);
    }
    out.push_back(std::move(f));
  }
  return out;
}

Vector norming_vector(const Vector& f) {
  // The maximizer of Re f(u) over the unit ball of the predual: the duality
  // map applied with the conjugated sign convention.
  const double nf = lp_norm(f);
  if (nf == 0.0) throw ZeroVectorError();
  const Exponent p = f.space().p;       // exponent of the space f lives in
  const LpSpace target = f.space().dual();
  Vector u = Vector::zeros(target);

  if (p.is_one()) {
    // f in l_1: u unimodular against every sign of f.
    for (int i = 0; i < f.dim(); ++i) u[i] = std::conj(sgn(f[i]));
    return u;
  }
  if (p.is_infinite()) {
    const std::vector<int> ks = argmax_coords(f, 1e-12);
    u[ks.front()] = std::conj(sgn(f[ks.front()]));
    return u;
  }
  const double pv = p.value();
  for (int i = 0; i < f.dim(); ++i) {
    const double a = std::abs(f[i]);
    if (a == 0.0) continue;
    u[i] = std::conj(sgn(f[i])) * std::pow(a / nf, pv - 1.0);
  }
  return u;
}

bool is_smooth_point(const Vector& x, double tol_cluster) {
  if (lp_norm(x) == 0.0) throw ZeroVectorError();
  const Exponent p = x.space().p;
  if (p.is_one()) return zero_coords(x).empty();
  if (p.is_infinite()) return argmax_coords(x, tol_cluster).size() == 1;
  return true;
}

bool is_extreme_point(const Vector& x, double tol_unit) {
  const double n = lp_norm(x);
  if (std::abs(n - 1.0) > tol_unit) throw NotUnitVectorError(n);
  const Exponent p = x.space().p;
  if (p.is_one()) return support_coords(x).size() == 1;
  if (p.is_infinite()) {
    for (int i = 0; i < x.dim(); ++i)
      if (std::abs(std::abs(x[i]) - 1.0) > tol_unit) return false;
    return true;
  }
  return true;  // strictly convex ball
}

RhoPair rho_vector(const Vector& x, const Vector& y, double tol_cluster) {
  if (x.space() != y.space()) throw DimensionMismatch("rho_vector: mismatched spaces");
  const double nx = lp_norm(x);
  if (nx == 0.0) throw ZeroVectorError();
  const Exponent p = x.space().p;

  if (p.is_one()) {
    double base = 0.0, spread = 0.0;
    const double m = max_abs(x.entries());
    for (int i = 0; i < x.dim(); ++i) {
      if (std::abs(x[i]) > kSupportTol * m)
        base += std::real(std::conj(sgn(x[i])) * y[i]);
      else
        spread += std::abs(y[i]);
    }
    return {base - spread, base + spread};
  }

  if (p.is_infinite()) {
    double lo = 0.0, hi = 0.0;
    bool first = true;
    for (int k : argmax_coords(x, tol_cluster)) {
      const double v = std::real(std::conj(sgn(x[k])) * y[k]);
      lo = first ? v : std::min(lo, v);
      hi = first ? v : std::max(hi, v);
      first = false;
    }
    return {lo, hi};
  }

  const Vector f = duality_map(x).primary;
  const double v = std::real(functional_apply(f, y));
  return {v, v};
}

}  // namespace optuple
