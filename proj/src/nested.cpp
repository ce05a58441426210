#include "optuple/nested.hpp"

#include <algorithm>
#include <cmath>

namespace optuple {

namespace {

std::vector<double> component_norms(const std::vector<Vector>& values) {
  std::vector<double> n;
  n.reserve(values.size());
  for (const Vector& v : values) n.push_back(lp_norm(v));
  return n;
}

double outer_norm(const std::vector<double>& norms, const Exponent& p) {
  std::vector<cx> tmp;
  tmp.reserve(norms.size());
  for (double n : norms) tmp.emplace_back(n, 0.0);
  return lp_norm(tmp, p);
}

std::vector<int> outer_argmax(const std::vector<double>& norms, double tol_cluster) {
  const double m = *std::max_element(norms.begin(), norms.end());
  std::vector<int> out;
  for (size_t i = 0; i < norms.size(); ++i)
    if (norms[i] >= m * (1.0 - tol_cluster)) out.push_back(static_cast<int>(i));
  return out;
}

constexpr double kSupportTol = 1e-12;

}  // namespace

cx TupleFunctional::operator()(const std::vector<Vector>& values) const {
  if (values.size() != comps.size())
    throw DimensionMismatch("tuple functional applied to mismatched value list");
  cx s = 0.0;
  for (size_t i = 0; i < comps.size(); ++i) s += functional_apply(comps[i], values[i]);
  return s;
}

double tuple_functional_norm(const TupleFunctional& f, const Exponent& outer_p) {
  std::vector<cx> norms;
  norms.reserve(f.comps.size());
  for (const Vector& c : f.comps) norms.emplace_back(lp_norm(c), 0.0);
  return lp_norm(norms, outer_p.dual());
}

TupleFunctional nested_duality_primary(const std::vector<Vector>& values,
                                       const Exponent& outer_p, double tol_cluster) {
  const std::vector<double> norms = component_norms(values);
  const double total = outer_norm(norms, outer_p);
  if (total == 0.0) throw ZeroVectorError();
  const int d = static_cast<int>(values.size());

  TupleFunctional f;
  f.comps.reserve(values.size());

  if (outer_p.is_infinite()) {
    const int k = outer_argmax(norms, tol_cluster).front();
    for (int i = 0; i < d; ++i) {
      if (i == k)
        f.comps.push_back(duality_map(values[static_cast<size_t>(i)], tol_cluster).primary);
      else
        f.comps.push_back(Vector::zeros(values[static_cast<size_t>(i)].space().dual()));
    }
    return f;
  }

  for (int i = 0; i < d; ++i) {
    const Vector& v = values[static_cast<size_t>(i)];
    if (norms[static_cast<size_t>(i)] <= kSupportTol * total) {
      f.comps.push_back(Vector::zeros(v.space().dual()));
      continue;
    }
    // weight 1 for outer p=1, (||w_i||/||w||)^(p-1) otherwise
    const double w = outer_p.is_one()
                         ? 1.0
                         : std::pow(norms[static_cast<size_t>(i)] / total,
                                    outer_p.value() - 1.0);
    Vector g = duality_map(v, tol_cluster).primary;
    g *= cx(w, 0.0);
    f.comps.push_back(std::move(g));
  }
  return f;
}

namespace {

/// Expands per-component choice lists into full tuple functionals. Returns an
/// empty list when the product would exceed `cap` (caller falls back).
std::vector<TupleFunctional> cross_product(const std::vector<std::vector<Vector>>& per_comp,
                                           int cap) {
  std::vector<TupleFunctional> out;
  double total = 1.0;
  for (const auto& c : per_comp) {
    if (c.empty()) return out;
    total *= static_cast<double>(c.size());
  }
  if (total > cap) return out;

  std::vector<size_t> idx(per_comp.size(), 0);
  while (true) {
    TupleFunctional f;
    for (size_t i = 0; i < per_comp.size(); ++i) f.comps.push_back(per_comp[i][idx[i]]);
    out.push_back(std::move(f));
    size_t k = 0;
    while (k < idx.size() && ++idx[k] == per_comp[k].size()) {
      idx[k] = 0;
      ++k;
    }
    if (k == idx.size()) break;
  }
  return out;
}

}  // namespace

std::vector<TupleFunctional> nested_duality_extremes(const std::vector<Vector>& values,
                                                     const Exponent& outer_p, int cap,
                                                     double tol_cluster) {
  const std::vector<double> norms = component_norms(values);
  const double total = outer_norm(norms, outer_p);
  if (total == 0.0) throw ZeroVectorError();
  const int d = static_cast<int>(values.size());

  if (outer_p.is_infinite()) {
    // Extreme points are concentrated on one argmax component each.
    std::vector<TupleFunctional> out;
    for (int k : outer_argmax(norms, tol_cluster)) {
      std::vector<Vector> inner;
      try {
        inner = duality_map(values[static_cast<size_t>(k)], tol_cluster)
                    .extreme_points(cap);
      } catch (const DimensionTooLarge&) {
        inner = {duality_map(values[static_cast<size_t>(k)], tol_cluster).primary};
      }
      for (Vector& g : inner) {
        TupleFunctional f;
        for (int i = 0; i < d; ++i) {
          if (i == k)
            f.comps.push_back(g);
          else
            f.comps.push_back(Vector::zeros(values[static_cast<size_t>(i)].space().dual()));
        }
        out.push_back(std::move(f));
        if (static_cast<int>(out.size()) >= cap) return out;
      }
    }
    return out;
  }

  // Finite outer exponent: fixed weights, independent extreme choices per
  // component. For outer p=1 a zero component leaves the whole dual ball free;
  // we sample its extreme points like the l_1 vector case (unit sphere of the
  // component dual, via the coordinate functionals with unimodular phases).
  std::vector<std::vector<Vector>> per_comp(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) {
    const Vector& v = values[static_cast<size_t>(i)];
    const double ni = norms[static_cast<size_t>(i)];
    if (ni <= kSupportTol * total) {
      if (outer_p.is_one()) {
        // free component: sample +-coordinate functionals of the dual ball
        const LpSpace ds = v.space().dual();
        for (int j = 0; j < ds.dim; ++j) {
          Vector e = Vector::unit(ds, j);
          per_comp[static_cast<size_t>(i)].push_back(e);
          per_comp[static_cast<size_t>(i)].push_back(cx(-1.0, 0.0) * e);
        }
      } else {
        per_comp[static_cast<size_t>(i)].push_back(Vector::zeros(v.space().dual()));
      }
      continue;
    }
    const double w =
        outer_p.is_one() ? 1.0 : std::pow(ni / total, outer_p.value() - 1.0);
    std::vector<Vector> inner;
    try {
      inner = duality_map(v, tol_cluster).extreme_points(cap);
    } catch (const DimensionTooLarge&) {
      inner = {duality_map(v, tol_cluster).primary};
    }
    for (Vector& g : inner) {
      g *= cx(w, 0.0);
      per_comp[static_cast<size_t>(i)].push_back(std::move(g));
    }
  }
  std::vector<TupleFunctional> out = cross_product(per_comp, cap);
  if (out.empty()) out.push_back(nested_duality_primary(values, outer_p, tol_cluster));
  return out;
}

std::vector<TupleFunctional> nested_duality_candidates(const std::vector<Vector>& values,
                                                       const Exponent& outer_p, int cap,
                                                       double tol_cluster) {
  std::vector<TupleFunctional> out;
  out.push_back(nested_duality_primary(values, outer_p, tol_cluster));
  if (nested_smooth(values, outer_p, tol_cluster)) return out;
  std::vector<TupleFunctional> ext =
      nested_duality_extremes(values, outer_p, cap, tol_cluster);
  for (TupleFunctional& f : ext) out.push_back(std::move(f));
  return out;
}

RhoPair nested_rho(const std::vector<Vector>& values, const std::vector<Vector>& dirs,
                   const Exponent& outer_p, double tol_cluster) {
  if (values.size() != dirs.size())
    throw DimensionMismatch("nested_rho: value/direction counts disagree");
  const std::vector<double> norms = component_norms(values);
  const double total = outer_norm(norms, outer_p);
  if (total == 0.0) throw ZeroVectorError();
  const int d = static_cast<int>(values.size());

  if (outer_p.is_infinite()) {
    double lo = 0.0, hi = 0.0;
    bool first = true;
    for (int k : outer_argmax(norms, tol_cluster)) {
      const RhoPair r = rho_vector(values[static_cast<size_t>(k)],
                                   dirs[static_cast<size_t>(k)], tol_cluster);
      lo = first ? r.minus : std::min(lo, r.minus);
      hi = first ? r.plus : std::max(hi, r.plus);
      first = false;
    }
    return {lo, hi};
  }

  double lo = 0.0, hi = 0.0;
  for (int i = 0; i < d; ++i) {
    const double ni = norms[static_cast<size_t>(i)];
    const Vector& vi = dirs[static_cast<size_t>(i)];
    if (ni <= kSupportTol * total) {
      if (outer_p.is_one()) {
        const double nv = lp_norm(vi);
        lo -= nv;
        hi += nv;
      }
      // for p > 1 a zero component contributes nothing (forced zero weight)
      continue;
    }
    const double w = outer_p.is_one() ? 1.0 : std::pow(ni / total, outer_p.value() - 1.0);
    const RhoPair r = rho_vector(values[static_cast<size_t>(i)], vi, tol_cluster);
    lo += w * r.minus;
    hi += w * r.plus;
  }
  return {lo, hi};
}

bool nested_smooth(const std::vector<Vector>& values, const Exponent& outer_p,
                   double tol_cluster) {
  const std::vector<double> norms = component_norms(values);
  const double total = outer_norm(norms, outer_p);
  if (total == 0.0) throw ZeroVectorError();

  if (outer_p.is_infinite()) {
    const std::vector<int> ks = outer_argmax(norms, tol_cluster);
    return ks.size() == 1 &&
           is_smooth_point(values[static_cast<size_t>(ks.front())], tol_cluster);
  }
  for (size_t i = 0; i < values.size(); ++i) {
    if (norms[i] <= kSupportTol * total) {
      if (outer_p.is_one()) return false;  // whole dual ball free on this slot
      continue;
    }
    if (!is_smooth_point(values[i], tol_cluster)) return false;
  }
  return true;
}

bool nested_is_extreme_dual(const TupleFunctional& f, const Exponent& dual_outer,
                            double tol) {
  std::vector<cx> norms;
  for (const Vector& c : f.comps) norms.emplace_back(lp_norm(c), 0.0);
  const double total = lp_norm(norms, dual_outer);
  if (std::abs(total - 1.0) > tol) return false;

  if (dual_outer.is_one()) {
    // exactly one nonzero component, itself extreme
    int nnz = -1;
    for (size_t i = 0; i < f.comps.size(); ++i) {
      if (std::abs(norms[i]) > tol) {
        if (nnz >= 0) return false;
        nnz = static_cast<int>(i);
      }
    }
    if (nnz < 0) return false;
    Vector g = f.comps[static_cast<size_t>(nnz)];
    g *= cx(1.0 / std::abs(norms[static_cast<size_t>(nnz)]), 0.0);
    return is_extreme_point(g, std::max(tol, 1e-9));
  }

  // For q in (1, inf] every nonzero component must normalize to an extreme
  // point; for q = inf additionally every component norm must be 1.
  for (size_t i = 0; i < f.comps.size(); ++i) {
    const double ni = std::abs(norms[i]);
    if (dual_outer.is_infinite() && std::abs(ni - 1.0) > tol) return false;
    if (ni <= tol) {
      if (dual_outer.is_infinite()) return false;
      continue;
    }
    Vector g = f.comps[i];
    g *= cx(1.0 / ni, 0.0);
    if (!is_extreme_point(g, std::max(tol, 1e-9))) return false;
  }
  return true;
}

}  // namespace optuple
