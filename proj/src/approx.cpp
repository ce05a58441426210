#include "optuple/approx.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>

#include "optuple/detail/simplex.hpp"
#include "optuple/duality.hpp"
#include "optuple/multistart.hpp"

namespace optuple {

namespace detail {

FeasibilityResult equality_feasibility(const std::vector<std::vector<double>>& A,
                                       const std::vector<double>& b, double tol) {
  const int m = static_cast<int>(A.size());
  const int n = m > 0 ? static_cast<int>(A.front().size()) : 0;
  FeasibilityResult out;
  out.t.assign(static_cast<size_t>(n), 0.0);
  if (m == 0) {
    out.feasible = true;
    return out;
  }

  // Tableau [A | I | rhs] with rows flipped so rhs >= 0; artificial basis.
  std::vector<std::vector<double>> tab(static_cast<size_t>(m),
                                       std::vector<double>(static_cast<size_t>(n + m + 1)));
  for (int i = 0; i < m; ++i) {
    const double s = b[static_cast<size_t>(i)] < 0.0 ? -1.0 : 1.0;
    for (int j = 0; j < n; ++j) tab[i][static_cast<size_t>(j)] = s * A[i][static_cast<size_t>(j)];
    tab[i][static_cast<size_t>(n + i)] = 1.0;
    tab[i].back() = s * b[static_cast<size_t>(i)];
  }
  std::vector<int> basis(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) basis[static_cast<size_t>(i)] = n + i;

  // Phase-1 objective: sum of artificials.
  auto reduced_cost = [&](int j) {
    double r = j >= n ? 1.0 : 0.0;
    for (int i = 0; i < m; ++i)
      if (basis[static_cast<size_t>(i)] >= n) r -= tab[i][static_cast<size_t>(j)];
    return r;
  };

  for (int iter = 0; iter < 2000; ++iter) {
    int enter = -1;
    for (int j = 0; j < n + m; ++j) {
      if (reduced_cost(j) < -tol) { enter = j; break; }  // Bland: lowest index
    }
    if (enter < 0) break;
    int leave = -1;
    double best_ratio = 0.0;
    for (int i = 0; i < m; ++i) {
      const double a = tab[i][static_cast<size_t>(enter)];
      if (a <= tol) continue;
      const double ratio = tab[i].back() / a;
      if (leave < 0 || ratio < best_ratio - tol ||
          (ratio < best_ratio + tol && basis[static_cast<size_t>(i)] <
                                           basis[static_cast<size_t>(leave)])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave < 0) break;  // unbounded column; cannot happen with the sum row
    const double piv = tab[leave][static_cast<size_t>(enter)];
    for (double& v : tab[static_cast<size_t>(leave)]) v /= piv;
    for (int i = 0; i < m; ++i) {
      if (i == leave) continue;
      const double f = tab[i][static_cast<size_t>(enter)];
      if (f == 0.0) continue;
      for (int j = 0; j <= n + m; ++j)
        tab[i][static_cast<size_t>(j)] -= f * tab[leave][static_cast<size_t>(j)];
    }
    basis[static_cast<size_t>(leave)] = enter;
  }

  double artificial_mass = 0.0;
  for (int i = 0; i < m; ++i)
    if (basis[static_cast<size_t>(i)] >= n) artificial_mass += tab[i].back();
  out.feasible = artificial_mass <= 1e-9;
  for (int i = 0; i < m; ++i)
    if (basis[static_cast<size_t>(i)] < n)
      out.t[static_cast<size_t>(basis[static_cast<size_t>(i)])] = tab[i].back();
  for (double& v : out.t) v = std::max(0.0, v);
  for (int i = 0; i < m; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += A[i][static_cast<size_t>(j)] * out.t[static_cast<size_t>(j)];
    out.residual = std::max(out.residual, std::abs(s - b[static_cast<size_t>(i)]));
  }
  return out;
}

}  // namespace detail

namespace {

// ---------------------------------------------------------------------------
// 1-D and box-constrained minimization of a cached objective, with a
// midpoint-convexity audit over the sampled points.

struct ScalarSearch {
  std::map<double, double> cache;
  long evals = 0;

  double eval(double z, const std::function<double(double)>& f) {
    auto it = cache.find(z);
    if (it != cache.end()) return it->second;
    ++evals;
    return cache.emplace(z, f(z)).first->second;
  }

  /// Interpolation-convexity violation over consecutive sampled triples.
  double audit() const {
    double worst = 0.0;
    if (cache.size() < 3) return worst;
    auto a = cache.begin();
    auto b = std::next(a);
    auto c = std::next(b);
    for (; c != cache.end(); ++a, ++b, ++c) {
      const double span = c->first - a->first;
      if (span <= 0.0) continue;
      const double w = (b->first - a->first) / span;
      const double chord = (1.0 - w) * a->second + w * c->second;
      worst = std::max(worst, b->second - chord);
    }
    return worst;
  }
};

struct GoldenOutcome {
  double z = 0.0;
  double value = 0.0;
};

GoldenOutcome golden_minimize(ScalarSearch& s, const std::function<double(double)>& f,
                              double lo, double hi, double tol_z) {
  const double gr = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - gr * (b - a);
  double x2 = a + gr * (b - a);
  double f1 = s.eval(x1, f);
  double f2 = s.eval(x2, f);
  while (b - a > tol_z) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = s.eval(x1, f);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = s.eval(x2, f);
    }
  }
  GoldenOutcome out;
  out.z = f1 <= f2 ? x1 : x2;
  out.value = std::min(f1, f2);
  return out;
}

struct BoxSearch {
  std::map<std::vector<double>, double> cache;
  long evals = 0;
  double convexity_gap = 0.0;

  double eval(const std::vector<double>& z,
              const std::function<double(const std::vector<double>&)>& f) {
    auto it = cache.find(z);
    if (it != cache.end()) return it->second;
    ++evals;
    return cache.emplace(z, f(z)).first->second;
  }
};

struct BoxOutcome {
  std::vector<double> z;
  double value = 0.0;
};

double golden_1d(const std::function<double(double)>& fn, double a, double b, double tol,
                 double& xbest) {
  const double gr = 0.6180339887498949;
  double x1 = b - gr * (b - a);
  double x2 = a + gr * (b - a);
  double f1 = fn(x1);
  double f2 = fn(x2);
  while (b - a > tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = fn(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = fn(x2);
    }
  }
  xbest = f1 <= f2 ? x1 : x2;
  return std::min(f1, f2);
}

/// Exact minimization of a jointly convex function over a box by recursive
/// golden section: every slice and every partial minimum is again convex,
/// hence unimodal, so each 1-D search is reliable even across kinks. Cost is
/// exponential in the coordinate count; intended for <= 3 coordinates.
BoxOutcome nested_golden_minimize(BoxSearch& s,
                                  const std::function<double(const std::vector<double>&)>& f,
                                  const std::vector<double>& lo,
                                  const std::vector<double>& hi) {
  const size_t m = lo.size();
  std::vector<double> z(m, 0.0);
  std::function<double(size_t)> rec = [&](size_t k) -> double {
    if (k == m) return s.eval(z, f);
    if (hi[k] - lo[k] <= 0.0) {
      z[k] = lo[k];
      return rec(k + 1);
    }
    const double tol = std::max(1e-9, 1e-7 * (hi[k] - lo[k]));
    double xb = lo[k];
    const double v =
        golden_1d([&](double x) { z[k] = x; return rec(k + 1); }, lo[k], hi[k], tol, xb);
    z[k] = xb;
    return std::min(v, rec(k + 1));  // re-solve at the argmin to restore z[k+1..]
  };
  BoxOutcome out;
  out.value = rec(0);
  out.z = z;
  return out;
}

/// Compass pattern search with contraction. Stalled polls escalate before the
/// step contracts: the per-axis non-degrading moves are combined into one step
/// (breaks the tie stalls of separable maxima), then a subgradient direction
/// when the caller can supply one, diagonal coordinate pairs, and seeded
/// random directions (breaks the kink valleys a max-type norm objective
/// develops away from the axes). After converging, the step re-expands and
/// the search repeats; a fine-step walk that stalled far from the minimum
/// gets a second chance at coarse scale.
using SubgradientFn = std::function<std::vector<double>(const std::vector<double>&)>;

BoxOutcome pattern_search_minimize(BoxSearch& s,
                                   const std::function<double(const std::vector<double>&)>& f,
                                   const std::vector<double>& lo, const std::vector<double>& hi,
                                   std::vector<double> z0, double step_tol,
                                   std::uint64_t direction_seed,
                                   const SubgradientFn& subgradient = {}) {
  const size_t m = lo.size();
  std::vector<double> z = std::move(z0);
  for (size_t j = 0; j < m; ++j) z[j] = std::clamp(z[j], lo[j], hi[j]);
  double val = s.eval(z, f);

  std::vector<double> step(m);
  std::vector<double> step0(m);
  double maxstep = 0.0;
  for (size_t j = 0; j < m; ++j) {
    step[j] = (hi[j] - lo[j]) / 4.0;
    step0[j] = step[j];
    maxstep = std::max(maxstep, step[j]);
  }
  if (maxstep == 0.0) return {z, val};

  std::mt19937_64 dir_rng(mix_seed(direction_seed, 0xd12));
  std::normal_distribution<double> gauss(0.0, 1.0);
  int rounds_left = 2;  // re-expansions after first convergence

  auto try_move = [&](const std::vector<double>& cand, double tiny) {
    std::vector<double> c = cand;
    for (size_t j = 0; j < m; ++j) c[j] = std::clamp(c[j], lo[j], hi[j]);
    const double v = s.eval(c, f);
    if (v < val - tiny) {
      z = std::move(c);
      val = v;
      return true;
    }
    return false;
  };

  while (maxstep > step_tol) {
    const double tiny = 1e-14 * std::max(1.0, std::abs(val));
    double best_v = val;
    std::vector<double> best_z = z;
    std::vector<double> combined = z;
    bool any_combined = false;

    for (size_t j = 0; j < m; ++j) {
      if (step[j] == 0.0) continue;
      double vp = std::numeric_limits<double>::infinity();
      double vm = vp;
      std::vector<double> zp = z, zm = z;
      zp[j] = std::clamp(z[j] + step[j], lo[j], hi[j]);
      zm[j] = std::clamp(z[j] - step[j], lo[j], hi[j]);
      if (zp[j] != z[j]) vp = s.eval(zp, f);
      if (zm[j] != z[j]) vm = s.eval(zm, f);
      if (vp < best_v - tiny) { best_v = vp; best_z = zp; }
      if (vm < best_v - tiny) { best_v = vm; best_z = zm; }
      // midpoint audit only for symmetric (unclamped) polls
      if (zp[j] == z[j] + step[j] && zm[j] == z[j] - step[j])
        s.convexity_gap = std::max(s.convexity_gap, val - 0.5 * (vp + vm));
      const bool plus_ok = vp <= val + tiny;
      const bool minus_ok = vm <= val + tiny;
      if (plus_ok != minus_ok) {
        combined[j] = plus_ok ? zp[j] : zm[j];
        any_combined = true;
      }
    }

    if (best_v < val - tiny) {
      z = std::move(best_z);
      val = best_v;
      continue;
    }
    if (any_combined && try_move(combined, tiny)) continue;

    bool moved = false;
    if (subgradient) {
      const std::vector<double> g = subgradient(z);
      double gmax = 0.0;
      for (double v : g) gmax = std::max(gmax, std::abs(v));
      if (gmax > 0.0) {
        for (double scale : {1.0, 0.25}) {
          std::vector<double> c = z;
          for (size_t j = 0; j < m; ++j)
            c[j] -= scale * step[j] * g[j] / gmax;
          if ((moved = try_move(c, tiny))) break;
        }
      }
    }
    if (moved) continue;
    for (size_t a = 0; a + 1 < m && !moved; ++a) {
      if (step[a] == 0.0) continue;
      for (size_t b = a + 1; b < m && !moved; ++b) {
        if (step[b] == 0.0) continue;
        for (double sa : {1.0, -1.0}) {
          for (double sb : {1.0, -1.0}) {
            std::vector<double> c = z;
            c[a] += sa * step[a];
            c[b] += sb * step[b];
            if (try_move(c, tiny)) { moved = true; break; }
          }
          if (moved) break;
        }
      }
    }
    if (moved) continue;

    for (size_t k = 0; k < 4 * m && !moved; ++k) {
      std::vector<double> c = z;
      for (size_t j = 0; j < m; ++j) c[j] += step[j] * gauss(dir_rng);
      moved = try_move(c, tiny);
    }
    if (moved) continue;

    maxstep = 0.0;
    for (size_t j = 0; j < m; ++j) {
      step[j] *= 0.5;
      maxstep = std::max(maxstep, step[j]);
    }
    if (maxstep <= step_tol && rounds_left > 0) {
      --rounds_left;
      maxstep = 0.0;
      for (size_t j = 0; j < m; ++j) {
        step[j] = std::min(step0[j], step[j] * 65536.0);
        maxstep = std::max(maxstep, step[j]);
      }
    }
  }
  return {z, val};
}

// ---------------------------------------------------------------------------

std::vector<Vector> residual_warm_starts(const OperatorTuple& T, const OperatorTuple& S,
                                         const SolveConfig& cfg) {
  std::vector<Vector> warm = tuple_norm(T, cfg.inner()).witnesses;
  if (!S.is_zero()) {
    for (const Vector& w : tuple_norm(S, cfg.inner()).witnesses) warm.push_back(w);
  }
  return warm;
}

DiagonalAction unpack_z(const std::vector<double>& coords, int d, bool cplx) {
  DiagonalAction z = DiagonalAction::zeros(d);
  for (int i = 0; i < d; ++i)
    z.z[static_cast<size_t>(i)] =
        cplx ? cx(coords[static_cast<size_t>(2 * i)], coords[static_cast<size_t>(2 * i + 1)])
             : cx(coords[static_cast<size_t>(i)], 0.0);
  return z;
}

DistanceResult norm_only_distance(const OperatorTuple& T, const SolveConfig& cfg) {
  DistanceResult r;
  r.minimizer_z = DiagonalAction::zeros(T.size());
  r.inner_norm = tuple_norm(T, cfg);
  r.value = r.inner_norm.value;
  r.evaluations = 1;
  return r;
}

DistanceResult diagonal_distance_search(const OperatorTuple& T, const OperatorTuple& S,
                                        const SolveConfig& cfg) {
  const int d = T.size();
  const bool cplx = T.domain().field == Field::cplx;
  const int m = cplx ? 2 * d : d;

  const NormResult tn = tuple_norm(T, cfg);
  const std::vector<Vector> warm = residual_warm_starts(T, S, cfg);
  const SolveConfig inner = cfg.inner();

  std::vector<double> lo(static_cast<size_t>(m)), hi(static_cast<size_t>(m));
  for (int i = 0; i < d; ++i) {
    const double sn = operator_norm(S.component(i), inner).value;
    const double radius = sn == 0.0 ? 0.0 : 2.0 * std::max(tn.value, 1e-12) / sn;
    if (cplx) {
      lo[static_cast<size_t>(2 * i)] = lo[static_cast<size_t>(2 * i + 1)] = -radius;
      hi[static_cast<size_t>(2 * i)] = hi[static_cast<size_t>(2 * i + 1)] = radius;
    } else {
      lo[static_cast<size_t>(i)] = -radius;
      hi[static_cast<size_t>(i)] = radius;
    }
  }

  BoxSearch search;
  auto objective = [&](const std::vector<double>& coords) {
    const DiagonalAction z = unpack_z(coords, d, cplx);
    return tuple_norm(affine_tuple(T, S, z), inner, warm).value;
  };
  // Subgradient from the norm witness: f(z') >= f(z) - Re sum_j (z_j'-z_j) phi_j(S_j x*).
  auto subgrad = [&](const std::vector<double>& coords) {
    const DiagonalAction z = unpack_z(coords, d, cplx);
    const OperatorTuple R = affine_tuple(T, S, z);
    const NormResult nr = tuple_norm(R, inner, warm);
    std::vector<double> g(coords.size(), 0.0);
    if (nr.witnesses.empty() || nr.value == 0.0) return g;
    const Vector& x = nr.witnesses.front();
    const TupleFunctional phi =
        nested_duality_primary(tuple_apply(R, x), R.outer_p(), inner.tol_cluster);
    for (int j = 0; j < d; ++j) {
      const cx v = functional_apply(phi.comps[static_cast<size_t>(j)],
                                    apply(S.component(j), x));
      if (cplx) {
        g[static_cast<size_t>(2 * j)] = -v.real();
        g[static_cast<size_t>(2 * j + 1)] = v.imag();
      } else {
        g[static_cast<size_t>(j)] = -v.real();
      }
    }
    return g;
  };

  double box_span = 0.0;
  for (int j = 0; j < m; ++j)
    box_span = std::max(box_span, hi[static_cast<size_t>(j)] - lo[static_cast<size_t>(j)]);
  const double step_tol = std::max(1e-7, 2e-6 * box_span);

  // Few coordinates: recursive golden section is robust across the kink
  // valleys a max-type norm objective develops (always for <= 2 coordinates;
  // for 3 when the evaluations ride the exact p=1 column route). Otherwise:
  // multi-restart pattern search with subgradient escalation.
  BoxOutcome best;
  best.value = std::numeric_limits<double>::infinity();
  if (m <= 2 || (m == 3 && T.domain().p.is_one())) {
    best = nested_golden_minimize(search, objective, lo, hi);
  } else {
    std::vector<std::vector<double>> seeds;
    seeds.emplace_back(static_cast<size_t>(m), 0.0);
    std::mt19937_64 rng(mix_seed(cfg.seed ^ 0xd157ull, 1));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int r = 0; r < 1; ++r) {
      std::vector<double> zr(static_cast<size_t>(m));
      for (int j = 0; j < m; ++j)
        zr[static_cast<size_t>(j)] = lo[static_cast<size_t>(j)] +
                                     unif(rng) * (hi[static_cast<size_t>(j)] -
                                                  lo[static_cast<size_t>(j)]);
      seeds.push_back(std::move(zr));
    }
    for (std::vector<double>& seed : seeds) {
      BoxOutcome o = pattern_search_minimize(search, objective, lo, hi, seed, step_tol,
                                             cfg.seed, subgrad);
      if (o.value < best.value) best = std::move(o);
    }
  }

  // Re-evaluate the winner and z = 0 at full start count; keep the smaller.
  DistanceResult r;
  const DiagonalAction zbest = unpack_z(best.z, d, cplx);
  NormResult at_best = tuple_norm(affine_tuple(T, S, zbest), cfg, warm);
  if (at_best.value <= tn.value) {
    r.value = at_best.value;
    r.minimizer_z = zbest;
    r.inner_norm = std::move(at_best);
  } else {
    r.value = tn.value;
    r.minimizer_z = DiagonalAction::zeros(d);
    r.inner_norm = tn;
  }
  r.convexity_gap = search.convexity_gap;
  r.evaluations = search.evals + 1;
  return r;
}

}  // namespace

DistanceResult distance_to_line(const Operator& T, const Operator& S,
                                const SolveConfig& cfg) {
  const OperatorTuple Tt = OperatorTuple::single(T);
  const OperatorTuple St = OperatorTuple::single(S);
  if (S.is_zero()) return norm_only_distance(Tt, cfg);
  if (T.domain().field == Field::cplx) return diagonal_distance_search(Tt, St, cfg);

  const NormResult tn = operator_norm(T, cfg);
  const double sn = operator_norm(S, cfg.inner()).value;
  const double radius = 2.0 * std::max(tn.value, 1e-12) / sn;
  const std::vector<Vector> warm = residual_warm_starts(Tt, St, cfg);
  const SolveConfig inner = cfg.inner();

  ScalarSearch search;
  auto objective = [&](double z) {
    return operator_norm(T - cx(z, 0.0) * S, inner, warm).value;
  };
  GoldenOutcome g = golden_minimize(search, objective, -radius, radius,
                                    std::max(1e-10, 1e-9 * radius));

  DistanceResult r;
  DiagonalAction zbest = DiagonalAction::zeros(1);
  zbest.z[0] = g.z;
  NormResult at_best = operator_norm(T - cx(g.z, 0.0) * S, cfg, warm);
  if (at_best.value <= tn.value) {
    r.value = at_best.value;
    r.minimizer_z = zbest;
    r.inner_norm = std::move(at_best);
  } else {
    r.value = tn.value;
    r.minimizer_z = DiagonalAction::zeros(1);
    r.inner_norm = tn;
  }
  r.convexity_gap = search.audit();
  r.evaluations = search.evals + 1;
  return r;
}

DistanceResult distance_to_diagonal_subspace(const OperatorTuple& T, const OperatorTuple& S,
                                             const SolveConfig& cfg) {
  if (S.size() != T.size())
    throw ShapeMismatch("distance_to_diagonal_subspace: component counts disagree");
  for (int i = 0; i < T.size(); ++i)
    if (S.component(i).domain() != T.domain() ||
        S.component(i).codomain() != T.component(i).codomain())
      throw ShapeMismatch("distance_to_diagonal_subspace: component shapes disagree");
  if (S.is_zero()) return norm_only_distance(T, cfg);

  if (T.outer_p().is_infinite() && cfg.fast_distance_paths) {
    // dist = max_i dist(T_i, F S_i), minimizer assembled per component
    DistanceResult r;
    r.minimizer_z = DiagonalAction::zeros(T.size());
    r.value = 0.0;
    for (int i = 0; i < T.size(); ++i) {
      DistanceResult ri = distance_to_line(T.component(i), S.component(i), cfg);
      r.value = std::max(r.value, ri.value);
      r.minimizer_z.z[static_cast<size_t>(i)] = ri.minimizer_z.z[0];
      r.convexity_gap = std::max(r.convexity_gap, ri.convexity_gap);
      r.evaluations += ri.evaluations;
    }
    r.inner_norm = tuple_norm(affine_tuple(T, S, r.minimizer_z), cfg);
    return r;
  }
  return diagonal_distance_search(T, S, cfg);
}

BJDecision bj_orthogonal(const OperatorTuple& T, const OperatorTuple& S,
                         const SolveConfig& cfg) {
  BJDecision d;
  d.norm = tuple_norm(T, cfg);
  d.distance = distance_to_diagonal_subspace(T, S, cfg);
  d.margin = d.distance.value - d.norm.value;
  d.orthogonal = d.margin >= -cfg.tol_bj;
  if (d.orthogonal && !T.is_zero()) {
    try {
      d.certificate = build_singer_certificate(T, S, DiagonalAction::zeros(T.size()), cfg);
    } catch (const CertificateNotFound&) {
      d.certificate.reset();
    }
  }
  return d;
}

namespace {

/// Attainment representatives pushed into the extreme points of the domain
/// ball. Smooth domains need no work; l_1 domains enumerate the attaining
/// coordinate vectors; l_inf domains push coordinates to the sphere of the
/// cube one at a time (convexity keeps near-maximality at an endpoint).
std::vector<Vector> extreme_attainers(const OperatorTuple& R, const NormResult& nr,
                                      const SolveConfig& cfg) {
  const LpSpace dom = R.domain();
  const double slack = std::max(cfg.tol_cert, cfg.tol_attain) * std::max(1.0, nr.value);

  if (dom.p.is_one()) {
    std::vector<Vector> out;
    for (int j = 0; j < dom.dim; ++j) {
      Vector ej = Vector::unit(dom, j);
      if (tuple_image_norm(R, ej) >= nr.value - slack) out.push_back(std::move(ej));
    }
    return out;
  }

  if (dom.p.is_infinite()) {
    std::vector<Vector> out;
    for (Vector x : nr.witnesses) {
      bool ok = true;
      for (int i = 0; i < dom.dim && ok; ++i) {
        if (std::abs(std::abs(x[i]) - 1.0) <= 1e-9) continue;
        double best = -1.0;
        Vector best_x = x;
        const int phases = dom.field == Field::real ? 2 : 8;
        for (int ph = 0; ph < phases; ++ph) {
          Vector y = x;
          y[i] = dom.field == Field::real
                     ? cx(ph == 0 ? 1.0 : -1.0, 0.0)
                     : std::polar(1.0, 2.0 * std::acos(-1.0) * ph / phases);
          const double v = tuple_image_norm(R, y);
          if (v > best) { best = v; best_x = std::move(y); }
        }
        if (best >= nr.value - slack)
          x = best_x;
        else
          ok = false;  // could not stay near-maximal; drop this witness
      }
      if (ok) {
        phase_normalize(x);
        out.push_back(std::move(x));
      }
    }
    return out;
  }

  std::vector<Vector> out;
  for (const Vector& x : nr.witnesses)
    out.push_back(refine_maximizer(R, x, cfg));
  return out;
}

}  // namespace

namespace {

struct CertCandidate {
  Vector x;
  TupleFunctional f;
  std::vector<double> rows;  // annihilation row values at this pair
};

std::vector<double> annihilation_rows(const OperatorTuple& S, const Vector& x,
                                      const TupleFunctional& f, bool cplx) {
  std::vector<double> rows;
  for (int j = 0; j < S.size(); ++j) {
    const cx v =
        functional_apply(f.comps[static_cast<size_t>(j)], apply(S.component(j), x));
    rows.push_back(v.real());
    if (cplx) rows.push_back(v.imag());
  }
  return rows;
}

/// Searches the near-maximal sphere for points where the annihilation values
/// vanish or reach their extremes. The attainment set of a nonsmooth residual
/// can be a continuum; the multistart witnesses alone need not bracket zero,
/// and these targeted points are exactly what the feasibility program needs.
std::vector<Vector> constraint_targeted_attainers(const OperatorTuple& R,
                                                  const OperatorTuple& S,
                                                  const NormResult& nr,
                                                  const SolveConfig& cfg) {
  const bool cplx = R.domain().field == Field::cplx;
  const int n_rows = cplx ? 2 * R.size() : R.size();
  double s_scale = 1.0;
  for (const Operator& s : S.components()) s_scale += s.frobenius();
  const double penalty = 2.0 * s_scale / std::max(cfg.tol_cert, 1e-9);

  auto rows_at = [&](const Vector& x) -> std::vector<double> {
    return annihilation_rows(S, x,
                             nested_duality_primary(tuple_apply(R, x), R.outer_p(),
                                                    cfg.tol_cluster),
                             cplx);
  };
  auto slack_at = [&](const Vector& x) {
    return std::max(0.0, nr.value - tuple_image_norm(R, x));
  };

  SolveConfig search = cfg.inner();
  std::vector<Vector> found;
  auto run = [&](const std::function<double(const Vector&)>& objective) {
    const SphereSearchResult s =
        sphere_maximize(R.domain(), objective, search, nr.witnesses);
    if (slack_at(s.argmax) <= cfg.tol_cert * std::max(1.0, nr.value))
      found.push_back(s.argmax);
  };

  run([&](const Vector& x) {
    double sum = 0.0;
    for (double r : rows_at(x)) sum += std::abs(r);
    return -(sum + penalty * slack_at(x));
  });
  for (int r = 0; r < n_rows; ++r) {
    for (double sign : {1.0, -1.0}) {
      run([&, r, sign](const Vector& x) {
        return sign * rows_at(x)[static_cast<size_t>(r)] - penalty * slack_at(x);
      });
    }
  }
  return found;
}

std::vector<CertCandidate> collect_pairs(const OperatorTuple& R, const OperatorTuple& S,
                                         const std::vector<Vector>& xs, bool cplx,
                                         const SolveConfig& cfg, size_t cap) {
  std::vector<CertCandidate> cands;
  for (const Vector& x : xs) {
    bool dup = false;
    for (const CertCandidate& c : cands)
      if (orbit_distance(c.x, x) <= cfg.sep_orbit) { dup = true; break; }
    if (dup) continue;
    const std::vector<Vector> values = tuple_apply(R, x);
    for (TupleFunctional& f :
         nested_duality_extremes(values, R.outer_p(), 48, cfg.tol_cluster)) {
      CertCandidate c{x, std::move(f), {}};
      c.rows = annihilation_rows(S, c.x, c.f, cplx);
      cands.push_back(std::move(c));
      if (cands.size() >= cap) return cands;
    }
  }
  return cands;
}

std::optional<SingerCertificate> weights_from_candidates(
    const std::vector<CertCandidate>& cands, const OperatorTuple& R,
    const OperatorTuple& S, const NormResult& nr, bool cplx, const SolveConfig& cfg,
    double& best_residual) {
  if (cands.empty()) return std::nullopt;
  const int d = S.size();
  const int n_rows = cplx ? 2 * d : d;
  const double scale = std::max(1.0, nr.value);

  auto assemble = [&](const std::vector<std::pair<size_t, double>>& weights) {
    SingerCertificate cert;
    cert.residual_value = nr.value;
    double tsum = 0.0;
    for (const auto& [c, t] : weights) tsum += t;
    for (const auto& [c, t] : weights)
      cert.entries.push_back({cands[c].x, cands[c].f, t / tsum});
    cert.h = static_cast<int>(cert.entries.size());
    for (const auto& e : cert.entries) {
      const double norming = std::real(e.f(tuple_apply(R, e.x)));
      cert.worst_norming_slack = std::max(cert.worst_norming_slack, nr.value - norming);
    }
    for (int j = 0; j < d; ++j) {
      cx sum = 0.0;
      for (const auto& e : cert.entries)
        sum += e.t * functional_apply(e.f.comps[static_cast<size_t>(j)],
                                      apply(S.component(j), e.x));
      cert.worst_annihilation = std::max(cert.worst_annihilation, std::abs(sum));
    }
    return cert;
  };

  // Singleton pre-pass: a pair whose annihilation values already vanish is a
  // one-term certificate (h = 1), preferred over any convex combination.
  size_t best_single = cands.size();
  double best_single_mass = std::numeric_limits<double>::infinity();
  for (size_t c = 0; c < cands.size(); ++c) {
    double mass = 0.0;
    for (double r : cands[c].rows) mass = std::max(mass, std::abs(r));
    if (mass < best_single_mass) {
      best_single_mass = mass;
      best_single = c;
    }
  }
  if (best_single < cands.size() && best_single_mass <= 0.5 * cfg.tol_cert * scale) {
    SingerCertificate cert = assemble({{best_single, 1.0}});
    if (cert.worst_norming_slack <= cfg.tol_cert * scale) return cert;
  }

  std::vector<std::vector<double>> A(static_cast<size_t>(n_rows + 1),
                                     std::vector<double>(cands.size(), 0.0));
  std::vector<double> b(static_cast<size_t>(n_rows + 1), 0.0);
  b.back() = 1.0;
  for (size_t c = 0; c < cands.size(); ++c) {
    for (int r = 0; r < n_rows; ++r)
      A[static_cast<size_t>(r)][c] = cands[c].rows[static_cast<size_t>(r)];
    A.back()[c] = 1.0;
  }
  const detail::FeasibilityResult fr = detail::equality_feasibility(A, b);
  best_residual = std::min(best_residual, fr.residual);
  if (!fr.feasible) return std::nullopt;

  std::vector<std::pair<size_t, double>> weights;
  for (size_t c = 0; c < cands.size(); ++c)
    if (fr.t[c] > 1e-12) weights.emplace_back(c, fr.t[c]);
  SingerCertificate cert = assemble(weights);
  if (cert.worst_norming_slack <= cfg.tol_cert * scale &&
      cert.worst_annihilation <= cfg.tol_cert * scale)
    return cert;
  best_residual =
      std::min(best_residual, std::max(cert.worst_norming_slack, cert.worst_annihilation));
  return std::nullopt;
}

}  // namespace

SingerCertificate build_singer_certificate(const OperatorTuple& T, const OperatorTuple& S,
                                           const DiagonalAction& z, const SolveConfig& cfg) {
  const OperatorTuple R = affine_tuple(T, S, z);
  if (R.is_zero()) throw std::invalid_argument("certificate of a zero residual");
  const bool cplx = T.domain().field == Field::cplx;

  double best_residual = std::numeric_limits<double>::infinity();
  for (int attempt = 0; attempt < 2; ++attempt) {
    SolveConfig pass = cfg;
    pass.starts = cfg.starts * (attempt == 0 ? 1 : 4);
    const NormResult nr = tuple_norm(R, pass);

    std::vector<Vector> xs = extreme_attainers(R, nr, pass);
    std::vector<CertCandidate> cands = collect_pairs(R, S, xs, cplx, pass, 160);
    if (auto cert = weights_from_candidates(cands, R, S, nr, cplx, cfg, best_residual))
      return *cert;

    // plain attainment candidates were not enough; target the annihilation
    // values directly over the near-maximal sphere and retry
    std::vector<Vector> targeted = constraint_targeted_attainers(R, S, nr, pass);
    for (Vector& x : xs) targeted.push_back(std::move(x));
    cands = collect_pairs(R, S, targeted, cplx, pass, 192);
    if (auto cert = weights_from_candidates(cands, R, S, nr, cplx, cfg, best_residual))
      return *cert;
  }
  throw CertificateNotFound(best_residual);
}

double certificate_max_violation(const SingerCertificate& cert, const OperatorTuple& T,
                                 const OperatorTuple& S, const DiagonalAction& z,
                                 const SolveConfig& cfg) {
  const OperatorTuple R = affine_tuple(T, S, z);
  const Exponent dual_outer = R.outer_p().dual();
  double worst = 0.0;

  double tsum = 0.0;
  for (const auto& e : cert.entries) tsum += e.t;
  worst = std::max(worst, std::abs(tsum - 1.0));

  for (const auto& e : cert.entries) {
    worst = std::max(worst, std::abs(tuple_functional_norm(e.f, R.outer_p()) - 1.0));
    if (!nested_is_extreme_dual(e.f, dual_outer, 1e-7)) worst = std::max(worst, 1.0);
    if (!is_extreme_point(e.x, 1e-7)) worst = std::max(worst, 1.0);
    const double norming = std::real(e.f(tuple_apply(R, e.x)));
    worst = std::max(worst, cert.residual_value - norming);
  }
  for (int j = 0; j < T.size(); ++j) {
    cx s = 0.0;
    for (const auto& e : cert.entries)
      s += e.t * functional_apply(e.f.comps[static_cast<size_t>(j)],
                                  apply(S.component(j), e.x));
    worst = std::max(worst, std::abs(s));
  }
  (void)cfg;
  return worst;
}

double restricted_functional_norm(const Vector& f, const Vector& g, const LpSpace& domain,
                                  const SolveConfig& cfg) {
  if (f.space() != domain.dual() || g.space() != domain.dual())
    throw ShapeMismatch("restricted_functional_norm: f, g must live in the dual space");
  if (max_abs(g.entries()) == 0.0) return lp_norm(f);
  if (domain.dim == 1) return 0.0;  // ker g is trivial

  if (domain.p.is_two()) {
    // exact: norm of f's projection along the kernel of g
    const cx gg = hermitian_inner(g, g);
    const cx fg = hermitian_inner(f, g);
    Vector proj = f;
    proj -= (fg / gg) * g;
    std::vector<cx> tmp(proj.raw());
    return lp_norm(tmp, Exponent::finite(2.0));
  }

  // Parametrize ker g and run the sphere search over the coefficients.
  const int n = domain.dim;
  Eigen::MatrixXcd G(1, n);
  for (int i = 0; i < n; ++i) G(0, i) = g[i];
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(G, Eigen::ComputeFullV);
  Eigen::MatrixXcd K = svd.matrixV().rightCols(n - 1);

  const LpSpace coeffs(n - 1, Exponent::finite(2.0), domain.field);
  auto expand = [&](const Vector& c) {
    Vector x = Vector::zeros(LpSpace(n, domain.p, domain.field));
    for (int i = 0; i < n; ++i) {
      cx s = 0.0;
      for (int j = 0; j < n - 1; ++j) s += K(i, j) * c[j];
      x[i] = s;
    }
    return x;
  };
  auto objective = [&](const Vector& c) {
    Vector x = expand(c);
    const double nx = lp_norm(x);
    if (nx == 0.0) return 0.0;
    return std::abs(functional_apply(f, x)) / nx;
  };
  return sphere_maximize(coeffs, objective, cfg).value;
}

double kernel_distance_functional_tuple(const OperatorTuple& T, const OperatorTuple& S,
                                        const SolveConfig& cfg) {
  if (!T.outer_p().is_infinite())
    throw ShapeMismatch("kernel_distance_functional_tuple: outer exponent must be inf");
  if (S.size() != T.size())
    throw ShapeMismatch("kernel_distance_functional_tuple: component counts disagree");
  for (const Operator& t : T.components())
    if (t.rows() != 1)
      throw ShapeMismatch("kernel_distance_functional_tuple: codomains must be 1-dimensional");
  for (const Operator& s : S.components())
    if (s.rows() != 1)
      throw ShapeMismatch("kernel_distance_functional_tuple: codomains must be 1-dimensional");

  double best = 0.0;
  for (int i = 0; i < T.size(); ++i)
    best = std::max(best, restricted_functional_norm(T.component(i).row(0),
                                                     S.component(i).row(0),
                                                     T.domain(), cfg));
  return best;
}

VectorDistance vector_distance_to_line(const Vector& u, const Vector& v) {
  VectorDistance out;
  const double nv = lp_norm(v);
  // A direction at rounding scale is a numerical zero; optimizing against it
  // would measure the distance to a noise direction instead.
  if (nv <= 1e-8 * std::max(1.0, lp_norm(u))) {
    out.value = lp_norm(u);
    out.z = 0.0;
    return out;
  }
  if (u.space().p.is_two()) {
    const cx z = hermitian_inner(u, v) / hermitian_inner(v, v);
    Vector r = u;
    r -= z * v;
    out.value = lp_norm(r);
    out.z = z;
    return out;
  }
  const double radius = 2.0 * std::max(lp_norm(u), 1e-12) / nv;
  if (u.field() == Field::real) {
    ScalarSearch s;
    auto objective = [&](double z) {
      Vector r = u;
      r -= cx(z, 0.0) * v;
      return lp_norm(r);
    };
    GoldenOutcome g = golden_minimize(s, objective, -radius, radius, 1e-10 * radius + 1e-12);
    out.value = g.value;
    out.z = g.z;
    return out;
  }
  BoxSearch s;
  auto objective = [&](const std::vector<double>& c) {
    Vector r = u;
    r -= cx(c[0], c[1]) * v;
    return lp_norm(r);
  };
  BoxOutcome o = pattern_search_minimize(s, objective, {-radius, -radius},
                                         {radius, radius}, {0.0, 0.0},
                                         1e-10 * radius + 1e-12, 0x7ec);
  out.value = o.value;
  out.z = cx(o.z[0], o.z[1]);
  return out;
}

}  // namespace optuple
