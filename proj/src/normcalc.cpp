#include "optuple/normcalc.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "optuple/nested.hpp"

namespace optuple {

std::string to_string(NormMethod m) {
  switch (m) {
    case NormMethod::exact_p1: return "exact_p1";
    case NormMethod::exact_row_dual: return "exact_row_dual";
    case NormMethod::exact_spectral: return "exact_spectral";
    case NormMethod::power_iteration: return "power_iteration";
    case NormMethod::brute_force: return "brute_force";
  }
  return "?";
}

namespace {

bool lex_less(const Vector& a, const Vector& b) {
  for (int i = 0; i < a.dim(); ++i) {
    if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
    if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
  }
  return false;
}

/// Sorts outcomes by value (descending) then witness, keeps the near-best
/// ones, and collapses them into phase-orbit representatives.
NormResult assemble(std::vector<StartOutcome> outs, const OperatorTuple& T,
                    const SolveConfig& cfg, NormMethod method, int starts_used) {
  NormResult r;
  r.method = method;
  r.starts_used = starts_used;
  if (outs.empty()) return r;

  for (StartOutcome& o : outs) phase_normalize(o.witness);
  std::sort(outs.begin(), outs.end(), [](const StartOutcome& a, const StartOutcome& b) {
    if (a.value != b.value) return a.value > b.value;
    return lex_less(a.witness, b.witness);
  });

  const double best = outs.front().value;
  const double slack = cfg.tol_attain * std::max(1.0, best);
  r.value = best;
  for (const StartOutcome& o : outs) {
    if (o.value < best - slack) break;
    ++r.converged_near_best;
    bool dup = false;
    for (const Vector& w : r.witnesses)
      if (orbit_distance(o.witness, w) <= cfg.sep_orbit) { dup = true; break; }
    if (!dup && static_cast<int>(r.witnesses.size()) < cfg.max_witnesses)
      r.witnesses.push_back(o.witness);
  }
  for (const Vector& w : r.witnesses)
    r.residual = std::max(r.residual, std::abs(tuple_image_norm(T, w) - best));
  return r;
}

NormResult zero_result(const OperatorTuple& T, NormMethod method) {
  NormResult r;
  r.method = method;
  r.value = 0.0;
  r.witnesses.push_back(Vector::unit(T.domain(), 0));
  r.converged_near_best = 1;
  r.exhaustive = true;
  return r;
}

/// Pullback g = sum_i f_i o T_i, a functional on the domain.
Vector pullback(const OperatorTuple& T, const TupleFunctional& f) {
  Vector g = Vector::zeros(T.domain().dual());
  for (int i = 0; i < T.size(); ++i) {
    const Operator& Ti = T.component(i);
    const Vector& fi = f.comps[static_cast<size_t>(i)];
    for (int r = 0; r < Ti.rows(); ++r) {
      const cx fr = fi[r];
      if (fr == cx(0.0, 0.0)) continue;
      for (int c = 0; c < Ti.cols(); ++c) g[c] += fr * Ti.at(r, c);
    }
  }
  return g;
}

/// Unit vectors x maximizing Re g(x) over the domain ball. Unique for a
/// smooth domain norm; at p=1/inf the extreme choices are enumerated up to
/// `cap`, with a deterministic fallback beyond it.
std::vector<Vector> norming_candidates(const Vector& g, int cap) {
  const Exponent q = g.space().p;  // exponent of the dual space g lives in
  std::vector<Vector> out;
  if (q.is_infinite()) {
    // domain is l_1: maximizers concentrate on argmax coordinates of |g|
    for (int k : argmax_coords(g, 1e-12)) {
      Vector x = Vector::zeros(g.space().dual());
      x[k] = std::conj(sgn(g[k]));
      out.push_back(std::move(x));
      if (static_cast<int>(out.size()) >= cap) break;
    }
    return out;
  }
  if (q.is_one()) {
    // domain is l_inf: conj-signs on the support, free signs on zeros
    Vector base = Vector::zeros(g.space().dual());
    for (int i = 0; i < g.dim(); ++i) base[i] = std::conj(sgn(g[i]));
    const std::vector<int> zs = zero_coords(g);
    const bool real_field = g.field() == Field::real;
    if (!zs.empty() && real_field && (1 << std::min<size_t>(zs.size(), 20)) <= cap) {
      const int total = 1 << zs.size();
      for (int mask = 0; mask < total; ++mask) {
        Vector x = base;
        for (size_t j = 0; j < zs.size(); ++j)
          x[zs[j]] = (mask >> j) & 1 ? cx(-1.0, 0.0) : cx(1.0, 0.0);
        out.push_back(std::move(x));
      }
    } else {
      out.push_back(std::move(base));
    }
    return out;
  }
  out.push_back(norming_vector(g));
  return out;
}

/// One multi-start slot of the generalized power iteration.
StartOutcome power_start(const OperatorTuple& T, Vector x, const SolveConfig& cfg) {
  double best = tuple_image_norm(T, x);
  Vector best_x = x;
  int iter = 0;
  for (; iter < cfg.max_iterations; ++iter) {
    const std::vector<Vector> values = tuple_apply(T, x);
    const double nu = tuple_codomain_norm(values, T.outer_p());
    if (nu == 0.0) break;

    double step_best = -1.0;
    Vector step_x = x;
    for (const TupleFunctional& f :
         nested_duality_candidates(values, T.outer_p(), 16, cfg.tol_cluster)) {
      Vector g = pullback(T, f);
      if (max_abs(g.entries()) == 0.0) continue;
      for (Vector& cand : norming_candidates(g, 16)) {
        const double v = tuple_image_norm(T, cand);
        if (v > step_best) {  // strict: first enumerated candidate wins ties
          step_best = v;
          step_x = std::move(cand);
        }
      }
    }
    if (step_best < 0.0) break;  // all pullbacks vanished
    if (step_best > best) {
      best = step_best;
      best_x = step_x;
    }
    if (step_best <= nu + 1e-14 * std::max(1.0, nu)) break;  // fixed point
    x = std::move(step_x);
  }
  phase_normalize(best_x);
  return StartOutcome(best, std::move(best_x), iter);
}

NormResult power_engine(const OperatorTuple& T, const SolveConfig& cfg,
                        std::span<const Vector> warm_starts) {
  std::vector<Vector> fixed = canonical_starts(T.domain());
  for (const Vector& w : warm_starts) fixed.push_back(w);
  const int n_fixed = static_cast<int>(fixed.size());
  // random starts scale mildly with dimension
  const int n_random = cfg.starts * std::max(1, T.domain().dim / 8 + 1);
  const int n = n_fixed + n_random;

  std::function<StartOutcome(int)> eval = [&](int i) {
    Vector x0 = Vector::zeros(T.domain());
    if (i < n_fixed) {
      x0 = fixed[static_cast<size_t>(i)];
    } else {
      std::mt19937_64 rng(mix_seed(cfg.seed, static_cast<std::uint64_t>(i)));
      x0 = random_unit(T.domain(), rng);
    }
    return power_start(T, std::move(x0), cfg);
  };

  std::vector<StartOutcome> outs = run_starts<StartOutcome>(n, eval, cfg.parallel);
  return assemble(std::move(outs), T, cfg, NormMethod::power_iteration, n);
}

/// Domain p = 1: the norm is the max image norm over coordinate vectors.
NormResult columns_path(const OperatorTuple& T, const SolveConfig& cfg) {
  std::vector<StartOutcome> outs;
  for (int j = 0; j < T.domain().dim; ++j) {
    Vector ej = Vector::unit(T.domain(), j);
    const double v = tuple_image_norm(T, ej);
    outs.emplace_back(v, std::move(ej), 0);
  }
  NormResult r = assemble(std::move(outs), T, cfg, NormMethod::exact_p1,
                          T.domain().dim);
  r.exhaustive = r.converged_near_best == 1;
  return r;
}

/// Codomain q = inf: the norm is the max dual norm over the rows.
NormResult rows_path(const Operator& T, const SolveConfig& cfg) {
  std::vector<double> row_norms;
  double best = 0.0;
  for (int r = 0; r < T.rows(); ++r) {
    row_norms.push_back(lp_norm(T.row(r)));
    best = std::max(best, row_norms.back());
  }
  const OperatorTuple tup = OperatorTuple::single(T);
  if (best == 0.0) return zero_result(tup, NormMethod::exact_row_dual);

  std::vector<StartOutcome> outs;
  const double slack = cfg.tol_attain * std::max(1.0, best);
  int argmaxes = 0;
  for (int r = 0; r < T.rows(); ++r) {
    if (row_norms[static_cast<size_t>(r)] < best - slack) continue;
    ++argmaxes;
    Vector u = norming_vector(T.row(r));
    outs.emplace_back(lp_norm(apply(T, u).entries(), Exponent::infinity()), std::move(u), 0);
  }
  NormResult res = assemble(std::move(outs), tup, cfg, NormMethod::exact_row_dual,
                            static_cast<int>(outs.size()));
  res.value = best;  // the row bound is exact; witnesses certify it
  res.exhaustive = argmaxes == 1 && T.domain().p.is_finite();
  return res;
}

NormResult spectral_path(const Operator& T, const SolveConfig& cfg) {
  Eigen::MatrixXcd M(T.rows(), T.cols());
  for (int r = 0; r < T.rows(); ++r)
    for (int c = 0; c < T.cols(); ++c) M(r, c) = T.at(r, c);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M, Eigen::ComputeThinV);
  const auto& sigma = svd.singularValues();
  const double top = sigma(0);
  const OperatorTuple tup = OperatorTuple::single(T);
  if (top == 0.0) return zero_result(tup, NormMethod::exact_spectral);

  std::vector<StartOutcome> outs;
  const double slack = std::max(cfg.tol_attain, 1e-12) * std::max(1.0, top);
  for (int j = 0; j < sigma.size(); ++j) {
    if (sigma(j) < top - slack) break;
    Vector v = Vector::zeros(T.domain());
    for (int i = 0; i < T.cols(); ++i) v[i] = svd.matrixV()(i, j);
    outs.emplace_back(sigma(j), std::move(v), 0);
  }
  const int found = static_cast<int>(outs.size());
  NormResult r = assemble(std::move(outs), tup, cfg, NormMethod::exact_spectral, found);
  r.value = top;
  r.exhaustive = found == 1;
  return r;
}

bool all_two(const OperatorTuple& T) {
  if (!T.domain().p.is_two()) return false;
  for (const Operator& t : T.components())
    if (!t.codomain().p.is_two()) return false;
  return true;
}

}  // namespace

NormResult operator_norm(const Operator& T, const SolveConfig& cfg,
                         std::span<const Vector> warm_starts) {
  const OperatorTuple tup = OperatorTuple::single(T);
  if (T.is_zero()) return zero_result(tup, NormMethod::exact_p1);
  if (cfg.fast_norm_paths) {
    if (T.domain().p.is_one()) return columns_path(tup, cfg);
    if (T.codomain().p.is_infinite()) return rows_path(T, cfg);
    if (T.domain().p.is_two() && T.codomain().p.is_two()) return spectral_path(T, cfg);
  }
  return power_engine(tup, cfg, warm_starts);
}

NormResult tuple_norm(const OperatorTuple& T, const SolveConfig& cfg,
                      std::span<const Vector> warm_starts) {
  if (T.size() == 1) return operator_norm(T.component(0), cfg, warm_starts);
  if (T.is_zero()) return zero_result(T, NormMethod::exact_p1);

  if (cfg.fast_norm_paths) {
    if (T.outer_p().is_infinite()) {
      // ||T|| = max_i ||T_i||, witnesses from every component attaining the max
      std::vector<NormResult> comp;
      comp.reserve(static_cast<size_t>(T.size()));
      for (const Operator& t : T.components()) comp.push_back(operator_norm(t, cfg, warm_starts));
      double best = 0.0;
      int winner = 0;
      for (int i = 0; i < T.size(); ++i)
        if (comp[static_cast<size_t>(i)].value > best) {
          best = comp[static_cast<size_t>(i)].value;
          winner = i;
        }
      NormResult r;
      r.value = best;
      r.method = comp[static_cast<size_t>(winner)].method;
      r.exhaustive = true;
      const double slack = cfg.tol_attain * std::max(1.0, best);
      std::vector<StartOutcome> outs;
      for (int i = 0; i < T.size(); ++i) {
        const NormResult& c = comp[static_cast<size_t>(i)];
        r.starts_used += c.starts_used;
        if (c.value < best - slack) continue;
        r.exhaustive = r.exhaustive && c.exhaustive;
        for (const Vector& w : c.witnesses)
          outs.emplace_back(tuple_image_norm(T, w), w, 0);
      }
      NormResult merged = assemble(std::move(outs), T, cfg, r.method, r.starts_used);
      merged.value = best;
      merged.exhaustive = r.exhaustive;
      merged.starts_used = r.starts_used;
      for (const Vector& w : merged.witnesses)
        merged.residual = std::max(merged.residual,
                                   std::abs(tuple_image_norm(T, w) - best));
      return merged;
    }
    if (T.domain().p.is_one()) return columns_path(T, cfg);
    if (T.outer_p().is_two() && all_two(T)) {
      NormResult r = spectral_path(stack(T, Exponent::finite(2.0)), cfg);
      return r;
    }
  }
  return power_engine(T, cfg, warm_starts);
}

Vector refine_maximizer(const OperatorTuple& T, Vector x, const SolveConfig& cfg,
                        int max_iters) {
  double best = tuple_image_norm(T, x);
  for (int iter = 0; iter < max_iters; ++iter) {
    const std::vector<Vector> values = tuple_apply(T, x);
    const double nu = tuple_codomain_norm(values, T.outer_p());
    if (nu == 0.0) break;
    double step_best = -1.0;
    Vector step_x = x;
    for (const TupleFunctional& f :
         nested_duality_candidates(values, T.outer_p(), 16, cfg.tol_cluster)) {
      Vector g = pullback(T, f);
      if (max_abs(g.entries()) == 0.0) continue;
      for (Vector& cand : norming_candidates(g, 16)) {
        const double v = tuple_image_norm(T, cand);
        if (v > step_best) {
          step_best = v;
          step_x = std::move(cand);
        }
      }
    }
    if (step_best < best) break;
    const double moved = orbit_distance(x, step_x);
    best = step_best;
    x = std::move(step_x);
    if (moved <= 1e-13) break;
  }
  phase_normalize(x);
  return x;
}

AttainmentSet attainment_set_from(const NormResult& result, const SolveConfig&) {
  AttainmentSet s;
  s.representatives = result.witnesses;
  const int orbits = static_cast<int>(s.representatives.size());
  s.complete_flag =
      result.exhaustive || (orbits > 0 && 3 * orbits <= result.converged_near_best);
  return s;
}

AttainmentSet attainment_set(const Operator& T, const SolveConfig& cfg) {
  return attainment_set_from(operator_norm(T, cfg), cfg);
}

AttainmentSet attainment_set(const OperatorTuple& T, const SolveConfig& cfg) {
  return attainment_set_from(tuple_norm(T, cfg), cfg);
}

double polish_on_sphere(const std::function<double(const Vector&)>& objective, Vector& x,
                        double initial_step, double min_step) {
  double val = objective(x);
  double h = initial_step;
  const bool cplx = x.field() == Field::cplx;
  const int parts = cplx ? 2 : 1;

  auto bumped = [&](const Vector& base, int coord, int part, double delta) {
    Vector y = base;
    y[coord] += part == 0 ? cx(delta, 0.0) : cx(0.0, delta);
    if (lp_norm(y) == 0.0) return base;
    normalize(y);
    return y;
  };

  while (h > min_step) {
    const double tiny = 1e-14 * std::max(1.0, std::abs(val));
    double best_v = val;
    Vector best_x = x;
    // informative single moves feed the combined step below
    Vector combined = x;
    bool any_combined = false;
    for (int i = 0; i < x.dim(); ++i) {
      for (int part = 0; part < parts; ++part) {
        const Vector yp = bumped(x, i, part, h);
        const Vector ym = bumped(x, i, part, -h);
        const double vp = objective(yp);
        const double vm = objective(ym);
        if (vp > best_v + tiny) { best_v = vp; best_x = yp; }
        if (vm > best_v + tiny) { best_v = vm; best_x = ym; }
        const bool plus_ok = vp >= val - tiny;
        const bool minus_ok = vm >= val - tiny;
        if (plus_ok != minus_ok) {
          combined[i] += part == 0 ? cx(plus_ok ? h : -h, 0.0)
                                   : cx(0.0, plus_ok ? h : -h);
          any_combined = true;
        }
      }
    }
    if (best_v > val + tiny) {
      x = best_x;
      val = best_v;
      continue;
    }
    if (any_combined && lp_norm(combined) > 0.0) {
      // single moves stalled on a tie; move every informative axis at once
      Vector y = combined;
      normalize(y);
      const double v = objective(y);
      if (v > val + tiny) {
        x = y;
        val = v;
        continue;
      }
    }
    h *= 0.5;
  }
  return val;
}

SphereSearchResult sphere_maximize(const LpSpace& domain,
                                   const std::function<double(const Vector&)>& objective,
                                   const SolveConfig& cfg,
                                   std::span<const Vector> warm_starts) {
  std::vector<Vector> fixed = canonical_starts(domain);
  for (const Vector& w : warm_starts) fixed.push_back(w);
  const int n_fixed = static_cast<int>(fixed.size());
  const int n = n_fixed + cfg.starts;

  std::function<StartOutcome(int)> eval = [&](int i) {
    Vector x = Vector::zeros(domain);
    if (i < n_fixed) {
      x = fixed[static_cast<size_t>(i)];
    } else {
      std::mt19937_64 rng(mix_seed(cfg.seed ^ 0xa77a1ull, static_cast<std::uint64_t>(i)));
      x = random_unit(domain, rng);
    }
    const double v = polish_on_sphere(objective, x);
    phase_normalize(x);
    return StartOutcome(v, std::move(x), 0);
  };

  std::vector<StartOutcome> outs = run_starts<StartOutcome>(n, eval, cfg.parallel);
  std::sort(outs.begin(), outs.end(), [](const StartOutcome& a, const StartOutcome& b) {
    if (a.value != b.value) return a.value > b.value;
    return lex_less(a.witness, b.witness);
  });

  SphereSearchResult r;
  r.starts_used = n;
  r.value = outs.front().value;
  r.argmax = outs.front().witness;
  const double slack = cfg.tol_attain * std::max(1.0, std::abs(r.value));
  for (const StartOutcome& o : outs) {
    if (o.value < r.value - slack) break;
    ++r.converged_near_best;
    bool dup = false;
    for (const Vector& w : r.near_best)
      if (orbit_distance(o.witness, w) <= cfg.sep_orbit) { dup = true; break; }
    if (!dup && static_cast<int>(r.near_best.size()) < cfg.max_witnesses)
      r.near_best.push_back(o.witness);
  }
  return r;
}

JointAttainment joint_attainment_check(const OperatorTuple& T, const SolveConfig& cfg) {
  JointAttainment j;
  std::vector<Vector> warm;
  double max_norm = 0.0;
  for (const Operator& t : T.components()) {
    NormResult r = operator_norm(t, cfg);
    j.component_norms.push_back(r.value);
    max_norm = std::max(max_norm, r.value);
    for (const Vector& w : r.witnesses) warm.push_back(w);
  }
  // tuple maximizers coincide with joint attainers whenever those exist
  for (const Vector& w : tuple_norm(T, cfg.inner()).witnesses) warm.push_back(w);

  const double scale = std::max(1.0, max_norm);
  auto objective = [&](const Vector& x) {
    double m = std::numeric_limits<double>::infinity();
    for (int i = 0; i < T.size(); ++i)
      m = std::min(m, lp_norm(apply(T.component(i), x)) -
                          j.component_norms[static_cast<size_t>(i)]);
    return m;
  };
  SphereSearchResult s = sphere_maximize(T.domain(), objective, cfg, warm);
  j.margin = s.value / scale;
  j.nonempty = s.value >= -cfg.tol_attain * scale;
  j.witness = s.argmax;
  return j;
}

namespace {

NormResult brute_force_impl(const OperatorTuple& T, int grid_density,
                            const SolveConfig& cfg) {
  const LpSpace dom = T.domain();
  const bool cplx = dom.field == Field::cplx;
  if ((cplx && dom.dim > 2) || (!cplx && dom.dim > 3))
    throw DimensionTooLarge("brute_force_norm: domain dimension too large");

  auto objective = [&](const Vector& x) { return tuple_image_norm(T, x); };
  const double pi = std::acos(-1.0);

  std::vector<Vector> grid;
  auto add = [&](std::initializer_list<cx> entries) {
    Vector v(dom, std::vector<cx>(entries));
    if (lp_norm(v) == 0.0) return;
    normalize(v);
    grid.push_back(std::move(v));
  };

  if (dom.dim == 1) {
    add({cx(1.0, 0.0)});
  } else if (!cplx && dom.dim == 2) {
    for (int i = 0; i < grid_density; ++i) {
      const double t = 2.0 * pi * i / grid_density;
      add({cx(std::cos(t), 0.0), cx(std::sin(t), 0.0)});
    }
  } else if (!cplx && dom.dim == 3) {
    const int nt = std::max(8, grid_density / 4);
    const int np = std::max(16, grid_density / 2);
    for (int a = 0; a <= nt; ++a) {
      const double th = pi * a / nt;
      for (int b = 0; b < np; ++b) {
        const double ph = 2.0 * pi * b / np;
        add({cx(std::sin(th) * std::cos(ph), 0.0), cx(std::sin(th) * std::sin(ph), 0.0),
             cx(std::cos(th), 0.0)});
      }
    }
  } else {  // complex, dim 2
    const int nt = std::max(8, grid_density / 8);
    const int np = std::max(16, grid_density / 2);
    for (int a = 0; a <= nt; ++a) {
      const double th = 0.5 * pi * a / nt;
      for (int b = 0; b < np; ++b) {
        const double ph = 2.0 * pi * b / np;
        add({cx(std::cos(th), 0.0), std::polar(std::sin(th), ph)});
      }
    }
  }

  std::vector<std::pair<double, int>> scored;
  scored.reserve(grid.size());
  for (size_t i = 0; i < grid.size(); ++i)
    scored.emplace_back(objective(grid[i]), static_cast<int>(i));
  std::sort(scored.begin(), scored.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });

  const double grid_best = scored.front().first;
  const int polish_cap = 64;
  std::vector<StartOutcome> outs;
  for (const auto& [v, idx] : scored) {
    if (v < grid_best * 0.98 || static_cast<int>(outs.size()) >= polish_cap) break;
    Vector x = grid[static_cast<size_t>(idx)];
    const double pv = polish_on_sphere(objective, x);
    phase_normalize(x);
    outs.emplace_back(pv, std::move(x), 0);
  }
  return assemble(std::move(outs), T, cfg, NormMethod::brute_force,
                  static_cast<int>(grid.size()));
}

}  // namespace

NormResult brute_force_norm(const Operator& T, int grid_density, const SolveConfig& cfg) {
  return brute_force_impl(OperatorTuple::single(T), grid_density, cfg);
}

NormResult brute_force_norm(const OperatorTuple& T, int grid_density,
                            const SolveConfig& cfg) {
  return brute_force_impl(T, grid_density, cfg);
}

}  // namespace optuple
