#pragma once

// Test-side oracles, kept independent of the solver paths they check.

#include <functional>
#include <random>

#include "optuple/approx.hpp"
#include "optuple/normcalc.hpp"
#include "optuple/theorems.hpp"

namespace oracles {

using namespace optuple;

inline Operator random_operator(LpSpace domain, LpSpace codomain, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Operator t = Operator::zeros(domain, codomain);
  for (int r = 0; r < t.rows(); ++r)
    for (int c = 0; c < t.cols(); ++c)
      t.at(r, c) = cx(gauss(rng), domain.field == Field::cplx ? gauss(rng) : 0.0);
  return t;
}

inline Vector random_unit_vector(LpSpace space, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v = Vector::zeros(space);
  for (int i = 0; i < space.dim; ++i)
    v[i] = cx(gauss(rng), space.field == Field::cplx ? gauss(rng) : 0.0);
  normalize(v);
  return v;
}

/// Dense z-grid plus compass polish for min_z ||T - z S||, real scalars only.
/// Independent of the golden-section / pattern-search implementation path.
inline double grid_distance_to_line(const Operator& T, const Operator& S, int grid = 81,
                                    const SolveConfig& cfg = {}) {
  const double sn = operator_norm(S, cfg).value;
  if (sn == 0.0) return operator_norm(T, cfg).value;
  const double radius = 2.0 * operator_norm(T, cfg).value / sn;
  auto f = [&](double z) { return operator_norm(T - cx(z, 0.0) * S, cfg).value; };

  double best_z = 0.0, best = f(0.0);
  for (int i = 0; i <= grid; ++i) {
    const double z = -radius + 2.0 * radius * i / grid;
    const double v = f(z);
    if (v < best) { best = v; best_z = z; }
  }
  double h = 2.0 * radius / grid;
  while (h > 1e-10) {
    if (f(best_z + h) < best) { best = f(best_z + h); best_z += h; continue; }
    if (f(best_z - h) < best) { best = f(best_z - h); best_z -= h; continue; }
    h *= 0.5;
  }
  return best;
}

/// Same idea over z in R^d (d <= 2 keeps the grid affordable).
inline double grid_distance_diagonal(const OperatorTuple& T, const OperatorTuple& S,
                                     int grid = 21, const SolveConfig& cfg = {}) {
  const int d = T.size();
  std::vector<double> radius(static_cast<size_t>(d), 0.0);
  const double tn = tuple_norm(T, cfg).value;
  for (int i = 0; i < d; ++i) {
    const double sn = operator_norm(S.component(i), cfg).value;
    radius[static_cast<size_t>(i)] = sn == 0.0 ? 0.0 : 2.0 * tn / sn;
  }
  auto f = [&](const std::vector<double>& z) {
    DiagonalAction za = DiagonalAction::zeros(d);
    for (int i = 0; i < d; ++i) za.z[static_cast<size_t>(i)] = z[static_cast<size_t>(i)];
    return tuple_norm(affine_tuple(T, S, za), cfg).value;
  };

  std::vector<double> z(static_cast<size_t>(d), 0.0), best_z = z;
  double best = f(z);
  std::vector<double> cell(static_cast<size_t>(d), 0.0);
  std::vector<double> lo(static_cast<size_t>(d)), hi(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) {
    lo[static_cast<size_t>(i)] = -radius[static_cast<size_t>(i)];
    hi[static_cast<size_t>(i)] = radius[static_cast<size_t>(i)];
  }
  // dense grid with zoom refinement: re-grid a few cells around the argmin
  std::vector<double> coarse_best_z = best_z;
  for (int level = 0; level < 10; ++level) {
    std::function<void(int)> sweep = [&](int k) {
      if (k == d) {
        const double v = f(z);
        if (v < best) { best = v; best_z = z; }
        return;
      }
      cell[static_cast<size_t>(k)] =
          (hi[static_cast<size_t>(k)] - lo[static_cast<size_t>(k)]) / grid;
      if (radius[static_cast<size_t>(k)] == 0.0) {
        z[static_cast<size_t>(k)] = 0.0;
        sweep(k + 1);
        return;
      }
      for (int i = 0; i <= grid; ++i) {
        z[static_cast<size_t>(k)] =
            lo[static_cast<size_t>(k)] + i * cell[static_cast<size_t>(k)];
        sweep(k + 1);
      }
    };
    sweep(0);
    if (level == 0) coarse_best_z = best_z;
    for (int i = 0; i < d; ++i) {
      if (radius[static_cast<size_t>(i)] == 0.0) continue;
      lo[static_cast<size_t>(i)] = best_z[static_cast<size_t>(i)] - 6.0 * cell[static_cast<size_t>(i)];
      hi[static_cast<size_t>(i)] = best_z[static_cast<size_t>(i)] + 6.0 * cell[static_cast<size_t>(i)];
    }
  }

  // polish over the full {-1,0,1}^d direction stencil; axis-only polish can
  // stall in the kink valleys of a max-type norm objective
  std::vector<std::vector<double>> dirs;
  std::vector<int> digit(static_cast<size_t>(d), 0);
  while (true) {
    std::vector<double> dir(static_cast<size_t>(d), 0.0);
    bool nonzero = false;
    for (int i = 0; i < d; ++i) {
      dir[static_cast<size_t>(i)] =
          radius[static_cast<size_t>(i)] == 0.0 ? 0.0 : digit[static_cast<size_t>(i)] - 1;
      nonzero = nonzero || dir[static_cast<size_t>(i)] != 0.0;
    }
    if (nonzero) dirs.push_back(std::move(dir));
    int k = 0;
    while (k < d && ++digit[static_cast<size_t>(k)] == 3) digit[static_cast<size_t>(k++)] = 0;
    if (k == d) break;
  }

  double h0 = 0.0;
  for (int i = 0; i < d; ++i) h0 = std::max(h0, 2.0 * radius[static_cast<size_t>(i)] / grid);
  std::mt19937_64 dir_rng(0x0badd1ce);
  std::normal_distribution<double> gauss(0.0, 1.0);
  // several coarse-to-fine polish rounds from the zoomed argmin and from the
  // coarse-grid argmin (zoom can lose a diagonal valley; the walk recovers it)
  for (int round = 0; round < 8; ++round) {
    z = round < 4 ? best_z : coarse_best_z;
    double h = h0;
    while (h > 1e-9) {
      bool improved = false;
      // accepted moves expand while they keep improving: thin curved valleys
      // would otherwise be walked one step at a time
      auto accept_expanding = [&](std::vector<double> w) {
        std::vector<double> zz(static_cast<size_t>(d));
        bool any = false;
        while (true) {
          for (int i = 0; i < d; ++i)
            zz[static_cast<size_t>(i)] = z[static_cast<size_t>(i)] + w[static_cast<size_t>(i)];
          const double v = f(zz);
          if (v >= best - 1e-15) break;
          best = v;
          z = zz;
          any = true;
          for (double& wi : w) wi *= 2.0;
        }
        return any;
      };
      for (const std::vector<double>& dir : dirs) {
        std::vector<double> w(static_cast<size_t>(d));
        for (int i = 0; i < d; ++i) w[static_cast<size_t>(i)] = h * dir[static_cast<size_t>(i)];
        if (accept_expanding(std::move(w))) improved = true;
      }
      // the descent cone of a kink valley can miss every stencil direction;
      // random polls keep the oracle honest down to its resolution
      for (int k = 0; k < 96 && !improved; ++k) {
        std::vector<double> w(static_cast<size_t>(d), 0.0);
        for (int i = 0; i < d; ++i)
          if (radius[static_cast<size_t>(i)] > 0.0) w[static_cast<size_t>(i)] = h * gauss(dir_rng);
        if (accept_expanding(std::move(w))) improved = true;
      }
      if (!improved) h *= 0.5;
    }
  }
  return best;
}

}  // namespace oracles
