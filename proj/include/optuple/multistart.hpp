#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "optuple/config.hpp"
#include "optuple/space.hpp"

namespace optuple {

/// splitmix64 step; used to derive independent per-start seeds from a master
/// seed so results do not depend on thread scheduling.
std::uint64_t mix_seed(std::uint64_t master, std::uint64_t stream);

/// Gaussian direction normalized to unit p-norm (complex parts only for
/// complex-field spaces).
Vector random_unit(const LpSpace& space, std::mt19937_64& rng);

/// Coordinate vectors, the normalized all-ones vector, and (for small real
/// dimension) all sign patterns: cheap deterministic starts that hit the
/// extreme points the nonsmooth norms attain at.
std::vector<Vector> canonical_starts(const LpSpace& space);

/// Runs `eval(start_index)` for indices [0, n) and collects the results in
/// index order. The parallel path distributes starts over OpenMP threads;
/// the serial path is the reference the tests compare against. Both produce
/// identical output for a fixed seed because starts never interact.
template <typename R>
std::vector<R> run_starts(int n, const std::function<R(int)>& eval, bool parallel);

struct StartOutcome {
  double value = 0.0;
  Vector witness;
  int iterations = 0;
  StartOutcome() : witness(Vector::zeros(LpSpace(1, Exponent::one()))) {}
  StartOutcome(double v, Vector w, int it) : value(v), witness(std::move(w)), iterations(it) {}
};

// Explicit instantiations live in multistart.cpp.
extern template std::vector<StartOutcome> run_starts<StartOutcome>(
    int, const std::function<StartOutcome(int)>&, bool);
extern template std::vector<double> run_starts<double>(
    int, const std::function<double(int)>&, bool);

}  // namespace optuple
