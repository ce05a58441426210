// Compares the serial multi-start reference against the OpenMP path on a
// batch of norm and distance solves, and verifies the results are identical.

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "optuple/approx.hpp"
#include "optuple/normcalc.hpp"
#include "optuple/theorems.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace optuple;

namespace {

double time_of(const std::function<void()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Operator random_operator(LpSpace domain, LpSpace codomain, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Operator t = Operator::zeros(domain, codomain);
  for (int r = 0; r < t.rows(); ++r)
    for (int c = 0; c < t.cols(); ++c) t.at(r, c) = gauss(rng);
  return t;
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP not enabled; both lanes run serially\n");
#endif

  std::mt19937_64 rng(42);
  const LpSpace dom(16, Exponent::finite(3.0));
  const LpSpace cod(12, Exponent::finite(2.2));
  std::vector<OperatorTuple> batch;
  for (int k = 0; k < 8; ++k) {
    std::vector<Operator> comps = {random_operator(dom, cod, rng),
                                   random_operator(dom, cod, rng),
                                   random_operator(dom, cod, rng)};
    batch.emplace_back(std::move(comps), Exponent::finite(2.0));
  }

  SolveConfig serial;
  serial.starts = 64;
  serial.parallel = false;
  SolveConfig parallel = serial;
  parallel.parallel = true;

  std::vector<double> vs, vp;
  const double ts = time_of([&] {
    for (const OperatorTuple& T : batch) vs.push_back(tuple_norm(T, serial).value);
  });
  const double tp = time_of([&] {
    for (const OperatorTuple& T : batch) vp.push_back(tuple_norm(T, parallel).value);
  });

  bool identical = vs == vp;
  std::printf("tuple_norm batch (d=3, 16 -> 12, p 3 -> 2.2, 64 starts):\n");
  std::printf("  serial   %.3f s\n  openmp   %.3f s\n  speedup  %.2fx\n  identical %s\n",
              ts, tp, ts / tp, identical ? "yes" : "NO");

  const Instance g = golden_counterexample();
  double ds = 0.0, dp = 0.0;
  const double tds = time_of([&] {
    ds = distance_to_diagonal_subspace(g.T, g.S, serial).value;
  });
  const double tdp = time_of([&] {
    dp = distance_to_diagonal_subspace(g.T, g.S, parallel).value;
  });
  identical = identical && ds == dp;
  std::printf("diagonal distance (golden pair):\n");
  std::printf("  serial   %.3f s\n  openmp   %.3f s\n  speedup  %.2fx\n  identical %s\n",
              tds, tdp, tds / tdp, ds == dp ? "yes" : "NO");

  return identical ? 0 : 1;
}
