#include "optuple/multistart.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace optuple {

std::uint64_t mix_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

Vector random_unit(const LpSpace& space, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v = Vector::zeros(space);
  for (int i = 0; i < space.dim; ++i) {
    const double re = gauss(rng);
    const double im = space.field == Field::cplx ? gauss(rng) : 0.0;
    v[i] = cx(re, im);
  }
  if (lp_norm(v) == 0.0) v[0] = 1.0;  // astronomically unlikely, still handled
  normalize(v);
  return v;
}

std::vector<Vector> canonical_starts(const LpSpace& space) {
  std::vector<Vector> out;
  for (int j = 0; j < space.dim; ++j) out.push_back(Vector::unit(space, j));

  Vector ones = Vector::zeros(space);
  for (int i = 0; i < space.dim; ++i) ones[i] = 1.0;
  normalize(ones);
  out.push_back(ones);

  if (space.dim >= 2 && space.dim <= 5) {
    // sign patterns with the first coordinate fixed positive
    const int patterns = 1 << (space.dim - 1);
    for (int mask = 1; mask < patterns; ++mask) {
      Vector v = Vector::zeros(space);
      v[0] = 1.0;
      for (int i = 1; i < space.dim; ++i)
        v[i] = (mask >> (i - 1)) & 1 ? cx(-1.0, 0.0) : cx(1.0, 0.0);
      normalize(v);
      out.push_back(std::move(v));
    }
  }
  return out;
}

template <typename R>
std::vector<R> run_starts(int n, const std::function<R(int)>& eval, bool parallel) {
  std::vector<R> out(static_cast<size_t>(n));
  if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) out[static_cast<size_t>(i)] = eval(i);
#else
    for (int i = 0; i < n; ++i) out[static_cast<size_t>(i)] = eval(i);
#endif
  } else {
    for (int i = 0; i < n; ++i) out[static_cast<size_t>(i)] = eval(i);
  }
  return out;
}

template std::vector<StartOutcome> run_starts<StartOutcome>(
    int, const std::function<StartOutcome(int)>&, bool);
template std::vector<double> run_starts<double>(int, const std::function<double(int)>&,
                                                bool);

}  // namespace optuple
