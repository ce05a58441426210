#pragma once

#include <complex>
#include <span>
#include <vector>

#include "optuple/errors.hpp"
#include "optuple/exponent.hpp"

namespace optuple {

using cx = std::complex<double>;

enum class Field { real, cplx };

/// Finite-dimensional l_p space: R^dim or C^dim with the p-norm.
struct LpSpace {
  int dim;
  Exponent p;
  Field field;

  LpSpace(int d, Exponent e, Field f = Field::real) : dim(d), p(e), field(f) {
    if (d < 1) throw std::invalid_argument("LpSpace dimension must be >= 1");
  }

  LpSpace dual() const { return LpSpace(dim, p.dual(), field); }

  bool operator==(const LpSpace& o) const {
    return dim == o.dim && p == o.p && field == o.field;
  }
  bool operator!=(const LpSpace& o) const { return !(*this == o); }
};

/// Dense vector carrying its space. Entries are stored as complex doubles for
/// both fields; real-field vectors keep exactly zero imaginary parts.
class Vector {
 public:
  Vector(LpSpace space, std::vector<cx> entries)
      : space_(space), e_(std::move(entries)) {
    if (static_cast<int>(e_.size()) != space_.dim)
      throw DimensionMismatch("vector length does not match space dimension");
  }

  static Vector zeros(LpSpace space) {
    return Vector(space, std::vector<cx>(static_cast<size_t>(space.dim)));
  }

  static Vector unit(LpSpace space, int j) {
    Vector v = zeros(space);
    v.e_.at(static_cast<size_t>(j)) = 1.0;
    return v;
  }

  static Vector from_reals(LpSpace space, std::initializer_list<double> xs) {
    std::vector<cx> e;
    for (double x : xs) e.emplace_back(x, 0.0);
    return Vector(space, std::move(e));
  }

  const LpSpace& space() const { return space_; }
  int dim() const { return space_.dim; }
  Field field() const { return space_.field; }

  cx& operator[](int i) { return e_[static_cast<size_t>(i)]; }
  const cx& operator[](int i) const { return e_[static_cast<size_t>(i)]; }
  std::span<const cx> entries() const { return e_; }
  std::vector<cx>& raw() { return e_; }
  const std::vector<cx>& raw() const { return e_; }

  Vector& operator+=(const Vector& o);
  Vector& operator-=(const Vector& o);
  Vector& operator*=(cx a);

 private:
  LpSpace space_;
  std::vector<cx> e_;
};

Vector operator+(Vector a, const Vector& b);
Vector operator-(Vector a, const Vector& b);
Vector operator*(cx a, Vector v);

/// l_p norm of raw entries under the given exponent (max-modulus for p=inf).
double lp_norm(std::span<const cx> entries, const Exponent& p);

/// l_p norm of a vector in its own space.
double lp_norm(const Vector& v);

double max_abs(std::span<const cx> entries);

/// Linear pairing sum_k f_k x_k (functionals act linearly, no conjugation).
cx functional_apply(const Vector& f, const Vector& x);

/// Hermitian inner product sum_k x_k conj(y_k); used for phase alignment only.
cx hermitian_inner(const Vector& x, const Vector& y);

/// sgn(z) = z/|z| with sgn(0) = 1.
cx sgn(cx z);

/// Multiplies by the unimodular scalar that makes the largest-modulus entry
/// (lowest index among near-ties) real and nonnegative.
void phase_normalize(Vector& v);

/// Euclidean distance between the phase orbits {a x} and {a y}, |a| = 1.
double orbit_distance(const Vector& x, const Vector& y);

/// Normalizes v to unit p-norm; throws ZeroVectorError on the zero vector.
void normalize(Vector& v);

}  // namespace optuple
