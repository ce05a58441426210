#include "optuple/space.hpp"

#include <algorithm>
#include <cmath>

namespace optuple {

Vector& Vector::operator+=(const Vector& o) {
  if (o.dim() != dim()) throw DimensionMismatch("vector sum: dimension mismatch");
  for (size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
  return *this;
}

Vector& Vector::operator-=(const Vector& o) {
  if (o.dim() != dim()) throw DimensionMismatch("vector difference: dimension mismatch");
  for (size_t i = 0; i < e_.size(); ++i) e_[i] -= o.e_[i];
  return *this;
}

Vector& Vector::operator*=(cx a) {
  for (auto& z : e_) z *= a;
  return *this;
}

Vector operator+(Vector a, const Vector& b) { return a += b; }
Vector operator-(Vector a, const Vector& b) { return a -= b; }
Vector operator*(cx a, Vector v) { return v *= a; }

double max_abs(std::span<const cx> entries) {
  double m = 0.0;
  for (const cx& z : entries) m = std::max(m, std::abs(z));
  return m;
}

double lp_norm(std::span<const cx> entries, const Exponent& p) {
  if (p.is_infinite()) return max_abs(entries);
  if (p.is_one()) {
    double s = 0.0;
    for (const cx& z : entries) s += std::abs(z);
    return s;
  }
  // Scale by the max modulus so large exponents stay in range.
  const double m = max_abs(entries);
  if (m == 0.0) return 0.0;
  const double pv = p.value();
  double s = 0.0;
  for (const cx& z : entries) s += std::pow(std::abs(z) / m, pv);
  return m * std::pow(s, 1.0 / pv);
}

double lp_norm(const Vector& v) { return lp_norm(v.entries(), v.space().p); }

cx functional_apply(const Vector& f, const Vector& x) {
  if (f.dim() != x.dim()) throw DimensionMismatch("functional/vector dimension mismatch");
  cx s = 0.0;
  for (int i = 0; i < x.dim(); ++i) s += f[i] * x[i];
  return s;
}

cx hermitian_inner(const Vector& x, const Vector& y) {
  if (x.dim() != y.dim()) throw DimensionMismatch("inner product dimension mismatch");
  cx s = 0.0;
  for (int i = 0; i < x.dim(); ++i) s += x[i] * std::conj(y[i]);
  return s;
}

cx sgn(cx z) {
  const double a = std::abs(z);
  return a == 0.0 ? cx(1.0, 0.0) : z / a;
}

void phase_normalize(Vector& v) {
  const double m = max_abs(v.entries());
  if (m == 0.0) return;
  int k = 0;
  for (int i = 0; i < v.dim(); ++i) {
    if (std::abs(v[i]) >= m * (1.0 - 1e-12)) { k = i; break; }
  }
  v *= std::conj(sgn(v[k]));
  v[k] = cx(std::abs(v[k]), 0.0);  // scrub rounding in the pivot entry
}

double orbit_distance(const Vector& x, const Vector& y) {
  double nx = 0.0, ny = 0.0;
  for (int i = 0; i < x.dim(); ++i) nx += std::norm(x[i]);
  for (int i = 0; i < y.dim(); ++i) ny += std::norm(y[i]);
  const double c = std::abs(hermitian_inner(x, y));
  return std::sqrt(std::max(0.0, nx + ny - 2.0 * c));
}

void normalize(Vector& v) {
  const double n = lp_norm(v);
  if (n == 0.0) throw ZeroVectorError();
  v *= cx(1.0 / n, 0.0);
}

}  // namespace optuple
