#include "optuple/operators.hpp"

#include <cmath>

namespace optuple {

Vector Operator::row(int r) const {
  Vector v = Vector::zeros(domain_.dual());
  for (int c = 0; c < cols(); ++c) v[c] = at(r, c);
  return v;
}

Vector Operator::column(int c) const {
  Vector v = Vector::zeros(codomain_);
  for (int r = 0; r < rows(); ++r) v[r] = at(r, c);
  return v;
}

bool Operator::is_zero(double tol) const {
  for (const cx& z : m_)
    if (std::abs(z) > tol) return false;
  return true;
}

double Operator::frobenius() const {
  double s = 0.0;
  for (const cx& z : m_) s += std::norm(z);
  return std::sqrt(s);
}

Operator& Operator::operator+=(const Operator& o) {
  if (o.domain_ != domain_ || o.codomain_ != codomain_)
    throw DimensionMismatch("operator sum: shape mismatch");
  for (size_t i = 0; i < m_.size(); ++i) m_[i] += o.m_[i];
  return *this;
}

Operator& Operator::operator-=(const Operator& o) {
  if (o.domain_ != domain_ || o.codomain_ != codomain_)
    throw DimensionMismatch("operator difference: shape mismatch");
  for (size_t i = 0; i < m_.size(); ++i) m_[i] -= o.m_[i];
  return *this;
}

Operator& Operator::operator*=(cx a) {
  for (cx& z : m_) z *= a;
  return *this;
}

Operator operator+(Operator a, const Operator& b) { return a += b; }
Operator operator-(Operator a, const Operator& b) { return a -= b; }
Operator operator*(cx a, Operator t) { return t *= a; }

Vector apply(const Operator& T, const Vector& x) {
  if (x.space() != T.domain())
    throw DimensionMismatch("apply: vector is not in the operator's domain");
  Vector y = Vector::zeros(T.codomain());
  for (int r = 0; r < T.rows(); ++r) {
    cx s = 0.0;
    for (int c = 0; c < T.cols(); ++c) s += T.at(r, c) * x[c];
    y[r] = s;
  }
  return y;
}

Operator adjoint(const Operator& T) {
  Operator a = Operator::zeros(T.codomain().dual(), T.domain().dual());
  for (int r = 0; r < T.rows(); ++r)
    for (int c = 0; c < T.cols(); ++c) a.at(c, r) = std::conj(T.at(r, c));
  return a;
}

OperatorTuple::OperatorTuple(std::vector<Operator> components, Exponent outer_p)
    : comps_(std::move(components)), outer_(outer_p) {
  if (comps_.empty()) throw ShapeMismatch("operator tuple needs at least one component");
  for (const Operator& t : comps_)
    if (t.domain() != comps_.front().domain())
      throw ShapeMismatch("operator tuple components must share one domain");
}

bool OperatorTuple::is_zero(double tol) const {
  for (const Operator& t : comps_)
    if (!t.is_zero(tol)) return false;
  return true;
}

std::vector<Vector> tuple_apply(const OperatorTuple& T, const Vector& x) {
  std::vector<Vector> out;
  out.reserve(static_cast<size_t>(T.size()));
  for (const Operator& t : T.components()) out.push_back(apply(t, x));
  return out;
}

double tuple_codomain_norm(const std::vector<Vector>& values, const Exponent& outer_p) {
  if (values.empty()) throw ShapeMismatch("tuple_codomain_norm: empty value list");
  std::vector<cx> norms;
  norms.reserve(values.size());
  for (const Vector& v : values) norms.emplace_back(lp_norm(v), 0.0);
  return lp_norm(norms, outer_p);
}

double tuple_image_norm(const OperatorTuple& T, const Vector& x) {
  return tuple_codomain_norm(tuple_apply(T, x), T.outer_p());
}

OperatorTuple affine_tuple(const OperatorTuple& T, const OperatorTuple& S,
                           const DiagonalAction& z) {
  if (S.size() != T.size() || z.size() != T.size())
    throw DimensionMismatch("affine_tuple: component counts disagree");
  std::vector<Operator> comps;
  comps.reserve(static_cast<size_t>(T.size()));
  for (int i = 0; i < T.size(); ++i)
    comps.push_back(T.component(i) - z.z[static_cast<size_t>(i)] * S.component(i));
  return OperatorTuple(std::move(comps), T.outer_p());
}

Operator stack(const OperatorTuple& T, const Exponent& q) {
  int total = 0;
  for (const Operator& t : T.components()) total += t.rows();
  const LpSpace codomain(total, q, T.domain().field);
  Operator s = Operator::zeros(T.domain(), codomain);
  int off = 0;
  for (const Operator& t : T.components()) {
    for (int r = 0; r < t.rows(); ++r)
      for (int c = 0; c < t.cols(); ++c) s.at(off + r, c) = t.at(r, c);
    off += t.rows();
  }
  return s;
}

}  // namespace optuple
