#pragma once

#include <vector>

#include "optuple/space.hpp"

namespace optuple {

/// Dense linear operator between two l_p spaces, row-major storage.
class Operator {
 public:
  Operator(LpSpace domain, LpSpace codomain, std::vector<cx> row_major)
      : domain_(domain), codomain_(codomain), m_(std::move(row_major)) {
    if (static_cast<int>(m_.size()) != domain_.dim * codomain_.dim)
      throw DimensionMismatch("matrix shape does not match (codomain.dim x domain.dim)");
    if (domain_.field != codomain_.field)
      throw ShapeMismatch("operator domain/codomain field tags disagree");
  }

  static Operator zeros(LpSpace domain, LpSpace codomain) {
    return Operator(domain, codomain,
                    std::vector<cx>(static_cast<size_t>(domain.dim) * codomain.dim));
  }
  static Operator identity(LpSpace space) {
    Operator t = zeros(space, space);
    for (int i = 0; i < space.dim; ++i) t.at(i, i) = 1.0;
    return t;
  }
  static Operator from_reals(LpSpace domain, LpSpace codomain,
                             std::initializer_list<double> row_major) {
    std::vector<cx> m;
    for (double x : row_major) m.emplace_back(x, 0.0);
    return Operator(domain, codomain, std::move(m));
  }

  const LpSpace& domain() const { return domain_; }
  const LpSpace& codomain() const { return codomain_; }
  int rows() const { return codomain_.dim; }
  int cols() const { return domain_.dim; }

  cx& at(int r, int c) { return m_[static_cast<size_t>(r) * cols() + c]; }
  const cx& at(int r, int c) const { return m_[static_cast<size_t>(r) * cols() + c]; }
  const std::vector<cx>& raw() const { return m_; }

  Vector row(int r) const;  // as a functional on the domain (dual space)
  Vector column(int c) const;

  bool is_zero(double tol = 0.0) const;
  double frobenius() const;

  Operator& operator+=(const Operator& o);
  Operator& operator-=(const Operator& o);
  Operator& operator*=(cx a);

 private:
  LpSpace domain_;
  LpSpace codomain_;
  std::vector<cx> m_;
};

Operator operator+(Operator a, const Operator& b);
Operator operator-(Operator a, const Operator& b);
Operator operator*(cx a, Operator t);

/// Matrix-vector product; throws DimensionMismatch when x is not in T's domain.
Vector apply(const Operator& T, const Vector& x);

/// Conjugate transpose with domain/codomain swapped and exponents dualized.
Operator adjoint(const Operator& T);

/// Scalar coefficients z = (z_1, ..., z_d) acting on a tuple as (z_i S_i).
struct DiagonalAction {
  std::vector<cx> z;

  static DiagonalAction zeros(int d) { return {std::vector<cx>(static_cast<size_t>(d))}; }
  static DiagonalAction ones(int d) {
    return {std::vector<cx>(static_cast<size_t>(d), cx(1.0, 0.0))};
  }
  int size() const { return static_cast<int>(z.size()); }
};

/// d operators sharing one domain, with an outer exponent giving the joint
/// codomain norm ||(y_1, ..., y_d)||_p on the direct sum of the codomains.
class OperatorTuple {
 public:
  OperatorTuple(std::vector<Operator> components, Exponent outer_p);

  int size() const { return static_cast<int>(comps_.size()); }
  const Operator& component(int i) const { return comps_[static_cast<size_t>(i)]; }
  const std::vector<Operator>& components() const { return comps_; }
  const LpSpace& domain() const { return comps_.front().domain(); }
  const Exponent& outer_p() const { return outer_; }

  bool is_zero(double tol = 0.0) const;

  static OperatorTuple single(Operator t) {
    std::vector<Operator> c;
    c.push_back(std::move(t));
    return OperatorTuple(std::move(c), Exponent::infinity());
  }

 private:
  std::vector<Operator> comps_;
  Exponent outer_;
};

/// Component-wise application: (T_1 x, ..., T_d x).
std::vector<Vector> tuple_apply(const OperatorTuple& T, const Vector& x);

/// Outer l_p norm of the component norms of a list of image vectors.
double tuple_codomain_norm(const std::vector<Vector>& values, const Exponent& outer_p);

/// ||Tx|| in the joint codomain norm.
double tuple_image_norm(const OperatorTuple& T, const Vector& x);

/// Components T_i - z_i S_i. Shapes must match.
OperatorTuple affine_tuple(const OperatorTuple& T, const OperatorTuple& S,
                           const DiagonalAction& z);

/// Vertical stack of the components as one operator; the codomain exponent is
/// `q`. When q equals the tuple's outer exponent and every component codomain
/// exponent, the stacked operator norm equals the tuple norm.
Operator stack(const OperatorTuple& T, const Exponent& q);

}  // namespace optuple
