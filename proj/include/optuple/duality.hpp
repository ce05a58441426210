#pragma once

#include <vector>

#include "optuple/space.hpp"

namespace optuple {

/// One-sided derivatives of a norm: rho_minus <= rho_plus always.
struct RhoPair {
  double minus;
  double plus;
};

/// J(x) = { f in the dual sphere : f(x) = ||x|| }, for a nonzero x in l_p^n.
///
/// For 1 < p < inf the set is the singleton `primary`. For p = 1 the extreme
/// points are all unimodular completions of conj(sgn x_i) off the support;
/// `free_coords` lists those coordinates and `primary` carries 0 there (a
/// valid, non-extreme element). For p = inf the extreme points are
/// conj(sgn x_k) e_k over the argmax coordinates `argmax_coords`; `primary`
/// is the lowest-index one.
struct NormingFunctionalSet {
  Vector primary;
  bool singleton;
  std::vector<int> free_coords;    // p = 1 only
  std::vector<int> argmax_coords;  // p = inf only
  std::vector<cx> argmax_phases;   // conj(sgn x_k) per argmax coordinate

  /// Enumerates extreme points. Real field: exact (signs +-1 on free
  /// coordinates). Complex field: free phases form a continuum; they are
  /// sampled at `phase_samples` roots of unity per free coordinate, which is
  /// enough for certificate candidate collection but not exhaustive.
  /// Throws DimensionTooLarge when the enumeration would exceed `cap`.
  std::vector<Vector> extreme_points(int cap = 4096, int phase_samples = 4) const;
};

/// Coordinates i with |x_i| below 1e-12 * max|x| count as "off support".
std::vector<int> support_coords(const Vector& x);
std::vector<int> zero_coords(const Vector& x);

/// Argmax coordinates of |x_i| within a relative tie width.
std::vector<int> argmax_coords(const Vector& x, double tol_cluster);

/// The duality map J(x). Throws ZeroVectorError for x = 0.
NormingFunctionalSet duality_map(const Vector& x, double tol_cluster = 1e-7);

/// A unit vector u (in l_p, p = f's space exponent dualized) with
/// Re f(u) = ||f||_dual: the norming vector of the functional f.
Vector norming_vector(const Vector& f);

/// True iff J(x) is a singleton.
bool is_smooth_point(const Vector& x, double tol_cluster = 1e-7);

/// True iff x is an extreme point of the unit ball. Requires ||x|| = 1
/// within tol_unit, else throws NotUnitVectorError.
bool is_extreme_point(const Vector& x, double tol_unit = 1e-9);

/// Closed-form one-sided derivatives of ||.||_p at x in direction y:
/// rho_+/- = sup/inf of Re f(y) over the extreme points of J(x).
RhoPair rho_vector(const Vector& x, const Vector& y, double tol_cluster = 1e-7);

}  // namespace optuple
