#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace optuple {

/// Exponent of an l_p norm, p in [1, inf].
///
/// p = 1 and p = infinity are distinct enum states so branches on them are
/// exact, never floating comparisons against a sentinel. A finite exponent
/// stores its Holder conjugate alongside, which makes dual() an exact
/// involution: dual().dual() reproduces the original bit pattern.
class Exponent {
 public:
  enum class Kind { one, finite, infinity };

  static Exponent one() { return Exponent(Kind::one, 1.0, inf_()); }
  static Exponent infinity() { return Exponent(Kind::infinity, inf_(), 1.0); }

  static Exponent finite(double p) {
    if (!(p > 1.0) || std::isinf(p))
      throw std::invalid_argument("Exponent::finite requires 1 < p < inf");
    return Exponent(Kind::finite, p, p / (p - 1.0));
  }

  /// Normalizing factory accepting any p in [1, inf].
  static Exponent from_value(double p) {
    if (std::isnan(p) || p < 1.0)
      throw std::invalid_argument("lp exponent must satisfy p >= 1");
    if (p == 1.0) return one();
    if (std::isinf(p)) return infinity();
    return finite(p);
  }

  Kind kind() const { return kind_; }
  bool is_one() const { return kind_ == Kind::one; }
  bool is_infinite() const { return kind_ == Kind::infinity; }
  bool is_finite() const { return kind_ == Kind::finite; }
  bool is_two() const { return kind_ == Kind::finite && p_ == 2.0; }

  /// 1.0, the finite value, or +inf.
  double value() const { return p_; }

  /// Holder conjugate: 1 <-> inf, p <-> p/(p-1).
  Exponent dual() const {
    switch (kind_) {
      case Kind::one:
        return infinity();
      case Kind::infinity:
        return one();
      default:
        return Exponent(Kind::finite, q_, p_);
    }
  }

  bool operator==(const Exponent& o) const {
    return kind_ == o.kind_ && (kind_ != Kind::finite || p_ == o.p_);
  }
  bool operator!=(const Exponent& o) const { return !(*this == o); }

  std::string str() const {
    if (is_one()) return "1";
    if (is_infinite()) return "inf";
    std::string s = std::to_string(p_);
    while (s.size() > 1 && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
  }

 private:
  Exponent(Kind k, double p, double q) : kind_(k), p_(p), q_(q) {}
  static double inf_() { return std::numeric_limits<double>::infinity(); }

  Kind kind_;
  double p_;
  double q_;
};

}  // namespace optuple
