#pragma once

#include <compare>
#include <limits>
#include <string>

namespace mnorm {

/// An exponent p in [1, inf] together with its conjugate p'.
///
/// Infinity is an exact tag rather than a large float. The conjugate is
/// stored alongside the value, so conjugate() is an exact involution.
class Exponent {
 public:
  /// Finite exponent; throws std::invalid_argument when p < 1 or p is NaN.
  explicit Exponent(double p);

  static Exponent infinity();
  static Exponent one() { return Exponent(1.0); }
  /// Parses "inf", "infinity" or a decimal number.
  static Exponent parse(const std::string& text);

  bool is_inf() const { return inf_; }
  bool is_one() const { return !inf_ && value_ == 1.0; }
  /// Finite value; +inf when is_inf().
  double value() const { return inf_ ? std::numeric_limits<double>::infinity() : value_; }
  /// 1/p with 1/inf = 0.
  double reciprocal() const { return inf_ ? 0.0 : 1.0 / value_; }

  Exponent conjugate() const;

  std::string to_string() const;

  friend bool operator==(const Exponent& a, const Exponent& b) {
    return a.inf_ == b.inf_ && (a.inf_ || a.value_ == b.value_);
  }
  friend std::partial_ordering operator<=>(const Exponent& a, const Exponent& b) {
    return a.value() <=> b.value();
  }

 private:
  Exponent(double value, bool inf, double conj_value, bool conj_inf)
      : value_(value), inf_(inf), conj_value_(conj_value), conj_inf_(conj_inf) {}

  double value_ = 1.0;
  bool inf_ = false;
  double conj_value_ = 0.0;
  bool conj_inf_ = true;
};

Exponent conjugate(const Exponent& p);

}  // namespace mnorm
