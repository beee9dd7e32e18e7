#pragma once

#include <mpfr.h>

#include <compare>
#include <cstdint>
#include <string>

namespace ballquad {

/// Non-negative magnitude used for ball radii and error bounds.
///
/// The value is man * 2^exp with a double significand in [0.5, 1) and a
/// 64-bit exponent, so radii far outside the double range (e.g. 1e-450)
/// are representable. Plain arithmetic rounds upward; the `*_lower`
/// variants round downward. Overflow saturates to +inf.
class Mag {
 public:
  constexpr Mag() = default;

  static Mag inf();
  /// Upper bound for |x|. NaN maps to +inf.
  static Mag from_double(double x);
  /// Lower bound for |x|.
  static Mag from_double_lower(double x);
  /// Exactly 2^e.
  static Mag pow2(std::int64_t e);
  /// Upper bound for |x|.
  static Mag from_mpfr(mpfr_srcptr x);
  /// Lower bound for |x|.
  static Mag from_mpfr_lower(mpfr_srcptr x);

  bool is_zero() const { return man_ == 0.0; }
  bool is_inf() const;
  bool is_finite() const { return !is_inf(); }

  double mantissa() const { return man_; }
  std::int64_t exponent() const { return exp_; }

  /// Upper bound as a double (+inf when out of range).
  double to_double() const;
  /// Writes the exact value; `out` must carry at least 53 bits.
  void to_mpfr(mpfr_ptr out) const;
  /// Approximate log2, for degree estimates only.
  double log2_approx() const;

  Mag mul_2exp(std::int64_t e) const;
  Mag sqrt() const;
  Mag sqrt_lower() const;

  friend Mag operator+(const Mag& a, const Mag& b);
  friend Mag operator*(const Mag& a, const Mag& b);
  friend Mag operator/(const Mag& a, const Mag& b);
  Mag& operator+=(const Mag& b) { return *this = *this + b; }
  Mag& operator*=(const Mag& b) { return *this = *this * b; }

  static Mag add_lower(const Mag& a, const Mag& b);
  static Mag mul_lower(const Mag& a, const Mag& b);
  static Mag div_lower(const Mag& a, const Mag& b);
  /// Lower bound for max(a - b, 0).
  static Mag sub_lower(const Mag& a, const Mag& b);

  friend std::partial_ordering operator<=>(const Mag& a, const Mag& b);
  friend bool operator==(const Mag& a, const Mag& b) {
    return a.man_ == b.man_ && (a.man_ == 0.0 || a.exp_ == b.exp_);
  }

  /// Three significant digits, rounded up, e.g. "7.89e-31".
  std::string to_string() const;

 private:
  static Mag normalized(double man, std::int64_t exp, bool round_up);

  double man_ = 0.0;
  std::int64_t exp_ = 0;
};

inline Mag max(const Mag& a, const Mag& b) { return a < b ? b : a; }
inline Mag min(const Mag& a, const Mag& b) { return a < b ? a : b; }

}  // namespace ballquad
