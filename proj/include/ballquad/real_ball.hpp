#pragma once

#include <mpfr.h>

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "ballquad/detail/float.hpp"
#include "ballquad/mag.hpp"

namespace ballquad {

/// Working precision in bits for midpoint arithmetic.
class Precision {
 public:
  explicit Precision(long bits) : bits_(bits) {
    if (bits < 2 || bits > (1L << 24)) throw std::invalid_argument("precision out of range");
  }
  long bits() const { return bits_; }
  friend bool operator==(Precision a, Precision b) = default;

 private:
  long bits_;
};

/// Mid-rad interval [mid +/- rad] with an arbitrary-precision midpoint.
///
/// Represents {x : |x - mid| <= rad}. Every operation below returns a ball
/// containing the exact image of its inputs; midpoint rounding errors are
/// always folded into the radius. An infinite radius is the single
/// "indeterminate" state and contains every real number.
class RealBall {
 public:
  /// Exact zero.
  RealBall() : mid_(2) {}
  explicit RealBall(long v);
  /// Exact conversion; NaN and infinities become indeterminate.
  explicit RealBall(double v);
  RealBall(mpfr_srcptr mid, Mag rad);
  RealBall(detail::Float mid, Mag rad) : mid_(std::move(mid)), rad_(rad) { canonicalize(); }

  static RealBall indeterminate();
  /// The smallest ball (at precision `prec`) enclosing [lo, hi]; lo <= hi.
  static RealBall from_interval(mpfr_srcptr lo, mpfr_srcptr hi, Precision prec);
  /// Exact 2^e.
  static RealBall pow2(long e);

  mpfr_srcptr mid() const { return mid_.get(); }
  const Mag& rad() const { return rad_; }
  mpfr_prec_t mid_precision() const { return mid_.prec(); }

  bool is_finite() const { return rad_.is_finite(); }
  bool is_exact() const { return rad_.is_zero(); }
  /// True for the exact ball [0 +/- 0].
  bool is_zero() const { return rad_.is_zero() && mpfr_zero_p(mid_.get()); }

  double mid_double() const { return mpfr_get_d(mid_.get(), MPFR_RNDN); }

  /// Widens the radius by `e`.
  void add_error(const Mag& e) { rad_ += e; }

  /// Exact lower/upper endpoint, written into a fresh Float of sufficient
  /// precision. Indeterminate balls give -inf/+inf.
  detail::Float lower() const;
  detail::Float upper() const;

 private:
  void canonicalize();

  detail::Float mid_;
  Mag rad_;
};

// Arithmetic. `prec` is the midpoint precision of the result.
RealBall add(const RealBall& x, const RealBall& y, Precision prec);
RealBall sub(const RealBall& x, const RealBall& y, Precision prec);
RealBall neg(const RealBall& x);
RealBall mul(const RealBall& x, const RealBall& y, Precision prec);
/// Indeterminate when the denominator contains zero.
RealBall div(const RealBall& x, const RealBall& y, Precision prec);
RealBall sqr(const RealBall& x, Precision prec);
RealBall mul_si(const RealBall& x, long c, Precision prec);
RealBall div_si(const RealBall& x, long c, Precision prec);
/// Exact scaling by 2^e.
RealBall mul_2exp(const RealBall& x, long e);
RealBall abs(const RealBall& x);
RealBall pow_ui(const RealBall& x, unsigned long n, Precision prec);

// Elementary functions on real balls.
RealBall const_pi(Precision prec);
RealBall exp(const RealBall& x, Precision prec);
/// Indeterminate unless x > 0.
RealBall log(const RealBall& x, Precision prec);
/// Indeterminate unless x >= 0.
RealBall sqrt(const RealBall& x, Precision prec);
/// sqrt on max(x, 0): for quantities known to be non-negative whose ball
/// may dip below zero through dependency.
RealBall sqrt_nonneg(const RealBall& x, Precision prec);
RealBall sin(const RealBall& x, Precision prec);
RealBall cos(const RealBall& x, Precision prec);
std::pair<RealBall, RealBall> sin_cos(const RealBall& x, Precision prec);
RealBall sinh(const RealBall& x, Precision prec);
RealBall cosh(const RealBall& x, Precision prec);
RealBall tanh(const RealBall& x, Precision prec);
RealBall atan(const RealBall& x, Precision prec);

// Set operations and predicates. All are exact except where noted.
RealBall hull(const RealBall& x, const RealBall& y);
bool overlaps(const RealBall& x, const RealBall& y);
/// True if `inner` is a subset of `outer`.
bool contains(const RealBall& outer, const RealBall& inner);
bool contains(const RealBall& x, mpfr_srcptr point);
bool contains_zero(const RealBall& x);
bool is_positive(const RealBall& x);
bool is_negative(const RealBall& x);
/// Upper bound for |t| over t in x.
Mag mag_upper(const RealBall& x);
/// Lower bound for |t| over t in x (zero if the ball contains zero).
Mag mag_lower(const RealBall& x);
double midpoint(const RealBall& x);

/// "[m +/- r]" with an upward-rounded radius, a bare number when exact,
/// "[+/- r]" when the midpoint is insignificant and "nan" when indeterminate.
std::string to_string(const RealBall& x);
/// Inverse of to_string; the result contains the printed set.
/// Throws std::invalid_argument on malformed input.
RealBall parse_real_ball(std::string_view text, Precision prec);

}  // namespace ballquad
