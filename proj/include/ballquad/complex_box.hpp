#pragma once

#include <string>
#include <string_view>

#include "ballquad/real_ball.hpp"

namespace ballquad {

/// Rectangle re + im*i of two real balls. A box with either component
/// indeterminate is treated as containing every complex number.
class ComplexBox {
 public:
  ComplexBox() = default;
  explicit ComplexBox(RealBall re) : re_(std::move(re)) {}
  ComplexBox(RealBall re, RealBall im) : re_(std::move(re)), im_(std::move(im)) {}
  explicit ComplexBox(long v) : re_(v) {}
  ComplexBox(double re, double im) : re_(re), im_(im) {}

  static ComplexBox indeterminate() {
    return {RealBall::indeterminate(), RealBall::indeterminate()};
  }

  const RealBall& re() const { return re_; }
  const RealBall& im() const { return im_; }
  RealBall& re() { return re_; }
  RealBall& im() { return im_; }

  bool is_finite() const { return re_.is_finite() && im_.is_finite(); }
  bool is_exact() const { return re_.is_exact() && im_.is_exact(); }
  /// Imaginary part is exactly zero.
  bool is_real() const { return im_.is_zero(); }

 private:
  RealBall re_;
  RealBall im_;
};

/// Rigorous bounds on |w| over w in a box.
struct MagnitudeRange {
  Mag lower;
  Mag upper;
};

ComplexBox add(const ComplexBox& x, const ComplexBox& y, Precision prec);
ComplexBox sub(const ComplexBox& x, const ComplexBox& y, Precision prec);
ComplexBox neg(const ComplexBox& x);
ComplexBox mul(const ComplexBox& x, const ComplexBox& y, Precision prec);
ComplexBox mul(const ComplexBox& x, const RealBall& y, Precision prec);
/// Indeterminate when the denominator box contains zero.
ComplexBox div(const ComplexBox& x, const ComplexBox& y, Precision prec);
ComplexBox inv(const ComplexBox& x, Precision prec);
ComplexBox sqr(const ComplexBox& x, Precision prec);
ComplexBox mul_2exp(const ComplexBox& x, long e);
ComplexBox mul_i(const ComplexBox& x);
ComplexBox conj(const ComplexBox& x);
ComplexBox pow_ui(const ComplexBox& x, unsigned long n, Precision prec);

ComplexBox const_pi_box(Precision prec);
ComplexBox exp(const ComplexBox& z, Precision prec);
/// Principal branch. On boxes meeting the cut (-inf, 0] the imaginary part
/// covers both branch limits; indeterminate if the box contains 0.
ComplexBox log(const ComplexBox& z, Precision prec);
/// Principal branch; boxes meeting the cut get a box covering both limits.
ComplexBox sqrt(const ComplexBox& z, Precision prec);
ComplexBox sin(const ComplexBox& z, Precision prec);
ComplexBox cos(const ComplexBox& z, Precision prec);
ComplexBox sinh(const ComplexBox& z, Precision prec);
ComplexBox cosh(const ComplexBox& z, Precision prec);
ComplexBox atan(const ComplexBox& z, Precision prec);
/// 1/cosh z, via 2e^-z / (1 + e^-2z) on half-planes so that boxes with a
/// large real part and a wide imaginary part stay finite.
ComplexBox sech(const ComplexBox& z, Precision prec);

ComplexBox hull(const ComplexBox& x, const ComplexBox& y);
bool overlaps(const ComplexBox& x, const ComplexBox& y);
bool contains(const ComplexBox& outer, const ComplexBox& inner);
/// True if the box meets the half-line (-inf, 0].
bool overlaps_nonpositive_reals(const ComplexBox& z);
MagnitudeRange magnitude_interval(const ComplexBox& z);
/// Largest of the two component radii.
Mag max_radius(const ComplexBox& z);

/// "re + im*I" with each part formatted as a real ball; just "re" when the
/// imaginary part is exactly zero.
std::string to_string(const ComplexBox& z);
ComplexBox parse_complex_box(std::string_view text, Precision prec);

}  // namespace ballquad
