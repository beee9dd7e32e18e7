#include "ballquad/complex_box.hpp"

#include <cctype>
#include <stdexcept>

namespace ballquad {

using detail::Float;

ComplexBox add(const ComplexBox& x, const ComplexBox& y, Precision prec) {
  return {add(x.re(), y.re(), prec), add(x.im(), y.im(), prec)};
}

ComplexBox sub(const ComplexBox& x, const ComplexBox& y, Precision prec) {
  return {sub(x.re(), y.re(), prec), sub(x.im(), y.im(), prec)};
}

ComplexBox neg(const ComplexBox& x) { return {neg(x.re()), neg(x.im())}; }

ComplexBox mul(const ComplexBox& x, const RealBall& y, Precision prec) {
  if (x.is_real()) return ComplexBox(mul(x.re(), y, prec));
  return {mul(x.re(), y, prec), mul(x.im(), y, prec)};
}

ComplexBox mul(const ComplexBox& x, const ComplexBox& y, Precision prec) {
  if (y.is_real()) return mul(x, y.re(), prec);
  if (x.is_real()) return mul(y, x.re(), prec);
  const RealBall& a = x.re();
  const RealBall& b = x.im();
  const RealBall& c = y.re();
  const RealBall& d = y.im();
  return {sub(mul(a, c, prec), mul(b, d, prec), prec), add(mul(a, d, prec), mul(b, c, prec), prec)};
}

ComplexBox div(const ComplexBox& x, const ComplexBox& y, Precision prec) {
  if (y.is_real()) {
    if (x.is_real()) return ComplexBox(div(x.re(), y.re(), prec));
    return {div(x.re(), y.re(), prec), div(x.im(), y.re(), prec)};
  }
  RealBall den = add(sqr(y.re(), prec), sqr(y.im(), prec), prec);
  if (!is_positive(den)) return ComplexBox::indeterminate();
  ComplexBox num = mul(x, conj(y), prec);
  return {div(num.re(), den, prec), div(num.im(), den, prec)};
}

ComplexBox inv(const ComplexBox& x, Precision prec) { return div(ComplexBox(1L), x, prec); }

ComplexBox sqr(const ComplexBox& x, Precision prec) {
  if (x.is_real()) return ComplexBox(sqr(x.re(), prec));
  RealBall re = sub(sqr(x.re(), prec), sqr(x.im(), prec), prec);
  RealBall im = mul_2exp(mul(x.re(), x.im(), prec), 1);
  return {std::move(re), std::move(im)};
}

ComplexBox mul_2exp(const ComplexBox& x, long e) { return {mul_2exp(x.re(), e), mul_2exp(x.im(), e)}; }

ComplexBox mul_i(const ComplexBox& x) { return {neg(x.im()), x.re()}; }

ComplexBox conj(const ComplexBox& x) { return {x.re(), neg(x.im())}; }

ComplexBox pow_ui(const ComplexBox& x, unsigned long n, Precision prec) {
  ComplexBox result(1L);
  ComplexBox base = x;
  while (n != 0) {
    if (n & 1UL) result = mul(result, base, prec);
    n >>= 1;
    if (n != 0) base = sqr(base, prec);
  }
  return result;
}

ComplexBox const_pi_box(Precision prec) { return ComplexBox(const_pi(prec)); }

ComplexBox exp(const ComplexBox& z, Precision prec) {
  if (z.is_real()) return ComplexBox(exp(z.re(), prec));
  RealBall m = exp(z.re(), prec);
  auto [s, c] = sin_cos(z.im(), prec);
  return {mul(m, c, prec), mul(m, s, prec)};
}

ComplexBox sin(const ComplexBox& z, Precision prec) {
  if (z.is_real()) return ComplexBox(sin(z.re(), prec));
  auto [s, c] = sin_cos(z.re(), prec);
  return {mul(s, cosh(z.im(), prec), prec), mul(c, sinh(z.im(), prec), prec)};
}

ComplexBox cos(const ComplexBox& z, Precision prec) {
  if (z.is_real()) return ComplexBox(cos(z.re(), prec));
  auto [s, c] = sin_cos(z.re(), prec);
  return {mul(c, cosh(z.im(), prec), prec), neg(mul(s, sinh(z.im(), prec), prec))};
}

ComplexBox sinh(const ComplexBox& z, Precision prec) {
  if (z.is_real()) return ComplexBox(sinh(z.re(), prec));
  auto [s, c] = sin_cos(z.im(), prec);
  return {mul(sinh(z.re(), prec), c, prec), mul(cosh(z.re(), prec), s, prec)};
}

ComplexBox cosh(const ComplexBox& z, Precision prec) {
  if (z.is_real()) return ComplexBox(cosh(z.re(), prec));
  auto [s, c] = sin_cos(z.im(), prec);
  return {mul(cosh(z.re(), prec), c, prec), mul(sinh(z.re(), prec), s, prec)};
}

namespace {

// Ball [0 +/- pi], covering every principal argument.
RealBall full_argument_range(Precision prec) {
  RealBall pi = const_pi(prec);
  return RealBall(RealBall().mid(), mag_upper(pi));
}

RealBall argument(const ComplexBox& z, Precision prec) {
  const RealBall& a = z.re();
  const RealBall& b = z.im();
  if (is_positive(a)) return atan(div(b, a, prec), prec);
  if (is_positive(b) || is_negative(b)) {
    RealBall half_pi = mul_2exp(const_pi(prec), -1);
    RealBall t = atan(div(a, b, prec), prec);
    return is_positive(b) ? sub(half_pi, t, prec) : sub(neg(half_pi), t, prec);
  }
  if (z.is_real() && is_negative(a)) return const_pi(prec);
  return full_argument_range(prec);
}

}  // namespace

ComplexBox log(const ComplexBox& z, Precision prec) {
  if (!z.is_finite()) return ComplexBox::indeterminate();
  if (z.is_real() && is_positive(z.re())) return ComplexBox(log(z.re(), prec));
  if (contains_zero(z.re()) && contains_zero(z.im())) return ComplexBox::indeterminate();
  RealBall mod2 = add(sqr(z.re(), prec), sqr(z.im(), prec), prec);
  RealBall re = mul_2exp(log(mod2, prec), -1);
  return {std::move(re), argument(z, prec)};
}

ComplexBox sqrt(const ComplexBox& z, Precision prec) {
  if (!z.is_finite()) return ComplexBox::indeterminate();
  const RealBall& a = z.re();
  const RealBall& b = z.im();
  if (z.is_real()) {
    if (is_positive(a) || a.is_zero()) return ComplexBox(sqrt(a, prec));
    if (is_negative(a)) return {RealBall(), sqrt(neg(a), prec)};
    // [lo, hi] with lo < 0 < hi: real part from the positive side,
    // imaginary part (+i branch) from the negative side.
    Float lo = a.lower();
    Float hi = a.upper();
    mpfr_neg(lo.get(), lo.get(), MPFR_RNDU);
    Float zero(2);
    RealBall re = sqrt_nonneg(RealBall::from_interval(zero.get(), hi.get(), prec), prec);
    RealBall im = sqrt_nonneg(RealBall::from_interval(zero.get(), lo.get(), prec), prec);
    return {std::move(re), std::move(im)};
  }
  RealBall modulus = sqrt_nonneg(add(sqr(a, prec), sqr(b, prec), prec), prec);
  if (is_positive(a)) {
    RealBall t = sqrt_nonneg(mul_2exp(add(modulus, a, prec), -1), prec);
    RealBall im = div(b, mul_2exp(t, 1), prec);
    return {std::move(t), std::move(im)};
  }
  if (is_positive(b) || is_negative(b)) {
    RealBall u = sqrt_nonneg(mul_2exp(sub(modulus, a, prec), -1), prec);
    RealBall re = div(abs(b), mul_2exp(u, 1), prec);
    RealBall im = is_positive(b) ? std::move(u) : neg(u);
    return {std::move(re), std::move(im)};
  }
  // The box meets the branch cut: cover both one-sided limits.
  Mag s = mag_upper(modulus).sqrt();
  Float half(64);
  s.mul_2exp(-1).to_mpfr(half.get());
  RealBall re(half.get(), s.mul_2exp(-1));
  RealBall im(RealBall().mid(), s);
  return {std::move(re), std::move(im)};
}

ComplexBox atan(const ComplexBox& z, Precision prec) {
  if (z.is_real()) return ComplexBox(atan(z.re(), prec));
  // atan z = (i/2) (log(1 - iz) - log(1 + iz))
  ComplexBox iz = mul_i(z);
  ComplexBox one(1L);
  ComplexBox d = sub(log(sub(one, iz, prec), prec), log(add(one, iz, prec), prec), prec);
  return mul_2exp(mul_i(d), -1);
}

ComplexBox sech(const ComplexBox& z, Precision prec) {
  if (z.is_real()) return ComplexBox(div(RealBall(1L), cosh(z.re(), prec), prec));
  bool pos = is_positive(z.re());
  if (!pos && !is_negative(z.re())) return inv(cosh(z, prec), prec);
  ComplexBox t = exp(pos ? neg(z) : z, prec);
  return div(mul_2exp(t, 1), add(ComplexBox(1L), sqr(t, prec), prec), prec);
}

ComplexBox hull(const ComplexBox& x, const ComplexBox& y) {
  return {hull(x.re(), y.re()), hull(x.im(), y.im())};
}

bool overlaps(const ComplexBox& x, const ComplexBox& y) {
  return overlaps(x.re(), y.re()) && overlaps(x.im(), y.im());
}

bool contains(const ComplexBox& outer, const ComplexBox& inner) {
  if (!outer.is_finite()) return true;
  return contains(outer.re(), inner.re()) && contains(outer.im(), inner.im());
}

bool overlaps_nonpositive_reals(const ComplexBox& z) {
  return contains_zero(z.im()) && !is_positive(z.re());
}

MagnitudeRange magnitude_interval(const ComplexBox& z) {
  if (!z.is_finite()) return {Mag{}, Mag::inf()};
  Mag ua = mag_upper(z.re());
  Mag ub = mag_upper(z.im());
  Mag la = mag_lower(z.re());
  Mag lb = mag_lower(z.im());
  Mag upper = (ua * ua + ub * ub).sqrt();
  Mag lower = Mag::add_lower(Mag::mul_lower(la, la), Mag::mul_lower(lb, lb)).sqrt_lower();
  return {lower, upper};
}

Mag max_radius(const ComplexBox& z) { return max(z.re().rad(), z.im().rad()); }

std::string to_string(const ComplexBox& z) {
  if (z.is_real()) return to_string(z.re());
  return to_string(z.re()) + " + " + to_string(z.im()) + "*I";
}

ComplexBox parse_complex_box(std::string_view text, Precision prec) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.size() < 2 || s.substr(s.size() - 2) != "*I") return ComplexBox(parse_real_ball(s, prec));
  s.remove_suffix(2);
  size_t sep = s.rfind(" + ");
  if (sep == std::string_view::npos) return {RealBall(), parse_real_ball(s, prec)};
  return {parse_real_ball(s.substr(0, sep), prec), parse_real_ball(s.substr(sep + 3), prec)};
}

}  // namespace ballquad
