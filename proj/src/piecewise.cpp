#include "ballquad/piecewise.hpp"

namespace ballquad {

using detail::Float;

namespace {

using RoundFn = int (*)(mpfr_ptr, mpfr_srcptr);

// Step function g (floor or ceil) applied to the real part. `check_lower`
// picks the endpoint that must not sit on an integer.
ComplexBox step_ext(const ComplexBox& z, bool analytic, RoundFn g, bool check_lower) {
  if (!z.re().is_finite()) return ComplexBox::indeterminate();
  Float lo = z.re().lower();
  Float hi = z.re().upper();
  Float glo(lo.prec()), ghi(hi.prec());
  g(glo.get(), lo.get());
  g(ghi.get(), hi.get());
  const Float& edge = check_lower ? lo : hi;
  bool on_integer = mpfr_integer_p(edge.get()) != 0;
  if (mpfr_equal_p(glo.get(), ghi.get()) && !on_integer) {
    return ComplexBox(RealBall(glo.get(), Mag{}));
  }
  if (analytic) return ComplexBox::indeterminate();
  return ComplexBox(RealBall::from_interval(glo.get(), ghi.get(), Precision(glo.prec() + 2)));
}

}  // namespace

ComplexBox abs_ext(const ComplexBox& z, bool analytic) {
  if (is_positive(z.re())) return z;
  if (is_negative(z.re())) return neg(z);
  if (analytic || !z.is_finite()) return ComplexBox::indeterminate();
  return hull(z, neg(z));
}

ComplexBox sgn_ext(const ComplexBox& z, bool analytic) {
  if (is_positive(z.re())) return ComplexBox(1L);
  if (is_negative(z.re())) return ComplexBox(-1L);
  if (analytic) return ComplexBox::indeterminate();
  Float zero(2);
  return ComplexBox(RealBall(zero.get(), Mag::from_double(1.0)));
}

ComplexBox floor_ext(const ComplexBox& z, bool analytic) {
  return step_ext(z, analytic, mpfr_floor, true);
}

ComplexBox ceil_ext(const ComplexBox& z, bool analytic) {
  return step_ext(z, analytic, mpfr_ceil, false);
}

ComplexBox max_ext(const ComplexBox& x, const ComplexBox& y, bool analytic, Precision prec) {
  RealBall d = sub(x.re(), y.re(), prec);
  if (is_positive(d)) return x;
  if (is_negative(d)) return y;
  if (analytic) return ComplexBox::indeterminate();
  return hull(x, y);
}

ComplexBox min_ext(const ComplexBox& x, const ComplexBox& y, bool analytic, Precision prec) {
  RealBall d = sub(x.re(), y.re(), prec);
  if (is_positive(d)) return y;
  if (is_negative(d)) return x;
  if (analytic) return ComplexBox::indeterminate();
  return hull(x, y);
}

ComplexBox sqrt_analytic(const ComplexBox& z, bool analytic, Precision prec) {
  if (analytic && overlaps_nonpositive_reals(z)) return ComplexBox::indeterminate();
  return sqrt(z, prec);
}

ComplexBox log_analytic(const ComplexBox& z, bool analytic, Precision prec) {
  if (analytic && overlaps_nonpositive_reals(z)) return ComplexBox::indeterminate();
  return log(z, prec);
}

}  // namespace ballquad
