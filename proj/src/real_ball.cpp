#include "ballquad/real_ball.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>

namespace ballquad {

using detail::Float;

namespace {

constexpr mpfr_prec_t kMaxExactPrec = mpfr_prec_t{1} << 20;

// Error bound for a nearest-rounded MPFR result with ternary value t.
Mag rounding_error(mpfr_srcptr v, int ternary) {
  if (ternary == 0) return {};
  if (!mpfr_number_p(v)) return Mag::inf();
  if (mpfr_zero_p(v)) return Mag::pow2(mpfr_get_emin());
  return Mag::pow2(static_cast<std::int64_t>(mpfr_get_exp(v)) - mpfr_get_prec(v));
}

RealBall rounded(Float r, int ternary, const Mag& extra) {
  Mag err = rounding_error(r.get(), ternary);
  return RealBall(std::move(r), extra + err);
}

// mid + sign * rad, exact when the required precision is reasonable and
// otherwise rounded outward.
Float shifted(mpfr_srcptr mid, const Mag& rad, int sign) {
  if (rad.is_zero()) return Float(mid, mpfr_get_prec(mid));
  Float r53(64);
  rad.to_mpfr(r53.get());
  if (mpfr_zero_p(mid)) {
    if (sign < 0) mpfr_neg(r53.get(), r53.get(), MPFR_RNDN);
    return r53;
  }
  long ea = mpfr_get_exp(mid);
  long la = ea - static_cast<long>(mpfr_get_prec(mid));
  long eb = static_cast<long>(rad.exponent());
  long lb = eb - 53;
  long p = std::max(ea, eb) - std::min(la, lb) + 2;
  mpfr_prec_t prec = std::clamp<long>(p, 2, kMaxExactPrec);
  Float r(prec);
  if (sign < 0) {
    mpfr_sub(r.get(), mid, r53.get(), MPFR_RNDD);
  } else {
    mpfr_add(r.get(), mid, r53.get(), MPFR_RNDU);
  }
  return r;
}

Mag expm1_upper(const Mag& r) {
  if (r.is_inf()) return Mag::inf();
  Float t(64);
  r.to_mpfr(t.get());
  mpfr_expm1(t.get(), t.get(), MPFR_RNDU);
  return Mag::from_mpfr(t.get());
}

// Intersects a finite ball with [-1, 1].
RealBall clamp_unit(RealBall x, Precision prec) {
  if (!x.is_finite()) {
    Float zero(2);
    return RealBall(std::move(zero), Mag::from_double(1.0));
  }
  if (mag_upper(x) <= Mag::from_double(1.0)) return x;
  Float lo = x.lower();
  Float hi = x.upper();
  bool clip_lo = mpfr_cmp_si(lo.get(), -1) < 0;
  bool clip_hi = mpfr_cmp_si(hi.get(), 1) > 0;
  if (clip_lo && clip_hi) return RealBall(Float(2), Mag::from_double(1.0));
  if (!clip_lo && !clip_hi) return RealBall::from_interval(lo.get(), hi.get(), prec);
  // Keep the clipped endpoint at exactly +-1 and let the radius rounding
  // widen the other side.
  Float w(prec.bits() + 8);
  if (clip_hi) {
    mpfr_ui_sub(w.get(), 1, lo.get(), MPFR_RNDU);
  } else {
    mpfr_add_ui(w.get(), hi.get(), 1, MPFR_RNDU);
  }
  Mag r = Mag::from_mpfr(w.get()).mul_2exp(-1);
  Float rf(64);
  r.to_mpfr(rf.get());
  Float mid(std::max<long>(prec.bits(), 64 - r.exponent() + 8));
  if (clip_hi) {
    mpfr_ui_sub(mid.get(), 1, rf.get(), MPFR_RNDN);
  } else {
    mpfr_sub_ui(mid.get(), rf.get(), 1, MPFR_RNDN);
  }
  return RealBall(std::move(mid), r);
}

using MpfrFn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);

RealBall point_eval(mpfr_srcptr x, Precision prec, MpfrFn f) {
  Float r(prec.bits());
  int t = f(r.get(), x, MPFR_RNDN);
  return rounded(std::move(r), t, {});
}

// f increasing on [lo, hi].
RealBall increasing_on(mpfr_srcptr lo, mpfr_srcptr hi, Precision prec, MpfrFn f) {
  Float flo(prec.bits()), fhi(prec.bits());
  f(flo.get(), lo, MPFR_RNDD);
  f(fhi.get(), hi, MPFR_RNDU);
  if (!mpfr_number_p(flo.get()) || !mpfr_number_p(fhi.get())) return RealBall::indeterminate();
  return RealBall::from_interval(flo.get(), fhi.get(), prec);
}

RealBall monotone_increasing(const RealBall& x, Precision prec, MpfrFn f) {
  if (!x.is_finite()) return RealBall::indeterminate();
  if (x.is_exact()) return point_eval(x.mid(), prec, f);
  Float lo = x.lower();
  Float hi = x.upper();
  return increasing_on(lo.get(), hi.get(), prec, f);
}

}  // namespace

RealBall::RealBall(long v) : mid_(64) { mpfr_set_si(mid_.get(), v, MPFR_RNDN); }

RealBall::RealBall(double v) : mid_(53) {
  mpfr_set_d(mid_.get(), v, MPFR_RNDN);
  canonicalize();
}

RealBall::RealBall(mpfr_srcptr mid, Mag rad) : mid_(mid, mpfr_get_prec(mid)), rad_(rad) {
  canonicalize();
}

void RealBall::canonicalize() {
  if (!mpfr_number_p(mid_.get()) || rad_.is_inf()) {
    mpfr_set_zero(mid_.get(), 1);
    rad_ = Mag::inf();
  }
}

RealBall RealBall::indeterminate() {
  RealBall r;
  r.rad_ = Mag::inf();
  return r;
}

RealBall RealBall::pow2(long e) {
  Float m(2);
  mpfr_set_ui(m.get(), 1, MPFR_RNDN);
  mpfr_mul_2si(m.get(), m.get(), e, MPFR_RNDN);
  return RealBall(std::move(m), Mag{});
}

RealBall RealBall::from_interval(mpfr_srcptr lo, mpfr_srcptr hi, Precision prec) {
  if (!mpfr_number_p(lo) || !mpfr_number_p(hi)) return indeterminate();
  Float m(prec.bits());
  mpfr_add(m.get(), lo, hi, MPFR_RNDN);
  mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
  Float a(64), b(64);
  mpfr_sub(a.get(), hi, m.get(), MPFR_RNDU);
  mpfr_sub(b.get(), m.get(), lo, MPFR_RNDU);
  Mag ra = mpfr_sgn(a.get()) > 0 ? Mag::from_mpfr(a.get()) : Mag{};
  Mag rb = mpfr_sgn(b.get()) > 0 ? Mag::from_mpfr(b.get()) : Mag{};
  return RealBall(std::move(m), max(ra, rb));
}

Float RealBall::lower() const {
  if (!is_finite()) {
    Float r(2);
    mpfr_set_inf(r.get(), -1);
    return r;
  }
  return shifted(mid_.get(), rad_, -1);
}

Float RealBall::upper() const {
  if (!is_finite()) {
    Float r(2);
    mpfr_set_inf(r.get(), 1);
    return r;
  }
  return shifted(mid_.get(), rad_, 1);
}

RealBall add(const RealBall& x, const RealBall& y, Precision prec) {
  if (!x.is_finite() || !y.is_finite()) return RealBall::indeterminate();
  Float r(prec.bits());
  int t = mpfr_add(r.get(), x.mid(), y.mid(), MPFR_RNDN);
  return rounded(std::move(r), t, x.rad() + y.rad());
}

RealBall sub(const RealBall& x, const RealBall& y, Precision prec) {
  if (!x.is_finite() || !y.is_finite()) return RealBall::indeterminate();
  Float r(prec.bits());
  int t = mpfr_sub(r.get(), x.mid(), y.mid(), MPFR_RNDN);
  return rounded(std::move(r), t, x.rad() + y.rad());
}

RealBall neg(const RealBall& x) {
  if (!x.is_finite()) return RealBall::indeterminate();
  Float r(x.mid(), x.mid_precision());
  mpfr_neg(r.get(), r.get(), MPFR_RNDN);
  return RealBall(std::move(r), x.rad());
}

RealBall mul(const RealBall& x, const RealBall& y, Precision prec) {
  if (!x.is_finite() || !y.is_finite()) return RealBall::indeterminate();
  Float r(prec.bits());
  int t = mpfr_mul(r.get(), x.mid(), y.mid(), MPFR_RNDN);
  Mag rad;
  if (!x.rad().is_zero() || !y.rad().is_zero()) {
    Mag mx = Mag::from_mpfr(x.mid());
    Mag my = Mag::from_mpfr(y.mid());
    rad = mx * y.rad() + my * x.rad() + x.rad() * y.rad();
  }
  return rounded(std::move(r), t, rad);
}

RealBall div(const RealBall& x, const RealBall& y, Precision prec) {
  if (!x.is_finite() || !y.is_finite() || contains_zero(y)) return RealBall::indeterminate();
  Float r(prec.bits());
  int t = mpfr_div(r.get(), x.mid(), y.mid(), MPFR_RNDN);
  Mag rad;
  if (!x.rad().is_zero() || !y.rad().is_zero()) {
    Mag mx = Mag::from_mpfr(x.mid());
    Mag my = Mag::from_mpfr(y.mid());
    Mag my_lo = Mag::from_mpfr_lower(y.mid());
    Mag den = Mag::mul_lower(my_lo, Mag::sub_lower(my_lo, y.rad()));
    if (den.is_zero()) return RealBall::indeterminate();
    rad = (mx * y.rad() + my * x.rad()) / den;
  }
  return rounded(std::move(r), t, rad);
}

RealBall sqr(const RealBall& x, Precision prec) {
  if (!x.is_finite()) return RealBall::indeterminate();
  if (!x.rad().is_zero() && contains_zero(x)) {
    Mag hi = mag_upper(x);
    Mag half = (hi * hi).mul_2exp(-1);
    Float m(64);
    half.to_mpfr(m.get());
    return RealBall(std::move(m), half);
  }
  Float r(prec.bits());
  int t = mpfr_sqr(r.get(), x.mid(), MPFR_RNDN);
  Mag rad;
  if (!x.rad().is_zero()) {
    Mag mx = Mag::from_mpfr(x.mid());
    rad = (mx * x.rad()).mul_2exp(1) + x.rad() * x.rad();
  }
  return rounded(std::move(r), t, rad);
}

RealBall mul_si(const RealBall& x, long c, Precision prec) { return mul(x, RealBall(c), prec); }

RealBall div_si(const RealBall& x, long c, Precision prec) { return div(x, RealBall(c), prec); }

RealBall mul_2exp(const RealBall& x, long e) {
  if (!x.is_finite()) return RealBall::indeterminate();
  Float r(x.mid(), x.mid_precision());
  mpfr_mul_2si(r.get(), r.get(), e, MPFR_RNDN);
  return RealBall(std::move(r), x.rad().mul_2exp(e));
}

RealBall abs(const RealBall& x) {
  if (!x.is_finite()) return RealBall::indeterminate();
  if (is_negative(x)) return neg(x);
  if (is_positive(x) || x.is_exact()) {
    Float r(x.mid(), x.mid_precision());
    mpfr_abs(r.get(), r.get(), MPFR_RNDN);
    return RealBall(std::move(r), x.rad());
  }
  Mag hi = mag_upper(x);
  Mag half = hi.mul_2exp(-1);
  Float m(64);
  half.to_mpfr(m.get());
  return RealBall(std::move(m), half);
}

RealBall pow_ui(const RealBall& x, unsigned long n, Precision prec) {
  RealBall result(1L);
  RealBall base = x;
  while (n != 0) {
    if (n & 1UL) result = mul(result, base, prec);
    n >>= 1;
    if (n != 0) base = sqr(base, prec);
  }
  return result;
}

RealBall const_pi(Precision prec) {
  Float r(prec.bits());
  int t = mpfr_const_pi(r.get(), MPFR_RNDN);
  return rounded(std::move(r), t, {});
}

RealBall exp(const RealBall& x, Precision prec) {
  if (!x.is_finite()) return RealBall::indeterminate();
  Float r(prec.bits());
  int t = mpfr_exp(r.get(), x.mid(), MPFR_RNDN);
  if (!mpfr_number_p(r.get())) return RealBall::indeterminate();
  Mag err = rounding_error(r.get(), t);
  if (!x.rad().is_zero()) {
    // |e^(m+t) - e^m| <= e^m (e^r - 1)
    err = err + (Mag::from_mpfr(r.get()) + err) * expm1_upper(x.rad());
  }
  return RealBall(std::move(r), err);
}

RealBall log(const RealBall& x, Precision prec) {
  if (!is_positive(x)) return RealBall::indeterminate();
  return monotone_increasing(x, prec, mpfr_log);
}

RealBall sqrt(const RealBall& x, Precision prec) {
  if (!x.is_finite()) return RealBall::indeterminate();
  Float lo = x.lower();
  if (mpfr_sgn(lo.get()) < 0) return RealBall::indeterminate();
  return monotone_increasing(x, prec, mpfr_sqrt);
}

RealBall sqrt_nonneg(const RealBall& x, Precision prec) {
  if (!x.is_finite()) return RealBall::indeterminate();
  if (x.is_exact() && mpfr_sgn(x.mid()) >= 0) return point_eval(x.mid(), prec, mpfr_sqrt);
  Float lo = x.lower();
  Float hi = x.upper();
  if (mpfr_sgn(hi.get()) < 0) return RealBall::indeterminate();
  if (mpfr_sgn(lo.get()) < 0) mpfr_set_zero(lo.get(), 1);
  return increasing_on(lo.get(), hi.get(), prec, mpfr_sqrt);
}

namespace {

bool wide_for_trig(const RealBall& x) { return x.rad() > Mag::from_double(1.5707963267948966); }

RealBall unit_ball() {
  Float zero(2);
  return RealBall(std::move(zero), Mag::from_double(1.0));
}

}  // namespace

RealBall sin(const RealBall& x, Precision prec) {
  if (!x.is_finite() || wide_for_trig(x)) return unit_ball();
  Float r(prec.bits());
  int t = mpfr_sin(r.get(), x.mid(), MPFR_RNDN);
  return clamp_unit(rounded(std::move(r), t, x.rad()), prec);
}

RealBall cos(const RealBall& x, Precision prec) {
  if (!x.is_finite() || wide_for_trig(x)) return unit_ball();
  Float r(prec.bits());
  int t = mpfr_cos(r.get(), x.mid(), MPFR_RNDN);
  return clamp_unit(rounded(std::move(r), t, x.rad()), prec);
}

std::pair<RealBall, RealBall> sin_cos(const RealBall& x, Precision prec) {
  if (!x.is_finite() || wide_for_trig(x)) return {unit_ball(), unit_ball()};
  Float s(prec.bits()), c(prec.bits());
  int t = mpfr_sin_cos(s.get(), c.get(), x.mid(), MPFR_RNDN);
  int ts = t & 3;
  int tc = t >> 2;
  return {clamp_unit(rounded(std::move(s), ts, x.rad()), prec),
          clamp_unit(rounded(std::move(c), tc, x.rad()), prec)};
}

RealBall sinh(const RealBall& x, Precision prec) { return monotone_increasing(x, prec, mpfr_sinh); }

RealBall cosh(const RealBall& x, Precision prec) {
  if (!x.is_finite()) return RealBall::indeterminate();
  if (x.is_exact()) return point_eval(x.mid(), prec, mpfr_cosh);
  Float lo = x.lower();
  Float hi = x.upper();
  if (mpfr_sgn(lo.get()) > 0) return increasing_on(lo.get(), hi.get(), prec, mpfr_cosh);
  mpfr_neg(lo.get(), lo.get(), MPFR_RNDN);
  if (mpfr_sgn(hi.get()) < 0) {
    mpfr_neg(hi.get(), hi.get(), MPFR_RNDN);
    return increasing_on(hi.get(), lo.get(), prec, mpfr_cosh);
  }
  // Ball straddles zero: range is [1, cosh(max |endpoint|)].
  mpfr_srcptr far = mpfr_cmp(lo.get(), hi.get()) > 0 ? lo.get() : hi.get();
  Float top(prec.bits());
  mpfr_cosh(top.get(), far, MPFR_RNDU);
  if (!mpfr_number_p(top.get())) return RealBall::indeterminate();
  Float one(2);
  mpfr_set_ui(one.get(), 1, MPFR_RNDN);
  return RealBall::from_interval(one.get(), top.get(), prec);
}

RealBall tanh(const RealBall& x, Precision prec) { return monotone_increasing(x, prec, mpfr_tanh); }

RealBall atan(const RealBall& x, Precision prec) { return monotone_increasing(x, prec, mpfr_atan); }

RealBall hull(const RealBall& x, const RealBall& y) {
  if (!x.is_finite() || !y.is_finite()) return RealBall::indeterminate();
  Float xl = x.lower(), xh = x.upper(), yl = y.lower(), yh = y.upper();
  mpfr_srcptr lo = mpfr_cmp(xl.get(), yl.get()) <= 0 ? xl.get() : yl.get();
  mpfr_srcptr hi = mpfr_cmp(xh.get(), yh.get()) >= 0 ? xh.get() : yh.get();
  long p = std::max<long>({x.mid_precision(), y.mid_precision(), 53});
  return RealBall::from_interval(lo, hi, Precision(p));
}

bool overlaps(const RealBall& x, const RealBall& y) {
  if (!x.is_finite() || !y.is_finite()) return true;
  Float xl = x.lower(), xh = x.upper(), yl = y.lower(), yh = y.upper();
  return mpfr_cmp(xl.get(), yh.get()) <= 0 && mpfr_cmp(yl.get(), xh.get()) <= 0;
}

bool contains(const RealBall& outer, const RealBall& inner) {
  if (!outer.is_finite()) return true;
  if (!inner.is_finite()) return false;
  Float ol = outer.lower(), oh = outer.upper(), il = inner.lower(), ih = inner.upper();
  return mpfr_cmp(ol.get(), il.get()) <= 0 && mpfr_cmp(ih.get(), oh.get()) <= 0;
}

bool contains(const RealBall& x, mpfr_srcptr point) {
  if (!x.is_finite()) return true;
  if (!mpfr_number_p(point)) return false;
  Float lo = x.lower(), hi = x.upper();
  return mpfr_cmp(lo.get(), point) <= 0 && mpfr_cmp(point, hi.get()) <= 0;
}

bool is_positive(const RealBall& x) {
  if (!x.is_finite() || mpfr_sgn(x.mid()) <= 0) return false;
  if (Mag::from_mpfr_lower(x.mid()) > x.rad()) return true;
  Float lo = x.lower();
  return mpfr_sgn(lo.get()) > 0;
}

bool is_negative(const RealBall& x) {
  if (!x.is_finite() || mpfr_sgn(x.mid()) >= 0) return false;
  if (Mag::from_mpfr_lower(x.mid()) > x.rad()) return true;
  Float hi = x.upper();
  return mpfr_sgn(hi.get()) < 0;
}

bool contains_zero(const RealBall& x) { return !is_positive(x) && !is_negative(x); }

Mag mag_upper(const RealBall& x) {
  if (!x.is_finite()) return Mag::inf();
  return Mag::from_mpfr(x.mid()) + x.rad();
}

Mag mag_lower(const RealBall& x) {
  if (!x.is_finite()) return {};
  return Mag::sub_lower(Mag::from_mpfr_lower(x.mid()), x.rad());
}

double midpoint(const RealBall& x) { return x.mid_double(); }

// ---------------------------------------------------------------------------
// Decimal formatting

namespace {

// Value = 0.<digits> * 10^e10.
std::string layout_decimal(const std::string& digits, long e10, bool negative) {
  std::string out = negative ? "-" : "";
  long n = static_cast<long>(digits.size());
  if (e10 > -5 && e10 <= 21) {
    if (e10 <= 0) {
      out += "0.";
      out.append(static_cast<size_t>(-e10), '0');
      out += digits;
    } else if (e10 >= n) {
      out += digits;
      out.append(static_cast<size_t>(e10 - n), '0');
    } else {
      out += digits.substr(0, static_cast<size_t>(e10));
      out += '.';
      out += digits.substr(static_cast<size_t>(e10));
    }
  } else {
    out += digits[0];
    if (n > 1) {
      out += '.';
      out += digits.substr(1);
    }
    out += 'e';
    out += std::to_string(e10 - 1);
  }
  return out;
}

std::string trim_zeros(std::string digits) {
  while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
  return digits;
}

}  // namespace

std::string to_string(const RealBall& x) {
  if (!x.is_finite()) return "nan";
  if (x.is_zero()) return "0";
  if (!x.rad().is_zero() && !(x.rad() < Mag::from_mpfr_lower(x.mid()))) {
    return "[+/- " + (Mag::from_mpfr(x.mid()) + x.rad()).to_string() + "]";
  }
  const double log10_2 = 0.30102999566398120;
  long max_digits = static_cast<long>(std::ceil(static_cast<double>(x.mid_precision()) * log10_2)) + 2;
  long digits = max_digits;
  if (!x.rad().is_zero()) {
    double lm = static_cast<double>(mpfr_get_exp(x.mid())) * log10_2;
    double lr = x.rad().log2_approx() * log10_2;
    digits = std::clamp<long>(static_cast<long>(std::floor(lm) - std::floor(lr)) + 1, 1, max_digits);
  }
  mpfr_exp_t e10 = 0;
  char* raw = mpfr_get_str(nullptr, &e10, 10, static_cast<size_t>(digits), x.mid(), MPFR_RNDN);
  std::string s(raw);
  mpfr_free_str(raw);
  bool negative = !s.empty() && s[0] == '-';
  if (negative) s.erase(0, 1);

  // Is the printed decimal exactly the midpoint?
  std::string sci = "0." + s + "e" + std::to_string(static_cast<long>(e10));
  Float back(x.mid_precision() + 4 * digits + 16);
  int t = mpfr_strtofr(back.get(), sci.c_str(), nullptr, 10, MPFR_RNDN);
  if (negative) mpfr_neg(back.get(), back.get(), MPFR_RNDN);
  bool exact = t == 0 && mpfr_equal_p(back.get(), x.mid());

  Mag total = x.rad();
  if (!exact) {
    Float ulp(64);
    mpfr_set_ui(ulp.get(), 10, MPFR_RNDN);
    mpfr_pow_si(ulp.get(), ulp.get(), static_cast<long>(e10) - digits, MPFR_RNDU);
    mpfr_div_2ui(ulp.get(), ulp.get(), 1, MPFR_RNDU);
    total = total + Mag::from_mpfr(ulp.get());
  }
  if (total.is_zero()) return layout_decimal(trim_zeros(s), static_cast<long>(e10), negative);
  return "[" + layout_decimal(s, static_cast<long>(e10), negative) + " +/- " + total.to_string() + "]";
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void parse_error(std::string_view text) {
  throw std::invalid_argument("malformed ball: '" + std::string(text) + "'");
}

// Parses a full decimal number into `out` with rounding mode `rnd`.
int parse_number(std::string_view text, mpfr_ptr out, mpfr_rnd_t rnd) {
  std::string s(trim(text));
  if (s.empty()) parse_error(text);
  char* end = nullptr;
  int t = mpfr_strtofr(out, s.c_str(), &end, 10, rnd);
  if (end != s.c_str() + s.size() || !mpfr_number_p(out)) parse_error(text);
  return t;
}

}  // namespace

RealBall parse_real_ball(std::string_view text, Precision prec) {
  std::string_view s = trim(text);
  if (s == "nan") return RealBall::indeterminate();
  if (s.empty()) parse_error(text);
  if (s.front() != '[') {
    Float m(prec.bits());
    int t = parse_number(s, m.get(), MPFR_RNDN);
    return rounded(std::move(m), t, {});
  }
  if (s.back() != ']') parse_error(text);
  s = s.substr(1, s.size() - 2);
  size_t pm = s.find("+/-");
  if (pm == std::string_view::npos) parse_error(text);
  std::string_view mid_text = trim(s.substr(0, pm));
  std::string_view rad_text = trim(s.substr(pm + 3));

  Float r(64);
  parse_number(rad_text, r.get(), MPFR_RNDU);
  if (mpfr_sgn(r.get()) < 0) parse_error(text);
  Mag rad = Mag::from_mpfr(r.get());

  Float m(prec.bits());
  int t = 0;
  if (!mid_text.empty()) t = parse_number(mid_text, m.get(), MPFR_RNDN);
  return rounded(std::move(m), t, rad);
}

}  // namespace ballquad
