#include "ballquad/mag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ballquad {
namespace {

constexpr std::int64_t kMaxExp = std::int64_t{1} << 60;
constexpr double kInf = std::numeric_limits<double>::infinity();

double up(double x) { return std::nextafter(x, kInf); }
double down(double x) { return std::nextafter(x, 0.0); }

// Error-free transformations: the sign of the residual tells whether the
// nearest-rounded result sits below or above the exact one.
double sum_residual(double a, double b, double s) {
  double bb = s - a;
  return (a - (s - bb)) + (b - bb);
}

}  // namespace

Mag Mag::inf() {
  Mag m;
  m.man_ = kInf;
  return m;
}

bool Mag::is_inf() const { return std::isinf(man_); }

Mag Mag::normalized(double man, std::int64_t exp, bool round_up) {
  Mag m;
  if (std::isnan(man) || std::isinf(man)) return inf();
  if (man == 0.0) return m;
  int e = 0;
  man = std::frexp(man, &e);
  exp += e;
  if (exp > kMaxExp) return round_up ? inf() : normalized(0.5, kMaxExp, false);
  if (exp < -kMaxExp) {
    if (!round_up) return m;
    man = 0.5;
    exp = -kMaxExp;
  }
  m.man_ = man;
  m.exp_ = exp;
  return m;
}

Mag Mag::from_double(double x) {
  if (std::isnan(x)) return inf();
  return normalized(std::fabs(x), 0, true);
}

Mag Mag::from_double_lower(double x) {
  if (std::isnan(x)) return Mag{};
  return normalized(std::fabs(x), 0, false);
}

Mag Mag::pow2(std::int64_t e) { return normalized(0.5, e + 1, true); }

Mag Mag::from_mpfr(mpfr_srcptr x) {
  if (mpfr_zero_p(x)) return Mag{};
  if (!mpfr_number_p(x)) return inf();
  long e = 0;
  double d = mpfr_get_d_2exp(&e, x, MPFR_RNDA);
  return normalized(std::fabs(d), e, true);
}

Mag Mag::from_mpfr_lower(mpfr_srcptr x) {
  if (mpfr_zero_p(x) || mpfr_nan_p(x)) return Mag{};
  if (mpfr_inf_p(x)) return normalized(0.5, kMaxExp, false);
  long e = 0;
  double d = mpfr_get_d_2exp(&e, x, MPFR_RNDZ);
  return normalized(std::fabs(d), e, false);
}

double Mag::to_double() const {
  if (is_inf() || exp_ > 1024) return kInf;
  if (man_ == 0.0) return 0.0;
  double r = std::ldexp(man_, static_cast<int>(std::max<std::int64_t>(exp_, -2000)));
  if (exp_ < -1021) r = up(r);
  return r;
}

void Mag::to_mpfr(mpfr_ptr out) const {
  if (is_inf()) {
    mpfr_set_inf(out, 1);
    return;
  }
  mpfr_set_d(out, man_, MPFR_RNDN);
  mpfr_mul_2si(out, out, exp_, MPFR_RNDN);
}

double Mag::log2_approx() const {
  if (is_inf()) return kInf;
  if (man_ == 0.0) return -kInf;
  return static_cast<double>(exp_) + std::log2(man_);
}

Mag Mag::mul_2exp(std::int64_t e) const {
  if (is_inf() || man_ == 0.0) return *this;
  return normalized(man_, exp_ + e, true);
}

Mag Mag::sqrt() const {
  if (is_inf() || man_ == 0.0) return *this;
  double m = man_;
  std::int64_t e = exp_;
  if (e % 2 != 0) {
    m *= 2.0;
    e -= 1;
  }
  double s = std::sqrt(m);
  if (std::fma(-s, s, m) > 0.0) s = up(s);
  return normalized(s, e / 2, true);
}

Mag Mag::sqrt_lower() const {
  if (is_inf() || man_ == 0.0) return *this;
  double m = man_;
  std::int64_t e = exp_;
  if (e % 2 != 0) {
    m *= 2.0;
    e -= 1;
  }
  double s = std::sqrt(m);
  if (std::fma(-s, s, m) < 0.0) s = down(s);
  return normalized(s, e / 2, false);
}

Mag operator+(const Mag& x, const Mag& y) {
  if (x.is_inf() || y.is_inf()) return Mag::inf();
  if (x.man_ == 0.0) return y;
  if (y.man_ == 0.0) return x;
  const Mag& a = x.exp_ >= y.exp_ ? x : y;
  const Mag& b = x.exp_ >= y.exp_ ? y : x;
  std::int64_t d = a.exp_ - b.exp_;
  double t = d > 60 ? 0x1p-60 : std::ldexp(b.man_, static_cast<int>(-d));
  double s = a.man_ + t;
  if (d > 60 || sum_residual(a.man_, t, s) > 0.0) s = up(s);
  return Mag::normalized(s, a.exp_, true);
}

Mag Mag::add_lower(const Mag& x, const Mag& y) {
  if (x.is_inf() || y.is_inf()) return Mag::inf();
  if (x.man_ == 0.0) return y;
  if (y.man_ == 0.0) return x;
  const Mag& a = x.exp_ >= y.exp_ ? x : y;
  const Mag& b = x.exp_ >= y.exp_ ? y : x;
  std::int64_t d = a.exp_ - b.exp_;
  if (d > 60) return a;
  double t = std::ldexp(b.man_, static_cast<int>(-d));
  double s = a.man_ + t;
  if (sum_residual(a.man_, t, s) < 0.0) s = down(s);
  return Mag::normalized(s, a.exp_, false);
}

Mag Mag::sub_lower(const Mag& a, const Mag& b) {
  if (b.man_ == 0.0) return a;
  if (a.is_inf()) return b.is_inf() ? Mag{} : a;
  if (!(b < a)) return Mag{};
  std::int64_t d = a.exp_ - b.exp_;
  double t = d > 60 ? 0x1p-60 : std::ldexp(b.man_, static_cast<int>(-d));
  double s = a.man_ - t;
  if (d > 60 || sum_residual(a.man_, -t, s) < 0.0) s = down(s);
  if (s <= 0.0) return Mag{};
  return Mag::normalized(s, a.exp_, false);
}

Mag operator*(const Mag& a, const Mag& b) {
  if (a.man_ == 0.0 || b.man_ == 0.0) return Mag{};
  if (a.is_inf() || b.is_inf()) return Mag::inf();
  double p = a.man_ * b.man_;
  if (std::fma(a.man_, b.man_, -p) > 0.0) p = up(p);
  return Mag::normalized(p, a.exp_ + b.exp_, true);
}

Mag Mag::mul_lower(const Mag& a, const Mag& b) {
  if (a.man_ == 0.0 || b.man_ == 0.0) return Mag{};
  if (a.is_inf() || b.is_inf()) return Mag::inf();
  double p = a.man_ * b.man_;
  if (std::fma(a.man_, b.man_, -p) < 0.0) p = down(p);
  return Mag::normalized(p, a.exp_ + b.exp_, false);
}

Mag operator/(const Mag& a, const Mag& b) {
  if (a.man_ == 0.0) return Mag{};
  if (b.man_ == 0.0 || a.is_inf()) return Mag::inf();
  if (b.is_inf()) return Mag{};
  double q = a.man_ / b.man_;
  if (std::fma(-q, b.man_, a.man_) > 0.0) q = up(q);
  return Mag::normalized(q, a.exp_ - b.exp_, true);
}

Mag Mag::div_lower(const Mag& a, const Mag& b) {
  if (a.man_ == 0.0 || b.is_inf()) return Mag{};
  if (b.man_ == 0.0 || a.is_inf()) return Mag::inf();
  double q = a.man_ / b.man_;
  if (std::fma(-q, b.man_, a.man_) < 0.0) q = down(q);
  return Mag::normalized(q, a.exp_ - b.exp_, false);
}

std::partial_ordering operator<=>(const Mag& a, const Mag& b) {
  if (a.is_inf() || b.is_inf()) {
    if (a.is_inf() && b.is_inf()) return std::partial_ordering::equivalent;
    return a.is_inf() ? std::partial_ordering::greater : std::partial_ordering::less;
  }
  if (a.man_ == 0.0 || b.man_ == 0.0) return a.man_ <=> b.man_;
  if (a.exp_ != b.exp_) return a.exp_ <=> b.exp_;
  return a.man_ <=> b.man_;
}

std::string Mag::to_string() const {
  if (is_inf()) return "inf";
  if (man_ == 0.0) return "0";
  mpfr_t x;
  mpfr_init2(x, 64);
  to_mpfr(x);
  mpfr_exp_t e = 0;
  char* digits = mpfr_get_str(nullptr, &e, 10, 3, x, MPFR_RNDU);
  std::string d(digits);
  mpfr_free_str(digits);
  mpfr_clear(x);
  std::string out;
  out += d[0];
  out += '.';
  out += d.substr(1);
  out += 'e';
  out += std::to_string(static_cast<long>(e) - 1);
  return out;
}

}  // namespace ballquad
