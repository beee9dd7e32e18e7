#pragma once

#include <mpfr.h>

#include <random>
#include <string>

#include "ballquad/ballquad.hpp"

namespace testing {

using ballquad::ComplexBox;
using ballquad::Mag;
using ballquad::Precision;
using ballquad::RealBall;
using ballquad::detail::Float;

// Reference points are computed with plain MPFR at this precision.
constexpr mpfr_prec_t kOraclePrec = 1024;

inline Float oracle() { return Float(kOraclePrec); }

inline RealBall ball(double mid, double rad) {
  Float m(53);
  mpfr_set_d(m.get(), mid, MPFR_RNDN);
  return RealBall(std::move(m), Mag::from_double(rad));
}

inline RealBall exact(const Float& x) { return RealBall(x.get(), Mag{}); }

inline Float from_string(const char* s, mpfr_prec_t prec = kOraclePrec) {
  Float x(prec);
  mpfr_set_str(x.get(), s, 10, MPFR_RNDN);
  return x;
}

// A point of x, as an exact high-precision number. u in [-1, 1].
inline Float point_in(const RealBall& x, double u) {
  Float p(4096);
  Float r(64);
  x.rad().to_mpfr(r.get());
  mpfr_mul_d(r.get(), r.get(), u, MPFR_RNDZ);
  mpfr_add(p.get(), x.mid(), r.get(), MPFR_RNDN);
  return p;
}

inline bool contains_point(const RealBall& x, const Float& v) { return ballquad::contains(x, v.get()); }

struct ComplexPoint {
  Float re{kOraclePrec};
  Float im{kOraclePrec};
};

inline bool contains_point(const ComplexBox& z, const ComplexPoint& v) {
  if (!z.is_finite()) return true;
  return ballquad::contains(z.re(), v.re.get()) && ballquad::contains(z.im(), v.im.get());
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  double unit() { return uniform(-1.0, 1.0); }
  // Midpoint with a spread of magnitudes and a radius that is sometimes zero.
  RealBall random_ball(double scale = 4.0) {
    double mid = uniform(-scale, scale);
    double e = uniform(-30.0, 0.0);
    double rad = pick(5) == 0 ? 0.0 : std::exp2(e) * std::fabs(uniform(0.0, 1.0));
    return ball(mid, rad);
  }
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(gen_); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace testing
