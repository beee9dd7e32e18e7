#include "ballquad/gauss_legendre.hpp"

#include <bit>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ballquad {

using detail::Float;

std::vector<long> allowed_degrees(long n_max) {
  std::vector<long> out;
  for (long t = 1; t <= n_max;) {
    out.push_back(t);
    // ceil(t sqrt 2) = isqrt(2 t^2) + 1, since 2 t^2 is never a square.
    auto s = static_cast<long>(std::sqrt(2.0 * static_cast<double>(t) * static_cast<double>(t)));
    while (s * s > 2 * t * t) --s;
    while ((s + 1) * (s + 1) <= 2 * t * t) ++s;
    t = s + 1;
  }
  return out;
}

long next_allowed_degree(long n) {
  long t = 1;
  while (t < n) {
    auto s = static_cast<long>(std::sqrt(2.0 * static_cast<double>(t) * static_cast<double>(t)));
    while (s * s > 2 * t * t) --s;
    while ((s + 1) * (s + 1) <= 2 * t * t) ++s;
    t = s + 1;
  }
  return t;
}

LegendreValue legendre_eval(long n, const RealBall& x, Precision prec) {
  if (n == 0) return {RealBall(1L), RealBall()};
  RealBall p0(1L), p1 = x;
  RealBall d0, d1(1L);
  for (long k = 1; k < n; ++k) {
    RealBall t = sub(mul(mul_si(x, 2 * k + 1, prec), p1, prec), mul_si(p0, k, prec), prec);
    RealBall p2 = div_si(t, k + 1, prec);
    RealBall d2 = add(d0, mul_si(p1, 2 * k + 1, prec), prec);
    p0 = std::move(p1);
    p1 = std::move(p2);
    d0 = std::move(d1);
    d1 = std::move(d2);
  }
  return {std::move(p1), std::move(d1)};
}

namespace {

// Upper bound for max |P_n''| on [-1, 1], attained at x = 1.
RealBall second_derivative_bound(long n) {
  RealBall b(n - 1);
  Precision p(256);
  b = mul_si(b, n, p);
  b = mul_si(b, n + 1, p);
  b = mul_si(b, n + 2, p);
  return mul_2exp(b, -3);
}

// P_n'(X) for X = [m +/- r] given P_n'(m), by the mean value theorem.
RealBall derivative_over(const RealBall& dp_mid, const RealBall& x, long n) {
  RealBall out = dp_mid;
  out.add_error(mag_upper(second_derivative_bound(n)) * x.rad());
  return out;
}

bool inside_unit_interval(const RealBall& x) {
  RealBall one(1L);
  Precision p(64);
  return is_positive(sub(one, x, p)) && is_positive(add(one, x, p));
}

bool contracts(const RealBall& x, const LegendreValue& at_mid, long n, Precision work) {
  if (!inside_unit_interval(x)) return false;
  RealBall dpx = derivative_over(at_mid.dp, x, n);
  RealBall m(x.mid(), Mag{});
  RealBall nx = sub(m, div(at_mid.p, dpx, work), work);
  return nx.is_finite() && contains(x, nx);
}

double legendre_double(long n, double x, double* dp) {
  double p0 = 1.0, p1 = x;
  for (long k = 1; k < n; ++k) {
    double p2 = ((2.0 * k + 1.0) * x * p1 - static_cast<double>(k) * p0) / (k + 1.0);
    p0 = p1;
    p1 = p2;
  }
  *dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
  return p1;
}

// One Newton step x <- x - P_n(x) / P_n'(x) in floating point at the
// precision of x.
void newton_step(long n, mpfr_ptr x) {
  mpfr_prec_t prec = mpfr_get_prec(x) + 16;
  Float p0(prec), p1(x, prec), p2(prec), t(prec);
  mpfr_set_ui(p0.get(), 1, MPFR_RNDN);
  for (long k = 1; k < n; ++k) {
    mpfr_mul(t.get(), x, p1.get(), MPFR_RNDN);
    mpfr_mul_ui(t.get(), t.get(), 2 * k + 1, MPFR_RNDN);
    mpfr_mul_ui(p2.get(), p0.get(), k, MPFR_RNDN);
    mpfr_sub(t.get(), t.get(), p2.get(), MPFR_RNDN);
    mpfr_div_ui(t.get(), t.get(), k + 1, MPFR_RNDN);
    std::swap(p0, p1);
    std::swap(p1, t);
  }
  // P_n' = n (x P_n - P_{n-1}) / (x^2 - 1)
  Float dp(prec), den(prec);
  mpfr_mul(dp.get(), x, p1.get(), MPFR_RNDN);
  mpfr_sub(dp.get(), dp.get(), p0.get(), MPFR_RNDN);
  mpfr_mul_ui(dp.get(), dp.get(), n, MPFR_RNDN);
  mpfr_sqr(den.get(), x, MPFR_RNDN);
  mpfr_sub_ui(den.get(), den.get(), 1, MPFR_RNDN);
  mpfr_div(dp.get(), dp.get(), den.get(), MPFR_RNDN);
  mpfr_div(t.get(), p1.get(), dp.get(), MPFR_RNDN);
  mpfr_sub(x, x, t.get(), MPFR_RNDN);
}

double initial_root(long n, long i) {
  const double nn = static_cast<double>(n);
  double theta = std::numbers::pi * (static_cast<double>(i) + 0.75) / (nn + 0.5);
  double x = (1.0 - (nn - 1.0) / (8.0 * nn * nn * nn)) * std::cos(theta);
  for (int it = 0; it < 100; ++it) {
    double dp = 0.0;
    double p = legendre_double(n, x, &dp);
    double dx = p / dp;
    x -= dx;
    if (std::fabs(dx) < 1e-16) break;
  }
  return x;
}

RealBall round_to(const RealBall& x, Precision prec) { return add(x, RealBall(), prec); }

struct CertifiedRoot {
  RealBall node;
  RealBall weight;
};

RealBall weight_from(const RealBall& x, const RealBall& dpx, Precision work) {
  RealBall one(1L);
  RealBall s = mul(sub(one, x, work), add(one, x, work), work);
  return div(RealBall(2L), mul(s, sqr(dpx, work), work), work);
}

CertifiedRoot certify_root(long n, long i, long wp, QuadratureRule& stats_sink) {
  // Rounding errors in the ball recurrence can grow like (1 + sqrt 2)^n, so
  // the certification runs with that many extra bits.
  long bits_n = std::bit_width(static_cast<unsigned long>(n));
  long q = wp + static_cast<long>(std::ceil(1.2720 * static_cast<double>(n))) + 4 * bits_n + 16;
  double x0 = initial_root(n, i);
  for (int bump = 0; bump < 6; ++bump, q += 32) {
    Precision work(q);
    Float x(q);
    mpfr_set_d(x.get(), x0, MPFR_RNDN);
    for (long cur = 53; cur < q;) {
      cur = std::min(2 * cur, q);
      Float xc(x.get(), cur);
      newton_step(n, xc.get());
      mpfr_set(x.get(), xc.get(), MPFR_RNDN);
      ++stats_sink.newton_steps;
    }
    newton_step(n, x.get());
    ++stats_sink.newton_steps;

    RealBall mid(x.get(), Mag{});
    LegendreValue at_mid = legendre_eval(n, mid, work);
    Mag residual = mag_upper(at_mid.p) / Mag::from_mpfr_lower(at_mid.dp.mid());
    Mag eps = residual.mul_2exp(1) + Mag::pow2(-q + 2);
    for (int attempt = 0; attempt < 3; ++attempt, eps = eps.mul_2exp(8)) {
      RealBall xb(x.get(), eps);
      ++stats_sink.certifications;
      if (!contracts(xb, at_mid, n, work)) continue;
      RealBall w = weight_from(xb, derivative_over(at_mid.dp, xb, n), work);
      if (!w.is_finite() || !is_positive(w)) continue;
      return {round_to(xb, Precision(wp)), round_to(w, Precision(wp))};
    }
  }
  throw std::runtime_error("Gauss-Legendre node certification failed for degree " +
                           std::to_string(n));
}

}  // namespace

bool newton_contracts(long n, const RealBall& x, Precision work) {
  if (n < 1 || !x.is_finite()) return false;
  RealBall mid(x.mid(), Mag{});
  return contracts(x, legendre_eval(n, mid, work), n, work);
}

QuadratureRule::QuadratureRule(long degree, long precision, std::vector<RealBall> nodes,
                               std::vector<RealBall> weights)
    : degree_(degree),
      precision_(precision),
      half_nodes_(std::move(nodes)),
      half_weights_(std::move(weights)) {}

RealBall QuadratureRule::node(std::size_t k) const {
  std::size_t h = static_cast<std::size_t>(degree_ / 2);
  if (k < h) return neg(half_nodes_[half_nodes_.size() - 1 - k]);
  return half_nodes_[k - h];
}

RealBall QuadratureRule::weight(std::size_t k) const {
  std::size_t h = static_cast<std::size_t>(degree_ / 2);
  if (k < h) return half_weights_[half_weights_.size() - 1 - k];
  return half_weights_[k - h];
}

QuadratureRule compute_rule(long n, Precision prec) {
  if (n < 1) throw std::invalid_argument("quadrature degree must be positive");
  long wp = prec.bits() + 16;
  long m = (n + 1) / 2;
  std::vector<RealBall> nodes(static_cast<std::size_t>(m));
  std::vector<RealBall> weights(static_cast<std::size_t>(m));
  QuadratureRule rule(n, prec.bits(), {}, {});
  for (long i = 0; i < m; ++i) {
    // Root i counts down from the largest; slot m-1-i keeps the stored half ascending.
    auto slot = static_cast<std::size_t>(m - 1 - i);
    if (n % 2 == 1 && i == m - 1) {
      long bits_n = std::bit_width(static_cast<unsigned long>(n));
      Precision work(wp + static_cast<long>(std::ceil(1.2720 * static_cast<double>(n))) +
                     4 * bits_n + 16);
      LegendreValue v = legendre_eval(n, RealBall(), work);
      nodes[slot] = RealBall();
      weights[slot] = round_to(div(RealBall(2L), sqr(v.dp, work), work), Precision(wp));
      continue;
    }
    CertifiedRoot r = certify_root(n, i, wp, rule);
    nodes[slot] = std::move(r.node);
    weights[slot] = std::move(r.weight);
  }
  QuadratureRule out(n, prec.bits(), std::move(nodes), std::move(weights));
  out.newton_steps = rule.newton_steps;
  out.certifications = rule.certifications;
  return out;
}

std::shared_ptr<const QuadratureRule> RuleCache::get(long n, Precision prec) {
  {
    std::shared_lock lock(mutex_);
    auto it = rules_.find(n);
    if (it != rules_.end() && it->second->precision() >= prec.bits()) {
      ++hits_;
      return it->second;
    }
  }
  ++misses_;
  auto rule = std::make_shared<const QuadratureRule>(compute_rule(n, prec));
  newton_steps_ += rule->newton_steps;
  certifications_ += rule->certifications;
  std::unique_lock lock(mutex_);
  auto& slot = rules_[n];
  if (!slot || slot->precision() < rule->precision()) slot = rule;
  return rule;
}

RuleCache::Stats RuleCache::stats() const {
  return {hits_.load(), misses_.load(), newton_steps_.load(), certifications_.load()};
}

void RuleCache::clear() {
  std::unique_lock lock(mutex_);
  rules_.clear();
  hits_ = 0;
  misses_ = 0;
  newton_steps_ = 0;
  certifications_ = 0;
}

std::size_t RuleCache::size() const {
  std::shared_lock lock(mutex_);
  return rules_.size();
}

RuleCache& default_rule_cache() {
  static RuleCache cache;
  return cache;
}

}  // namespace ballquad
