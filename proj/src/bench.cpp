#include "ballquad/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "ballquad/piecewise.hpp"

namespace ballquad::bench {

using detail::Float;

namespace {

ComplexBox one() { return ComplexBox(1L); }
ComplexBox real(RealBall x) { return ComplexBox(std::move(x)); }

ComplexBox pair(long a, long b) { return {RealBall(a), RealBall(b)}; }

// 1 / (1 + z^2)
ComplexBox rational_arctan(const ComplexBox& z, Precision p) {
  return inv(add(one(), sqr(z, p), p), p);
}

ComplexBox spikes(const ComplexBox& z, Precision p) {
  ComplexBox sum;
  long scale = 1;
  for (long k = 1; k <= 3; ++k) {
    scale *= 10;
    ComplexBox shift(div_si(RealBall(k), 5, p));
    ComplexBox w = mul(sub(z, shift, p), RealBall(scale), p);
    sum = add(sum, pow_ui(sech(w, p), static_cast<unsigned long>(2 * k), p), p);
  }
  return sum;
}

// Helfgott's polynomial x^4 + 10x^3 + 19x^2 - 6x - 6, Horner form.
template <typename T, typename Add, typename Mul>
T helfgott(const T& x, Add add_c, Mul mul_x) {
  T r = add_c(x, 10);
  r = add_c(mul_x(r, x), 19);
  r = add_c(mul_x(r, x), -6);
  r = add_c(mul_x(r, x), -6);
  return r;
}

ComplexBox helfgott_box(const ComplexBox& z, Precision p) {
  return helfgott<ComplexBox>(
      z, [p](const ComplexBox& a, long c) { return add(a, ComplexBox(c), p); },
      [p](const ComplexBox& a, const ComplexBox& b) { return mul(a, b, p); });
}

RealBall helfgott_real(const RealBall& x, Precision p) {
  return helfgott<RealBall>(
      x, [p](const RealBall& a, long c) { return add(a, RealBall(c), p); },
      [p](const RealBall& a, const RealBall& b) { return mul(a, b, p); });
}

ComplexBox sawtooth_times_max(const ComplexBox& z, bool d, Precision p) {
  ComplexBox u = sub(sub(z, floor_ext(z, d), p), ComplexBox(RealBall::pow2(-1)), p);
  ComplexBox v = max_ext(sin(z, p), cos(z, p), d, p);
  return mul(u, v, p);
}

ComplexBox scaled_oscillation(const ComplexBox& z, long shift, Precision p) {
  ComplexBox e = exp(add(z, ComplexBox(shift), p), p);
  return mul(e, sin(mul(z, RealBall(10L), p), p), p);
}

long sech_cutoff(long p) {
  return static_cast<long>(std::ceil(static_cast<double>(p + 2) * std::numbers::ln2));
}

// Smallest N with exp(-N^2) / (2N) < 2^-p.
long gaussian_cutoff(long p) {
  const double target = -static_cast<double>(p) * std::numbers::ln2;
  long n = 1;
  while (-static_cast<double>(n * n) - std::log(2.0 * static_cast<double>(n)) >= target) ++n;
  return n;
}

RealBall pi_over(long q, Precision w) { return div_si(const_pi(w), q, w); }

// int_0^z exp(-t^2) dt by its Taylor series, with a rigorous tail bound.
ComplexBox gaussian_integral(const ComplexBox& z, Precision w) {
  Mag z2 = magnitude_interval(z).upper;
  z2 = z2 * z2;
  long extra = static_cast<long>(std::ceil(z2.to_double() * 1.4426950408889634)) + 32;
  Precision q(w.bits() + extra);
  ComplexBox minus_z2 = neg(sqr(z, q));
  ComplexBox term = z;
  ComplexBox sum = z;
  const Mag eps = Mag::pow2(-q.bits());
  for (long k = 1;; ++k) {
    term = mul(term, minus_z2, q);
    term = mul(term, div_si(RealBall(1L), k, q), q);
    sum = add(sum, mul(term, div_si(RealBall(1L), 2 * k + 1, q), q), q);
    Mag t = magnitude_interval(term).upper;
    // Once |z|^2 / (k + 1) <= 1/2 the remaining terms are bounded by |t_k|.
    if (Mag::from_double(static_cast<double>(k + 1)) >= z2.mul_2exp(1) && t <= eps) {
      sum.re().add_error(t);
      sum.im().add_error(t);
      return sum;
    }
  }
}

// Root of Helfgott's polynomial in (0, 1) by bisection on dyadic points.
RealBall helfgott_root(Precision w) {
  Float lo(w.bits() + 8), hi(w.bits() + 8), mid(w.bits() + 8);
  mpfr_set_ui(lo.get(), 0, MPFR_RNDN);
  mpfr_set_ui(hi.get(), 1, MPFR_RNDN);
  for (long i = 0; i < w.bits() + 4; ++i) {
    mpfr_add(mid.get(), lo.get(), hi.get(), MPFR_RNDN);
    mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
    RealBall v = helfgott_real(RealBall(mid.get(), Mag{}), Precision(w.bits() + 16));
    if (is_negative(v)) {
      mpfr_set(lo.get(), mid.get(), MPFR_RNDN);
    } else if (is_positive(v)) {
      mpfr_set(hi.get(), mid.get(), MPFR_RNDN);
    } else {
      break;
    }
  }
  return RealBall::from_interval(lo.get(), hi.get(), w);
}

ComplexBox ref_helfgott(Precision w) {
  // Q(x) = x^4 + 6x^3 + x^2 - 8x + 2 satisfies Q + Q' = p, so
  // int |p| e^x = Q(0) + Q(1) e - 2 Q(r) e^r.
  RealBall r = helfgott_root(w);
  RealBall q = add(r, RealBall(6L), w);
  q = add(mul(q, r, w), RealBall(1L), w);
  q = add(mul(q, r, w), RealBall(-8L), w);
  q = add(mul(q, r, w), RealBall(2L), w);
  RealBall e = exp(RealBall(1L), w);
  RealBall v = add(RealBall(2L), mul_2exp(e, 1), w);
  v = sub(v, mul_2exp(mul(q, exp(r, w), w), 1), w);
  return real(v);
}

ComplexBox ref_branch_sqrt(Precision w) {
  auto F = [w](const ComplexBox& z) { return mul(z, sqrt(z, w), w); };
  ComplexBox s = sub(F(pair(-1, 1)), F(pair(-1, -1)), w);
  s = add(s, pair(0, 2), w);
  return mul(s, div_si(RealBall(2L), 3, w), w);
}

ComplexBox ref_sawtooth(Precision w) {
  std::vector<RealBall> cuts;
  for (long k = 1; k <= 9; ++k) cuts.emplace_back(k);
  for (long k : {1L, 5L, 9L}) cuts.push_back(mul_si(pi_over(4, w), k, w));
  std::sort(cuts.begin(), cuts.end(),
            [](const RealBall& x, const RealBall& y) { return x.mid_double() < y.mid_double(); });
  cuts.insert(cuts.begin(), RealBall(0L));
  cuts.emplace_back(10L);

  RealBall total;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double xm = 0.5 * (cuts[i].mid_double() + cuts[i + 1].mid_double());
    RealBall c = add(RealBall(static_cast<long>(std::floor(xm))), RealBall::pow2(-1), w);
    bool use_sin = std::sin(xm) > std::cos(xm);
    auto antiderivative = [&](const RealBall& x) {
      RealBall t = sub(x, c, w);
      auto [s, co] = sin_cos(x, w);
      if (use_sin) return add(neg(mul(t, co, w)), s, w);
      return add(mul(t, s, w), co, w);
    };
    total = add(total, sub(antiderivative(cuts[i + 1]), antiderivative(cuts[i]), w), w);
  }
  return real(total);
}

ComplexBox ref_scaled_oscillation(long shift, Precision w) {
  // int_0^1 e^x sin(10x) dx = (e (sin 10 - 10 cos 10) + 10) / 101
  auto [s, c] = sin_cos(RealBall(10L), w);
  RealBall v = mul(exp(RealBall(1L), w), sub(s, mul_si(c, 10, w), w), w);
  v = div_si(add(v, RealBall(10L), w), 101, w);
  return real(mul(v, exp(RealBall(shift), w), w));
}

ComplexBox ref_spikes(Precision w) {
  // int sech^2 = T, sech^4 = T - T^3/3, sech^6 = T - 2T^3/3 + T^5/5 with T = tanh.
  auto G = [w](long k, const RealBall& x) {
    RealBall t = tanh(x, w);
    RealBall t3 = pow_ui(t, 3, w);
    if (k == 1) return t;
    if (k == 2) return sub(t, div_si(t3, 3, w), w);
    RealBall r = sub(t, div_si(mul_si(t3, 2, w), 3, w), w);
    return add(r, div_si(pow_ui(t, 5, w), 5, w), w);
  };
  RealBall total;
  long scale = 1;
  for (long k = 1; k <= 3; ++k) {
    scale *= 10;
    RealBall c = div_si(RealBall(k), 5, w);
    RealBall lo = mul_si(neg(c), scale, w);
    RealBall hi = mul_si(sub(RealBall(1L), c, w), scale, w);
    total = add(total, div_si(sub(G(k, hi), G(k, lo), w), scale, w), w);
  }
  return real(total);
}

ComplexBox ref_log_ratio(long p, Precision w) {
  // int_eps^1 log x / (1+x) dx = -pi^2/12 - log(eps) log(1+eps) - Li2(-eps)
  RealBall eps = RealBall::pow2(-p);
  RealBall li2;
  long terms = w.bits() / p + 2;
  RealBall power(1L);
  for (long k = 1; k <= terms; ++k) {
    power = mul(power, neg(eps), w);
    li2 = add(li2, div_si(power, k * k, w), w);
  }
  li2.add_error(Mag::pow2(-p * (terms + 1)));
  RealBall pi2 = sqr(const_pi(w), w);
  RealBall v = neg(div_si(pi2, 12, w));
  v = sub(v, mul(log(eps, w), log(add(RealBall(1L), eps, w), w), w), w);
  return real(sub(v, li2, w));
}

ComplexBox ref_gaussian(long p, Precision w) {
  long n = gaussian_cutoff(p);
  ComplexBox upper(RealBall(n), neg(RealBall::pow2(-1)));
  ComplexBox lower(RealBall(), RealBall::pow2(-1));
  ComplexBox s = add(gaussian_integral(upper, w), gaussian_integral(lower, w), w);
  return mul(s, exp(neg(RealBall::pow2(-2)), w), w);
}

const char* kRumpBall =
    "[0.34740017265724780787951215911989312465745625486618018388549271361674821398878532052968510434660"
    " +/- 5.97e-96]";

std::vector<BenchCase> build_cases() {
  std::vector<BenchCase> v;
  auto unit = [](long) { return std::pair{ComplexBox(0L), ComplexBox(1L)}; };

  v.push_back({"I0", "1/(1+x^2) on [0,1]",
               [](const ComplexBox& z, bool, Precision p) { return rational_arctan(z, p); }, unit,
               [](long p) { return real(pi_over(4, Precision(reference_precision(p)))); },
               Check::Contains, "pi/4", nullptr});
  v.push_back({"I1", "sum_k sech^(2k)(10^k (x - k/5)) on [0,1]",
               [](const ComplexBox& z, bool, Precision p) { return spikes(z, p); }, unit,
               [](long p) { return ref_spikes(Precision(reference_precision(p))); },
               Check::Contains, "tanh antiderivatives", nullptr});
  v.push_back({"I2", "x sin x / (1 + cos^2 x) on [0,pi]",
               [](const ComplexBox& z, bool, Precision p) {
                 ComplexBox c = cos(z, p);
                 return div(mul(z, sin(z, p), p), add(one(), sqr(c, p), p), p);
               },
               [](long p) { return std::pair{ComplexBox(0L), real(const_pi(Precision(p)))}; },
               [](long p) {
                 Precision w(reference_precision(p));
                 return real(div_si(sqr(const_pi(w), w), 4, w));
               },
               Check::Contains, "pi^2/4", nullptr});
  v.push_back({"I4", "sin x on [0,100]",
               [](const ComplexBox& z, bool, Precision p) { return sin(z, p); },
               [](long) { return std::pair{ComplexBox(0L), ComplexBox(100L)}; },
               [](long p) {
                 Precision w(reference_precision(p));
                 return real(sub(RealBall(1L), cos(RealBall(100L), w), w));
               },
               Check::Contains, "1 - cos 100", nullptr});
  v.push_back({"I5", "sin(x + e^x) on [0,8]",
               [](const ComplexBox& z, bool, Precision p) { return sin(add(z, exp(z, p), p), p); },
               [](long) { return std::pair{ComplexBox(0L), ComplexBox(8L)}; },
               [](long p) {
                 return real(parse_real_ball(kRumpBall, Precision(reference_precision(p))));
               },
               Check::Overlaps, "known 333-bit enclosure", nullptr});
  v.push_back({"E0", "sqrt(1 - x^2) on [0,1]",
               [](const ComplexBox& z, bool d, Precision p) {
                 return sqrt_analytic(sub(one(), sqr(z, p), p), d, p);
               },
               unit, [](long p) { return real(pi_over(4, Precision(reference_precision(p)))); },
               Check::Contains, "pi/4", nullptr});
  v.push_back({"E1", "1/(1+x^2) on [0,2^p]",
               [](const ComplexBox& z, bool, Precision p) { return rational_arctan(z, p); },
               [](long p) { return truncation("E1", p); },
               [](long p) {
                 Precision w(reference_precision(p));
                 return real(atan(RealBall::pow2(p), w));
               },
               Check::Contains, "atan(2^p)", nullptr});
  v.push_back({"E2", "log(x)/(1+x) on [2^-p,1]",
               [](const ComplexBox& z, bool d, Precision p) {
                 return div(log_analytic(z, d, p), add(one(), z, p), p);
               },
               [](long p) { return truncation("E2", p); },
               [](long p) { return ref_log_ratio(p, Precision(reference_precision(p))); },
               Check::Contains, "dilogarithm closed form of the truncated integral", nullptr});
  v.push_back({"E3", "sech x on [0,N], N = ceil((p+2) ln 2)",
               [](const ComplexBox& z, bool, Precision p) { return sech(z, p); },
               [](long p) { return truncation("E3", p); },
               [](long p) {
                 Precision w(reference_precision(p));
                 RealBall half = mul_2exp(RealBall(sech_cutoff(p)), -1);
                 return real(mul_2exp(atan(tanh(half, w), w), 1));
               },
               Check::Contains, "2 atan(tanh(N/2))", nullptr});
  v.push_back({"E4", "exp(-x^2 + i x) on [0,N], exp(-N^2)/(2N) < 2^-p",
               [](const ComplexBox& z, bool, Precision p) {
                 return exp(add(neg(sqr(z, p)), mul_i(z), p), p);
               },
               [](long p) { return truncation("E4", p); },
               [](long p) { return ref_gaussian(p, Precision(reference_precision(p))); },
               Check::Contains, "erf power series", nullptr});
  v.push_back({"D0", "|x^4 + 10x^3 + 19x^2 - 6x - 6| e^x on [0,1]",
               [](const ComplexBox& z, bool d, Precision p) {
                 return mul(abs_ext(helfgott_box(z, p), d), exp(z, p), p);
               },
               unit, [](long p) { return ref_helfgott(Precision(reference_precision(p))); },
               Check::Contains, "split at the root, exact antiderivative", nullptr});
  v.push_back({"D1", "ceil(x) on [0,100]",
               [](const ComplexBox& z, bool d, Precision) { return ceil_ext(z, d); },
               [](long) { return std::pair{ComplexBox(0L), ComplexBox(100L)}; },
               [](long) { return ComplexBox(5050L); }, Check::Contains, "5050", nullptr});
  v.push_back({"D2", "sqrt(x) on [-1-i,-1+i]",
               [](const ComplexBox& z, bool d, Precision p) { return sqrt_analytic(z, d, p); },
               [](long) { return std::pair{pair(-1, -1), pair(-1, 1)}; },
               [](long p) { return ref_branch_sqrt(Precision(reference_precision(p))); },
               Check::Contains, "split at the cut, (2/3) z^(3/2)", nullptr});
  v.push_back({"D3", "(x - floor x - 1/2) max(sin x, cos x) on [0,10]",
               [](const ComplexBox& z, bool d, Precision p) { return sawtooth_times_max(z, d, p); },
               [](long) { return std::pair{ComplexBox(0L), ComplexBox(10L)}; },
               [](long p) { return ref_sawtooth(Precision(reference_precision(p))); },
               Check::Contains, "split at kinks, exact antiderivatives",
               [](IntegrationOptions& o) {
                 long p = o.prec.bits();
                 o.eval_limit = 50 * (1000 * p + p * p);
               }});
  v.push_back({"X-neg", "exp(-1000 + x) sin(10x) on [0,1]",
               [](const ComplexBox& z, bool, Precision p) { return scaled_oscillation(z, -1000, p); },
               unit,
               [](long p) { return ref_scaled_oscillation(-1000, Precision(reference_precision(p))); },
               Check::Contains, "exact antiderivative",
               [](IntegrationOptions& o) {
                 Mag scale = mag_upper(exp(RealBall(-1000L), Precision(64)));
                 o.abs_tol = scale.mul_2exp(-o.prec.bits());
               }});
  v.push_back({"X-pos", "exp(1000 + x) sin(10x) on [0,1]",
               [](const ComplexBox& z, bool, Precision p) { return scaled_oscillation(z, 1000, p); },
               unit,
               [](long p) { return ref_scaled_oscillation(1000, Precision(reference_precision(p))); },
               Check::Contains, "exact antiderivative",
               [](IntegrationOptions& o) {
                 Mag scale = mag_upper(exp(RealBall(1000L), Precision(64)));
                 o.abs_tol = scale.mul_2exp(-o.prec.bits());
               }});
  return v;
}

}  // namespace

long reference_precision(long p) { return 2 * p + 64; }

const std::vector<BenchCase>& cases() {
  static const std::vector<BenchCase> all = build_cases();
  return all;
}

const BenchCase& find_case(const std::string& id) {
  for (const auto& c : cases()) {
    if (c.id == id) return c;
  }
  throw std::invalid_argument("unknown case id: " + id);
}

std::pair<ComplexBox, ComplexBox> truncation(const std::string& id, long p) {
  if (id == "E1") return {ComplexBox(0L), real(RealBall::pow2(p))};
  if (id == "E2") return {real(RealBall::pow2(-p)), ComplexBox(1L)};
  if (id == "E3") return {ComplexBox(0L), ComplexBox(sech_cutoff(p))};
  if (id == "E4") return {ComplexBox(0L), ComplexBox(gaussian_cutoff(p))};
  return find_case(id).path(p);
}

ComplexBox reference_value(const std::string& id, long p) { return find_case(id).reference(p); }

IntegrationOptions options_for(const BenchCase& c, long p, const Overrides& o) {
  IntegrationOptions opts;
  opts.prec = Precision(p);
  if (c.tune) c.tune(opts);
  if (o.abs_tol) opts.abs_tol = o.abs_tol;
  if (o.rel_tol) opts.rel_tol = o.rel_tol;
  if (o.deg_limit) opts.deg_limit = o.deg_limit;
  if (o.eval_limit) opts.eval_limit = o.eval_limit;
  if (o.depth_limit) opts.depth_limit = o.depth_limit;
  opts.use_heap = o.use_heap;
  return opts;
}

bool verify_result(const BenchCase& c, long p, const ComplexBox& value) {
  if (!value.is_finite()) return false;
  ComplexBox ref = c.reference(p);
  return c.check == Check::Contains ? contains(value, ref) : overlaps(value, ref);
}

BenchRow run_case(const BenchCase& c, long p, const Overrides& o, bool verify, RuleCache* cache) {
  IntegrationOptions opts = options_for(c, p, o);
  opts.cache = cache;
  auto [a, b] = c.path(p);
  BenchRow row;
  row.id = c.id;
  row.prec = p;
  auto start = std::chrono::steady_clock::now();
  row.result = integrate(c.f, a, b, opts);
  row.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  if (verify) row.verified = verify_result(c, p, row.result.value);
  return row;
}

std::string format_row(const BenchRow& row) {
  std::ostringstream out;
  out << row.id << "  p=" << row.prec << "  " << to_string(row.result.value)
      << "  rad=" << max_radius(row.result.value).to_string()
      << "  converged=" << (row.result.converged ? "yes" : "no")
      << "  evals=" << row.result.stats.evals << "  subs=" << row.result.stats.terminal_subintervals
      << "  time=" << row.ms << "ms";
  if (row.verified) out << "  check=" << (*row.verified ? "PASS" : "FAIL");
  return out.str();
}

}  // namespace ballquad::bench
