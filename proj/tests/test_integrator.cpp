#include <doctest.h>

#include <cmath>
#include <vector>

#include "support.hpp"

using namespace ballquad;
using namespace testing;

namespace {

Integrand polynomial(std::vector<double> c) {
  return [c](const ComplexBox& z, bool, Precision p) {
    ComplexBox s;
    for (auto it = c.rbegin(); it != c.rend(); ++it) s = add(mul(s, z, p), ComplexBox(*it, 0.0), p);
    return s;
  };
}

// Exact integral of the polynomial over the real segment [a, b].
Float polynomial_integral(const std::vector<double>& c, double a, double b) {
  Float total = oracle(), pa = oracle(), pb = oracle(), t = oracle();
  for (std::size_t k = 0; k < c.size(); ++k) {
    mpfr_set_d(pa.get(), a, MPFR_RNDN);
    mpfr_set_d(pb.get(), b, MPFR_RNDN);
    mpfr_pow_ui(pa.get(), pa.get(), k + 1, MPFR_RNDN);
    mpfr_pow_ui(pb.get(), pb.get(), k + 1, MPFR_RNDN);
    mpfr_sub(t.get(), pb.get(), pa.get(), MPFR_RNDN);
    mpfr_mul_d(t.get(), t.get(), c[k], MPFR_RNDN);
    mpfr_div_ui(t.get(), t.get(), k + 1, MPFR_RNDN);
    mpfr_add(total.get(), total.get(), t.get(), MPFR_RNDN);
  }
  return total;
}

const Integrand kRational = [](const ComplexBox& z, bool, Precision p) {
  return inv(add(ComplexBox(1L), sqr(z, p), p), p);
};

const Integrand kExp = [](const ComplexBox& z, bool, Precision p) { return exp(z, p); };

const Integrand kSin = [](const ComplexBox& z, bool, Precision p) { return sin(z, p); };

const Integrand kAbs = [](const ComplexBox& z, bool analytic, Precision) { return abs_ext(z, analytic); };

ComplexBox cball(double re, double im = 0.0) { return ComplexBox(re, im); }

IntegrationOptions at(long p) {
  IntegrationOptions o;
  o.prec = Precision(p);
  return o;
}

Float quarter_pi() {
  Float v = oracle();
  mpfr_const_pi(v.get(), MPFR_RNDN);
  mpfr_div_2ui(v.get(), v.get(), 2, MPFR_RNDN);
  return v;
}

}  // namespace

TEST_SUITE("integrator") {

TEST_CASE("rational integrand on [0, 1]") {
  IntegrationResult r = integrate(kRational, cball(0), cball(1), at(64));
  CHECK(r.converged);
  CHECK(contains_point(r.value.re(), quarter_pi()));
  CHECK(contains_zero(r.value.im()));
  CHECK(max_radius(r.value) <= Mag::pow2(-56));
  CHECK(r.stats.terminal_subintervals <= 8);
  CHECK(r.stats.evals >= 52 / 3);
  CHECK(r.stats.evals <= 52 * 3);
  CHECK(r.stats.forced_subintervals == 0);
  CHECK_FALSE(r.stats.rules_used.empty());
}

TEST_CASE("sin(x + exp x) on [0, 8] at 333 bits") {
  Integrand f = [](const ComplexBox& z, bool, Precision p) { return sin(add(z, exp(z, p), p), p); };
  IntegrationResult r = integrate(f, cball(0), cball(8), at(333));
  CHECK(r.converged);
  // The printed digits are a rounded midpoint; compare as balls.
  RealBall known = parse_real_ball(
      "[0.34740017265724780787951215911989312465745625486618018388549271361674821398878532052968510434660"
      " +/- 5.97e-96]",
      Precision(400));
  CHECK(overlaps(r.value.re(), known));
  RealBall digits = parse_real_ball(
      "[0.3474001726572478078795121591198931246574562548661801838854927136167482139887853205296851043466"
      " +/- 1e-94]",
      Precision(400));
  CHECK(overlaps(r.value.re(), digits));
  CHECK(r.value.re().rad().to_double() <= 1e-95);
}

TEST_CASE("scaled exponentials need a scaled absolute tolerance") {
  Integrand f = [](const ComplexBox& z, bool, Precision p) {
    return mul(exp(sub(z, ComplexBox(1000L), p), p), sin(mul(z, ComplexBox(10L), p), p), p);
  };
  IntegrationResult coarse = integrate(f, cball(0), cball(1), at(64));
  CHECK(contains_zero(coarse.value.re()));
  CHECK(coarse.value.re().rad().to_double() <= 1e-19);

  IntegrationOptions o = at(64);
  RealBall scale = mul_2exp(exp(RealBall(-1000L), Precision(64)), -64);
  o.abs_tol = Mag::from_mpfr_lower(scale.mid());
  IntegrationResult fine = integrate(f, cball(0), cball(1), o);
  CHECK(fine.converged);
  CHECK(overlaps(fine.value.re(), parse_real_ball("[1.574528586972758e-435 +/- 7.27e-451]", Precision(64))));
  CHECK(fine.stats.evals > coarse.stats.evals);
}

TEST_CASE("empty segment") {
  IntegrationResult r = integrate(kExp, cball(0.25), cball(0.25), at(64));
  CHECK(r.value.is_exact());
  CHECK(r.value.re().is_zero());
  CHECK(r.value.im().is_zero());
  CHECK(r.stats.evals == 0);
}

TEST_CASE("direct enclosure") {
  Precision p(64);
  Integrand one = [](const ComplexBox&, bool, Precision) { return ComplexBox(1L); };
  ComplexBox c = direct_enclosure(one, cball(0), cball(1), p);
  CHECK(c.is_exact());
  CHECK(contains_point(c.re(), from_string("1")));

  Integrand id = [](const ComplexBox& z, bool, Precision) { return z; };
  ComplexBox x = direct_enclosure(id, cball(0), cball(1), p);
  CHECK(contains_point(x.re(), from_string("0")));
  CHECK(contains_point(x.re(), from_string("1")));
  CHECK(contains_point(x.re(), from_string("0.5")));

  Integrand recip = [](const ComplexBox& z, bool, Precision p) { return inv(z, p); };
  CHECK_FALSE(direct_enclosure(recip, cball(-1), cball(1), p).is_finite());
}

TEST_CASE("ellipse search around a pole") {
  Precision p(64);
  RuleCache cache;
  long evals = 0;
  Integrand recip = [](const ComplexBox& z, bool, Precision p) { return inv(z, p); };
  auto g = try_gauss(recip, cball(1), cball(2), Mag::pow2(-64), p, 92, cache, evals);
  REQUIRE(g.has_value());
  Float ln2 = oracle();
  mpfr_const_log2(ln2.get(), MPFR_RNDN);
  CHECK(contains_point(g->value.re(), ln2));
  CHECK(g->ellipse.rho > 1.0);
  // The ellipse must stay clear of the pole at 0: X < 3 after scaling by 1/2.
  CHECK(g->ellipse.X.to_double() < 3.0);
  CHECK(evals > g->degree);

  evals = 0;
  auto h = try_gauss(kRational, cball(0), cball(1), Mag::pow2(-64), p, 92, cache, evals);
  REQUIRE(h.has_value());
  CHECK(contains_point(h->value.re(), quarter_pi()));

  evals = 0;
  CHECK_FALSE(try_gauss(kAbs, cball(-1), cball(1), Mag::pow2(-64), p, 92, cache, evals).has_value());
}

TEST_CASE("tail bound constants") {
  Mag c11 = ellipse_constant(1.1);
  // 64 / (15 (1 - rho^-2)) for the double nearest 1.1
  Float c = oracle(), r = oracle();
  mpfr_set_d(r.get(), 1.1, MPFR_RNDN);
  mpfr_sqr(r.get(), r.get(), MPFR_RNDN);
  mpfr_ui_div(r.get(), 1, r.get(), MPFR_RNDN);
  mpfr_ui_sub(r.get(), 1, r.get(), MPFR_RNDN);
  mpfr_mul_ui(r.get(), r.get(), 15, MPFR_RNDN);
  mpfr_ui_div(c.get(), 64, r.get(), MPFR_RNDN);
  CHECK(Mag::from_mpfr_lower(c.get()) <= c11);
  CHECK(c11.to_double() == doctest::Approx(mpfr_get_d(c.get(), MPFR_RNDN)).epsilon(1e-12));
  CHECK(c11.to_double() == doctest::Approx(24.5841).epsilon(1e-4));
  CHECK(c11.to_double() < 50.0);

  long n = 1;
  while (Mag::pow2(-64) < tail_bound(Mag::from_double(1.0), 2.0, n, Mag::from_double(1.0))) ++n;
  CHECK(n == 34);
  CHECK(next_allowed_degree(n) == 36);

  CHECK(tail_bound(Mag::from_double(1.0), 1.0 + 1e-9, 10, Mag::from_double(1.0)).to_double() > 1e8);
  CHECK(tail_bound(Mag::from_double(1.0), 1.0, 10, Mag::from_double(1.0)).is_inf());
  CHECK(tail_bound(Mag::from_double(1.0), 0.5, 10, Mag::from_double(1.0)).is_inf());
  CHECK(tail_bound(Mag::inf(), 2.0, 10, Mag::from_double(1.0)).is_inf());
}

TEST_CASE("tail bound dominates the true Gauss error for exp on [-1, 1]") {
  Precision p(512);
  Float exact = oracle(), t = oracle();
  mpfr_set_ui(t.get(), 1, MPFR_RNDN);
  mpfr_exp(exact.get(), t.get(), MPFR_RNDN);
  mpfr_set_si(t.get(), -1, MPFR_RNDN);
  mpfr_exp(t.get(), t.get(), MPFR_RNDN);
  mpfr_sub(exact.get(), exact.get(), t.get(), MPFR_RNDN);
  RealBall truth(exact.get(), Mag::pow2(-kOraclePrec + 4));

  int violations = 0;
  for (long n : allowed_degrees(92)) {
    QuadratureRule rule = compute_rule(n, p);
    RealBall sum;
    for (long k = 0; k < n; ++k) sum = add(sum, mul(rule.weight(k), exp(rule.node(k), p), p), p);
    Mag err_lower = mag_lower(sub(truth, sum, p));
    for (int j = 1; j <= 64; ++j) {
      double rho = std::exp2(j / 4.0);
      RealBall X = mul_2exp(add(RealBall(rho), div(RealBall(1L), RealBall(rho), p), p), -1);
      Mag M = mag_upper(exp(X, p));
      if (tail_bound(M, rho, n, Mag::from_double(1.0)) < err_lower) ++violations;
    }
  }
  CHECK(violations == 0);
}

TEST_CASE("work queue order") {
  auto task = [](double e) { return SubIntervalTask{cball(0), cball(1), Mag::from_double(e), 0, std::nullopt}; };
  WorkQueue stack(false, 10);
  for (double e : {1.0, 3.0, 2.0}) CHECK(stack.push(task(e)));
  std::vector<double> order;
  while (!stack.empty()) order.push_back(stack.pop().est_error.to_double());
  CHECK(order == std::vector<double>{2.0, 3.0, 1.0});

  WorkQueue heap(true, 10);
  for (double e : {1.0, 3.0, 2.0}) CHECK(heap.push(task(e)));
  order.clear();
  while (!heap.empty()) order.push_back(heap.pop().est_error.to_double());
  CHECK(order == std::vector<double>{3.0, 2.0, 1.0});

  WorkQueue tiny(false, 1);
  CHECK(tiny.push(task(1.0)));
  CHECK_FALSE(tiny.push(task(2.0)));
  CHECK(tiny.size() == 1);
  tiny.pop();
  CHECK_THROWS_AS(tiny.pop(), std::out_of_range);
}

TEST_CASE("queue overflow forces finalization") {
  IntegrationOptions o = at(64);
  o.depth_limit = 1;
  IntegrationResult r = integrate(kAbs, cball(-1), cball(2), o);
  CHECK_FALSE(r.converged);
  CHECK(r.stats.forced_subintervals >= 1);
  CHECK(r.stats.max_queue_len <= 1);
  CHECK(contains_point(r.value.re(), from_string("2.5")));
  CHECK(r.value.is_finite());
}

TEST_CASE("enclosures hold under every option combination") {
  struct Case {
    Integrand f;
    double a, b;
    Float value;
  };
  std::vector<double> poly{0.5, -2.0, 0.0, 3.0, -1.25, 0.75};
  Float sin_value = oracle(), exp_value = oracle(), t = oracle();
  // int_0^5 sin = 1 - cos 5, int_{-2}^{3} exp = e^3 - e^-2
  mpfr_set_ui(t.get(), 5, MPFR_RNDN);
  mpfr_cos(t.get(), t.get(), MPFR_RNDN);
  mpfr_ui_sub(sin_value.get(), 1, t.get(), MPFR_RNDN);
  mpfr_set_ui(t.get(), 3, MPFR_RNDN);
  mpfr_exp(exp_value.get(), t.get(), MPFR_RNDN);
  mpfr_set_si(t.get(), -2, MPFR_RNDN);
  mpfr_exp(t.get(), t.get(), MPFR_RNDN);
  mpfr_sub(exp_value.get(), exp_value.get(), t.get(), MPFR_RNDN);

  std::vector<Case> cases;
  cases.push_back({polynomial(poly), -1.5, 2.25, polynomial_integral(poly, -1.5, 2.25)});
  cases.push_back({kSin, 0, 5, sin_value});
  cases.push_back({kExp, -2, 3, exp_value});
  cases.push_back({kAbs, -1, 2, from_string("2.5")});

  int checked = 0;
  for (auto& c : cases) {
    for (long p : {32L, 64L}) {
      for (long eval_limit : {1L, 5L, 50L, 0L}) {
        for (long depth : {1L, 3L, 0L}) {
          for (bool heap : {false, true}) {
            IntegrationOptions o = at(p);
            if (eval_limit) o.eval_limit = eval_limit;
            if (depth) o.depth_limit = depth;
            o.use_heap = heap;
            IntegrationResult r = integrate(c.f, cball(c.a), cball(c.b), o);
            CAPTURE(p);
            CAPTURE(eval_limit);
            CAPTURE(depth);
            CAPTURE(heap);
            CHECK(contains_point(r.value.re(), c.value));
            ++checked;
          }
        }
      }
    }
  }
  CHECK(checked == 4 * 2 * 4 * 3 * 2);
}

TEST_CASE("linearity on random polynomials") {
  Rng rng(90);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> f(7), g(7), fg(7);
    for (int k = 0; k < 7; ++k) {
      f[k] = rng.uniform(-3, 3);
      g[k] = rng.uniform(-3, 3);
      fg[k] = f[k] + g[k];
    }
    double a = rng.uniform(-2, 0), b = rng.uniform(0.1, 2);
    ComplexBox A = cball(a), B = cball(b);
    IntegrationOptions o = at(64);
    IntegrationResult rf = integrate(polynomial(f), A, B, o);
    IntegrationResult rg = integrate(polynomial(g), A, B, o);
    // f + g evaluated as the sum of the two integrands, not the summed coefficients.
    Integrand pf = polynomial(f), pg = polynomial(g);
    Integrand sum = [&](const ComplexBox& z, bool d, Precision p) { return add(pf(z, d, p), pg(z, d, p), p); };
    IntegrationResult rs = integrate(sum, A, B, o);
    CHECK(overlaps(rs.value, add(rf.value, rg.value, Precision(64))));
  }
}

TEST_CASE("path additivity") {
  Precision p(64);
  IntegrationOptions o = at(64);
  struct Path {
    Integrand f;
    ComplexBox a, m, b;
  };
  std::vector<Path> paths = {
      {kRational, cball(0), cball(0.3), cball(1)},
      {kSin, cball(-3), cball(1), cball(7)},
      {kExp, cball(0), cball(0.5, 0.5), cball(1, 1)},
      {kAbs, cball(-1), cball(0.25), cball(2)},
  };
  for (auto& path : paths) {
    IntegrationResult whole = integrate(path.f, path.a, path.b, o);
    IntegrationResult left = integrate(path.f, path.a, path.m, o);
    IntegrationResult right = integrate(path.f, path.m, path.b, o);
    CHECK(overlaps(whole.value, add(left.value, right.value, p)));
  }
}

TEST_CASE("complex segment") {
  // int_0^{1+i} exp z dz = e^{1+i} - 1
  IntegrationResult r = integrate(kExp, cball(0), cball(1, 1), at(128));
  ComplexPoint v;
  Float e = oracle(), s = oracle(), c = oracle(), one = oracle();
  mpfr_set_ui(one.get(), 1, MPFR_RNDN);
  mpfr_exp(e.get(), one.get(), MPFR_RNDN);
  mpfr_sin_cos(s.get(), c.get(), one.get(), MPFR_RNDN);
  mpfr_mul(v.re.get(), e.get(), c.get(), MPFR_RNDN);
  mpfr_sub_ui(v.re.get(), v.re.get(), 1, MPFR_RNDN);
  mpfr_mul(v.im.get(), e.get(), s.get(), MPFR_RNDN);
  CHECK(r.converged);
  CHECK(contains_point(r.value, v));
  CHECK(max_radius(r.value) <= Mag::pow2(-128 + 8));
}

TEST_CASE("relative tolerance follows the magnitude of the result") {
  Integrand big = [](const ComplexBox& z, bool, Precision p) {
    return mul(exp(z, p), ComplexBox(RealBall::pow2(100)), p);
  };
  IntegrationResult r = integrate(big, cball(0), cball(1), at(64));
  CHECK(r.converged);
  CHECK(r.value.re().rad() <= Mag::pow2(100 - 64 + 8));
  CHECK(r.stats.terminal_subintervals <= 4);
}

TEST_CASE("invalid arguments") {
  IntegrationOptions o = at(64);
  o.eval_limit = 0;
  CHECK_THROWS_AS(integrate(kExp, cball(0), cball(1), o), std::invalid_argument);
  o = at(64);
  o.deg_limit = 0;
  CHECK_THROWS_AS(integrate(kExp, cball(0), cball(1), o), std::invalid_argument);
  CHECK_THROWS_AS(integrate(kExp, ComplexBox::indeterminate(), cball(1), at(64)), std::invalid_argument);
}

TEST_CASE("identical runs give identical statistics") {
  IntegrationResult a = integrate(kAbs, cball(-1), cball(2), at(64));
  IntegrationResult b = integrate(kAbs, cball(-1), cball(2), at(64));
  CHECK(a.stats.evals == b.stats.evals);
  CHECK(a.stats.terminal_subintervals == b.stats.terminal_subintervals);
  CHECK(to_string(a.value) == to_string(b.value));
}

}  // TEST_SUITE
