#include <doctest.h>

#include <functional>
#include <string>
#include <vector>

#include "support.hpp"

using namespace ballquad;
using namespace testing;

namespace {

ComplexBox cbox(double re, double re_rad, double im = 0.0, double im_rad = 0.0) {
  return {ball(re, re_rad), ball(im, im_rad)};
}

bool is_indeterminate(const ComplexBox& z) { return !z.is_finite(); }

// Box on or around the real axis, with radii that often straddle integers
// and zero.
ComplexBox random_real_box(Rng& rng) {
  const double radii[] = {0.0, 1e-3, 0.3, 2.0};
  double re = rng.uniform(-5, 5);
  if (rng.pick(6) == 0) re = std::round(re);
  double im_rad = rng.pick(2) == 0 ? 0.0 : 0.25;
  return cbox(re, radii[rng.pick(4)], 0.0, im_rad);
}

struct Piece {
  const char* name;
  std::function<ComplexBox(const ComplexBox&, const ComplexBox&, bool)> ext;
  std::function<void(Float&, const Float&, const Float&)> real;
};

std::vector<Piece> pieces() {
  Precision p(64);
  return {
      {"abs", [](auto& z, auto&, bool d) { return abs_ext(z, d); },
       [](Float& r, const Float& x, const Float&) { mpfr_abs(r.get(), x.get(), MPFR_RNDN); }},
      {"sgn", [](auto& z, auto&, bool d) { return sgn_ext(z, d); },
       [](Float& r, const Float& x, const Float&) { mpfr_set_si(r.get(), mpfr_sgn(x.get()), MPFR_RNDN); }},
      {"floor", [](auto& z, auto&, bool d) { return floor_ext(z, d); },
       [](Float& r, const Float& x, const Float&) { mpfr_floor(r.get(), x.get()); }},
      {"ceil", [](auto& z, auto&, bool d) { return ceil_ext(z, d); },
       [](Float& r, const Float& x, const Float&) { mpfr_ceil(r.get(), x.get()); }},
      {"max", [p](auto& z, auto& w, bool d) { return max_ext(z, w, d, p); },
       [](Float& r, const Float& x, const Float& y) { mpfr_max(r.get(), x.get(), y.get(), MPFR_RNDN); }},
      {"min", [p](auto& z, auto& w, bool d) { return min_ext(z, w, d, p); },
       [](Float& r, const Float& x, const Float& y) { mpfr_min(r.get(), x.get(), y.get(), MPFR_RNDN); }},
  };
}

}  // namespace

TEST_SUITE("piecewise_ext") {

TEST_CASE("absolute value") {
  ComplexBox a = abs_ext(cbox(3, 0.5, 0, 0.1), true);
  CHECK(mpfr_equal_p(a.re().mid(), ball(3, 0).mid()));
  CHECK(a.re().rad() == Mag::from_double(0.5));
  CHECK(a.im().rad() == Mag::from_double(0.1));

  ComplexBox b = abs_ext(cbox(-2, 0.5, 1, 0), true);
  CHECK(b.re().mid_double() == 2.0);
  CHECK(b.re().rad() == Mag::from_double(0.5));
  CHECK(b.im().mid_double() == -1.0);
  CHECK(b.im().is_exact());

  CHECK(is_indeterminate(abs_ext(cbox(0, 1), true)));
  ComplexBox c = abs_ext(cbox(0, 1), false);
  CHECK(contains_point(c.re(), from_string("-1")));
  CHECK(contains_point(c.re(), from_string("1")));
}

TEST_CASE("sign") {
  ComplexBox a = sgn_ext(cbox(5, 1), true);
  CHECK(a.is_exact());
  CHECK(a.re().mid_double() == 1.0);
  ComplexBox b = sgn_ext(cbox(-5, 1), true);
  CHECK(b.re().mid_double() == -1.0);
  ComplexBox c = sgn_ext(cbox(0, 1), false);
  CHECK(contains_point(c.re(), from_string("-1")));
  CHECK(contains_point(c.re(), from_string("1")));
  CHECK(is_indeterminate(sgn_ext(cbox(0, 1), true)));
}

TEST_CASE("floor and ceiling") {
  ComplexBox f = floor_ext(cbox(2.5, 0.4), true);
  CHECK(f.is_exact());
  CHECK(f.re().mid_double() == 2.0);

  CHECK(is_indeterminate(floor_ext(cbox(3, 0.25), true)));
  ComplexBox g = floor_ext(cbox(3, 0.25), false);
  CHECK(contains_point(g.re(), from_string("2")));
  CHECK(contains_point(g.re(), from_string("3")));

  ComplexBox c = ceil_ext(cbox(2.5, 0.4), true);
  CHECK(c.is_exact());
  CHECK(c.re().mid_double() == 3.0);

  // Constant across the strip regardless of the imaginary part.
  ComplexBox s = floor_ext(cbox(2.5, 0.4, 7, 3), true);
  CHECK(s.is_exact());
  CHECK(s.re().mid_double() == 2.0);

  ComplexBox wide = floor_ext(cbox(0, 1e30), false);
  CHECK(wide.is_finite());
  CHECK(contains_point(wide.re(), from_string("-1e30")));
  CHECK(contains_point(wide.re(), from_string("1e30")));
  CHECK(is_indeterminate(floor_ext(ComplexBox::indeterminate(), false)));
}

TEST_CASE("max and min") {
  Precision p(64);
  ComplexBox m = max_ext(cbox(3, 0.1), cbox(1, 0.1), true, p);
  CHECK(m.re().mid_double() == 3.0);
  CHECK(m.re().rad() == Mag::from_double(0.1));
  CHECK(is_indeterminate(max_ext(cbox(1, 1), cbox(1, 1), true, p)));
  ComplexBox h = max_ext(cbox(1, 1), cbox(1, 1), false, p);
  CHECK(contains_point(h.re(), from_string("2")));
  ComplexBox n = min_ext(cbox(3, 0.1), cbox(1, 0.1), true, p);
  CHECK(n.re().mid_double() == 1.0);
  CHECK(n.re().rad() == Mag::from_double(0.1));
}

TEST_CASE("square root and logarithm with cut detection") {
  Precision p(64);
  ComplexBox s = sqrt_analytic(cbox(4, 0.1, 0, 0.1), true, p);
  CHECK(s.is_finite());
  CHECK(contains_point(s.re(), from_string("2")));
  CHECK(is_indeterminate(sqrt_analytic(cbox(-1, 0.5, 0, 0.5), true, p)));
  CHECK(sqrt_analytic(cbox(-1, 0.5, 0, 0.5), false, p).is_finite());
  ComplexBox l = log_analytic(cbox(1, 0), false, p);
  CHECK(contains_point(l.re(), from_string("0")));
  CHECK(contains_zero(l.im()));
  CHECK(is_indeterminate(log_analytic(cbox(-3, 0.5, 0, 1e-9), true, p)));
  // Above the cut the principal branch is analytic.
  ComplexBox up = log_analytic(cbox(-3, 0.5, 1, 0.5), true, p);
  CHECK(up.is_finite());
  Float pi = oracle();
  mpfr_const_pi(pi.get(), MPFR_RNDN);
  CHECK(up.im().mid_double() > 1.5);
  CHECK(up.im().mid_double() < mpfr_get_d(pi.get(), MPFR_RNDN));
}

TEST_CASE("soundness, containment and consistency on random boxes") {
  Rng rng(404);
  for (const Piece& piece : pieces()) {
    CAPTURE(piece.name);
    int unsound = 0, escaped = 0, inconsistent = 0, analytic_hits = 0;
    for (int i = 0; i < 4000; ++i) {
      ComplexBox z = random_real_box(rng);
      ComplexBox w = random_real_box(rng);
      ComplexBox on = piece.ext(z, w, true);
      ComplexBox off = piece.ext(z, w, false);
      if (on.is_finite()) {
        ++analytic_hits;
        if (!contains(off, on)) ++inconsistent;
      }
      for (int k = 0; k < 8; ++k) {
        Float x = point_in(z.re(), rng.unit());
        Float y = point_in(w.re(), rng.unit());
        Float v = oracle();
        piece.real(v, x, y);
        if (!contains_point(off.re(), v)) ++escaped;
        // A finite analytic result must agree with the real definition
        // everywhere on the real segment it covers.
        if (on.is_finite() && contains_zero(z.im()) && contains_zero(w.im()) &&
            !contains_point(on.re(), v)) {
          ++unsound;
        }
      }
    }
    CHECK(unsound == 0);
    CHECK(escaped == 0);
    CHECK(inconsistent == 0);
    CHECK(analytic_hits > 100);
  }
}

}  // TEST_SUITE
