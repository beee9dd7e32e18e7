#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <variant>

#include "ballquad/ballquad.hpp"

namespace py = pybind11;
using namespace ballquad;

namespace {

using RealLike = std::variant<RealBall, long, double, std::string>;
using ComplexLike = std::variant<ComplexBox, RealBall, long, double, std::string>;
using Tolerance = std::variant<RealBall, double, std::string>;

RealBall to_real(const RealLike& v, long prec) {
  if (auto* b = std::get_if<RealBall>(&v)) return *b;
  if (auto* i = std::get_if<long>(&v)) return RealBall(*i);
  if (auto* d = std::get_if<double>(&v)) return RealBall(*d);
  return parse_real_ball(std::get<std::string>(v), Precision(prec));
}

ComplexBox to_complex(const ComplexLike& v, long prec) {
  if (auto* z = std::get_if<ComplexBox>(&v)) return *z;
  if (auto* b = std::get_if<RealBall>(&v)) return ComplexBox(*b);
  if (auto* i = std::get_if<long>(&v)) return ComplexBox(*i);
  if (auto* d = std::get_if<double>(&v)) return ComplexBox(RealBall(*d));
  return parse_complex_box(std::get<std::string>(v), Precision(prec));
}

// "2^-k", a decimal string, a float or a ball; the upper bound is used.
Mag to_tolerance(const Tolerance& t) {
  if (auto* s = std::get_if<std::string>(&t)) {
    if (s->rfind("2^", 0) == 0) return Mag::pow2(std::stol(s->substr(2)));
    return mag_upper(parse_real_ball(*s, Precision(64)));
  }
  if (auto* d = std::get_if<double>(&t)) {
    if (*d < 0) throw std::invalid_argument("tolerance must be non-negative");
    return Mag::from_double(*d);
  }
  return mag_upper(std::get<RealBall>(t));
}

py::dict row_dict(const bench::BenchRow& row) {
  py::dict d;
  d["id"] = row.id;
  d["prec"] = row.prec;
  d["value"] = row.result.value;
  d["converged"] = row.result.converged;
  d["evals"] = row.result.stats.evals;
  d["subs"] = row.result.stats.terminal_subintervals;
  d["ms"] = row.ms;
  d["verified"] = row.verified ? py::cast(*row.verified) : py::none();
  return d;
}

template <class F>
void def_unary(py::module_& m, const char* name, F f) {
  m.def(name, [f](const ComplexLike& z, long prec) { return f(to_complex(z, prec), Precision(prec)); },
        py::arg("z"), py::arg("prec") = 64);
}

}  // namespace

PYBIND11_MODULE(_ballquad, m) {
  m.doc() = "Ball arithmetic and rigorous adaptive integration";

  py::class_<RealBall>(m, "RealBall")
      .def(py::init([](const RealLike& v, long prec) { return to_real(v, prec); }), py::arg("value") = 0L,
           py::arg("prec") = 64)
      .def_property_readonly("mid", &RealBall::mid_double)
      .def_property_readonly("rad", [](const RealBall& x) { return x.rad().to_double(); })
      .def("is_finite", &RealBall::is_finite)
      .def("is_exact", &RealBall::is_exact)
      .def("contains", [](const RealBall& x, const RealLike& y) { return contains(x, to_real(y, 4096)); })
      .def("overlaps", [](const RealBall& x, const RealLike& y) { return overlaps(x, to_real(y, 4096)); })
      .def("__str__", [](const RealBall& x) { return to_string(x); })
      .def("__repr__", [](const RealBall& x) { return "RealBall('" + to_string(x) + "')"; })
      .def("__float__", &RealBall::mid_double);

  py::class_<ComplexBox>(m, "ComplexBox")
      .def(py::init([](const RealLike& re, const RealLike& im, long prec) {
             return ComplexBox(to_real(re, prec), to_real(im, prec));
           }),
           py::arg("re") = 0L, py::arg("im") = 0L, py::arg("prec") = 64)
      .def_static("parse", [](const std::string& s, long prec) { return parse_complex_box(s, Precision(prec)); },
                  py::arg("text"), py::arg("prec") = 64)
      .def_property_readonly("re", [](const ComplexBox& z) { return z.re(); })
      .def_property_readonly("im", [](const ComplexBox& z) { return z.im(); })
      .def_property_readonly("rad", [](const ComplexBox& z) { return max_radius(z).to_double(); })
      .def("is_finite", &ComplexBox::is_finite)
      .def("contains", [](const ComplexBox& z, const ComplexLike& w) { return contains(z, to_complex(w, 4096)); })
      .def("overlaps", [](const ComplexBox& z, const ComplexLike& w) { return overlaps(z, to_complex(w, 4096)); })
      .def("add", [](const ComplexBox& x, const ComplexLike& y, long p) { return add(x, to_complex(y, p), Precision(p)); },
           py::arg("other"), py::arg("prec") = 64)
      .def("sub", [](const ComplexBox& x, const ComplexLike& y, long p) { return sub(x, to_complex(y, p), Precision(p)); },
           py::arg("other"), py::arg("prec") = 64)
      .def("mul", [](const ComplexBox& x, const ComplexLike& y, long p) { return mul(x, to_complex(y, p), Precision(p)); },
           py::arg("other"), py::arg("prec") = 64)
      .def("div", [](const ComplexBox& x, const ComplexLike& y, long p) { return div(x, to_complex(y, p), Precision(p)); },
           py::arg("other"), py::arg("prec") = 64)
      .def("pow", [](const ComplexBox& x, unsigned long n, long p) { return pow_ui(x, n, Precision(p)); },
           py::arg("n"), py::arg("prec") = 64)
      .def("__neg__", [](const ComplexBox& x) { return neg(x); })
      .def("__str__", [](const ComplexBox& z) { return to_string(z); })
      .def("__repr__", [](const ComplexBox& z) { return "ComplexBox('" + to_string(z) + "')"; });

  def_unary(m, "exp", [](const ComplexBox& z, Precision p) { return exp(z, p); });
  def_unary(m, "log", [](const ComplexBox& z, Precision p) { return log(z, p); });
  def_unary(m, "sqrt", [](const ComplexBox& z, Precision p) { return sqrt(z, p); });
  def_unary(m, "sin", [](const ComplexBox& z, Precision p) { return sin(z, p); });
  def_unary(m, "cos", [](const ComplexBox& z, Precision p) { return cos(z, p); });
  def_unary(m, "atan", [](const ComplexBox& z, Precision p) { return atan(z, p); });
  def_unary(m, "sech", [](const ComplexBox& z, Precision p) { return sech(z, p); });

  m.def("abs_ext", &abs_ext, py::arg("z"), py::arg("analytic"));
  m.def("sgn_ext", &sgn_ext, py::arg("z"), py::arg("analytic"));
  m.def("floor_ext", &floor_ext, py::arg("z"), py::arg("analytic"));
  m.def("ceil_ext", &ceil_ext, py::arg("z"), py::arg("analytic"));
  m.def("max_ext", [](const ComplexBox& x, const ComplexBox& y, bool d, long p) { return max_ext(x, y, d, Precision(p)); },
        py::arg("x"), py::arg("y"), py::arg("analytic"), py::arg("prec") = 64);
  m.def("min_ext", [](const ComplexBox& x, const ComplexBox& y, bool d, long p) { return min_ext(x, y, d, Precision(p)); },
        py::arg("x"), py::arg("y"), py::arg("analytic"), py::arg("prec") = 64);
  m.def("sqrt_analytic", [](const ComplexBox& z, bool d, long p) { return sqrt_analytic(z, d, Precision(p)); },
        py::arg("z"), py::arg("analytic"), py::arg("prec") = 64);
  m.def("log_analytic", [](const ComplexBox& z, bool d, long p) { return log_analytic(z, d, Precision(p)); },
        py::arg("z"), py::arg("analytic"), py::arg("prec") = 64);

  py::class_<IntegrationResult>(m, "IntegrationResult")
      .def_readonly("value", &IntegrationResult::value)
      .def_readonly("converged", &IntegrationResult::converged)
      .def_property_readonly("evals", [](const IntegrationResult& r) { return r.stats.evals; })
      .def_property_readonly("subs", [](const IntegrationResult& r) { return r.stats.terminal_subintervals; })
      .def_property_readonly("forced", [](const IntegrationResult& r) { return r.stats.forced_subintervals; })
      .def_property_readonly("rules_used", [](const IntegrationResult& r) { return r.stats.rules_used; })
      .def("__repr__", [](const IntegrationResult& r) {
        return "IntegrationResult(" + to_string(r.value) + ", converged=" + (r.converged ? "True" : "False") + ")";
      });

  m.def(
      "integrate",
      [](const std::function<ComplexBox(const ComplexBox&, bool, long)>& f, const ComplexLike& a,
         const ComplexLike& b, long prec, std::optional<Tolerance> abs_tol, std::optional<Tolerance> rel_tol,
         std::optional<long> deg_limit, std::optional<long> eval_limit, std::optional<long> depth_limit,
         bool use_heap) {
        IntegrationOptions o;
        o.prec = Precision(prec);
        if (abs_tol) o.abs_tol = to_tolerance(*abs_tol);
        if (rel_tol) o.rel_tol = to_tolerance(*rel_tol);
        o.deg_limit = deg_limit;
        o.eval_limit = eval_limit;
        o.depth_limit = depth_limit;
        o.use_heap = use_heap;
        Integrand g = [&f](const ComplexBox& z, bool d, Precision p) { return f(z, d, p.bits()); };
        return integrate(g, to_complex(a, prec), to_complex(b, prec), o);
      },
      "Enclosure of the integral of f(z, analytic, prec) along the segment [a, b].", py::arg("f"), py::arg("a"),
      py::arg("b"), py::arg("prec") = 64, py::arg("abs_tol") = py::none(), py::arg("rel_tol") = py::none(),
      py::arg("deg_limit") = py::none(), py::arg("eval_limit") = py::none(), py::arg("depth_limit") = py::none(),
      py::arg("use_heap") = false);

  m.def("bench_cases", [] {
    py::list out;
    for (const auto& c : bench::cases()) out.append(py::make_tuple(c.id, c.formula));
    return out;
  });
  m.def(
      "bench_run",
      [](const std::string& id, long prec, bool verify, std::optional<long> eval_limit) {
        bench::Overrides o;
        o.eval_limit = eval_limit;
        bench::BenchRow row;
        {
          py::gil_scoped_release release;
          row = bench::run_case(bench::find_case(id), prec, o, verify);
        }
        return row_dict(row);
      },
      py::arg("id"), py::arg("prec") = 64, py::arg("verify") = true, py::arg("eval_limit") = py::none());
}
