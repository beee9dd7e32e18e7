#include "ballquad/integrator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iostream>
#include <limits>
#include <stdexcept>

namespace ballquad {

using detail::Float;

namespace {

constexpr int kMaxEllipseSteps = 256;
constexpr long kSumGuardBits = 16;
const Precision kBoundPrec(64);

RealBall exact_double(double v) { return RealBall(v); }

Mag mag_of(const ComplexBox& z) { return magnitude_interval(z).upper; }
Mag mag_lower_of(const ComplexBox& z) { return magnitude_interval(z).lower; }

// Midpoint precision large enough for the midpoint of exact endpoints to be
// exact, so that bisection is not stopped early by rounding.
Precision midpoint_precision(const RealBall& a, const RealBall& b, Precision prec) {
  if (!a.is_exact() || !b.is_exact() || a.is_zero() || b.is_zero()) {
    long bits = std::max<long>(a.mid_precision(), b.mid_precision()) + 1;
    return Precision(std::clamp(bits, prec.bits(), 4 * prec.bits() + 64));
  }
  long ea = mpfr_get_exp(a.mid());
  long eb = mpfr_get_exp(b.mid());
  long la = ea - static_cast<long>(a.mid_precision());
  long lb = eb - static_cast<long>(b.mid_precision());
  long bits = std::max(ea, eb) - std::min(la, lb) + 2;
  return Precision(std::clamp(bits, prec.bits(), 4 * prec.bits() + 64));
}

ComplexBox bisection_point(const ComplexBox& a, const ComplexBox& b, Precision prec) {
  Precision pr = midpoint_precision(a.re(), b.re(), prec);
  Precision pi = midpoint_precision(a.im(), b.im(), prec);
  return {mul_2exp(add(a.re(), b.re(), pr), -1), mul_2exp(add(a.im(), b.im(), pi), -1)};
}

}  // namespace

WorkQueue::WorkQueue(bool use_heap, std::size_t capacity)
    : use_heap_(use_heap), capacity_(capacity) {}

bool WorkQueue::heap_less(const Entry& x, const Entry& y) {
  if (x.task.est_error < y.task.est_error) return true;
  if (y.task.est_error < x.task.est_error) return false;
  return x.seq > y.seq;
}

bool WorkQueue::push(SubIntervalTask task) {
  if (items_.size() >= capacity_) return false;
  items_.push_back({std::move(task), next_seq_++});
  if (use_heap_) std::push_heap(items_.begin(), items_.end(), heap_less);
  return true;
}

SubIntervalTask WorkQueue::pop() {
  if (items_.empty()) throw std::out_of_range("pop from empty work queue");
  if (use_heap_) std::pop_heap(items_.begin(), items_.end(), heap_less);
  SubIntervalTask t = std::move(items_.back().task);
  items_.pop_back();
  return t;
}

Mag ellipse_constant(double rho) {
  if (!(rho > 1.0)) return Mag::inf();
  RealBall r = exact_double(rho);
  RealBall t = sub(RealBall(1L), div(RealBall(1L), sqr(r, kBoundPrec), kBoundPrec), kBoundPrec);
  RealBall c = div(div_si(RealBall(64L), 15, kBoundPrec), t, kBoundPrec);
  return mag_upper(c);
}

Mag tail_bound(const Mag& M, double rho, long n, const Mag& scale) {
  if (!(rho > 1.0) || M.is_inf() || scale.is_inf()) return Mag::inf();
  if (M.is_zero() || scale.is_zero()) return Mag{};
  RealBall r = exact_double(rho);
  RealBall decay = div(RealBall(1L), pow_ui(r, static_cast<unsigned long>(2 * n), kBoundPrec),
                       kBoundPrec);
  return M * scale * mag_upper(decay) * ellipse_constant(rho);
}

ComplexBox direct_enclosure(const Integrand& f, const ComplexBox& a, const ComplexBox& b,
                            Precision prec) {
  ComplexBox z = hull(a, b);
  ComplexBox v = f(z, false, prec);
  if (!v.is_finite()) return ComplexBox::indeterminate();
  return mul(sub(b, a, prec), v, prec);
}

std::optional<GaussResult> try_gauss(const Integrand& f, const ComplexBox& a, const ComplexBox& b,
                                     const Mag& tol, Precision prec, long deg_limit,
                                     RuleCache& cache, long& evals) {
  if (tol.is_zero()) return std::nullopt;
  ComplexBox m = mul_2exp(add(a, b, prec), -1);
  ComplexBox delta = mul_2exp(sub(b, a, prec), -1);
  Mag scale = mag_of(delta);
  if (!scale.is_finite()) return std::nullopt;
  const double log2_target = (tol.mul_2exp(-1)).log2_approx();

  std::optional<EllipseBound> best;
  long prev_n = std::numeric_limits<long>::max();
  int stalls = 0;
  for (int j = 1; j <= kMaxEllipseSteps; ++j) {
    double rho = std::exp2(j / 4.0);
    RealBall r = exact_double(rho);
    RealBall rinv = div(RealBall(1L), r, kBoundPrec);
    Mag X = mag_upper(mul_2exp(add(r, rinv, kBoundPrec), -1));
    Mag Y = mag_upper(mul_2exp(sub(r, rinv, kBoundPrec), -1));
    Float zero(2);
    ComplexBox unit(RealBall(zero.get(), X), RealBall(zero.get(), Y));
    ComplexBox box = add(m, mul(delta, unit, prec), prec);
    ComplexBox fv = f(box, true, prec);
    ++evals;
    if (!fv.is_finite()) break;
    Mag M = mag_of(fv);
    if (!M.is_finite()) break;

    Mag C = ellipse_constant(rho);
    double raw = 1.0;
    if (!M.is_zero()) {
      double lead = (scale * M * C).log2_approx();
      raw = std::max(1.0, std::ceil((lead - log2_target) / (2.0 * std::log2(rho))));
    }
    long n = std::numeric_limits<long>::max();
    if (raw <= static_cast<double>(deg_limit)) {
      n = next_allowed_degree(static_cast<long>(raw));
      while (n <= deg_limit && tol.mul_2exp(-1) < tail_bound(M, rho, n, scale)) {
        n = next_allowed_degree(n + 1);
      }
    }
    if (n <= deg_limit && (!best || n < best->n_req)) best = EllipseBound{rho, X, Y, M, C, n};
    if (n < prev_n) {
      stalls = 0;
      prev_n = n;
    } else if (best && ++stalls >= 2) {
      break;
    }
    if (raw <= 1.0) break;
  }
  if (!best) return std::nullopt;

  // Guard bits keep rounding in the node sum well below tol / 2.
  const Precision wp(prec.bits() + kSumGuardBits + std::bit_width(static_cast<unsigned long>(best->n_req)));
  auto rule = cache.get(best->n_req, wp);
  m = mul_2exp(add(a, b, wp), -1);
  delta = mul_2exp(sub(b, a, wp), -1);
  ComplexBox sum;
  for (std::size_t k = 0; k < rule->half_size(); ++k) {
    const RealBall& x = rule->half_node(k);
    const RealBall& w = rule->half_weight(k);
    ComplexBox term;
    if (x.is_zero()) {
      term = f(m, false, wp);
      ++evals;
    } else {
      ComplexBox dx = mul(delta, x, wp);
      term = add(f(add(m, dx, wp), false, wp), f(sub(m, dx, wp), false, wp), wp);
      evals += 2;
    }
    sum = add(sum, mul(term, w, wp), wp);
  }
  ComplexBox value = mul(delta, sum, prec);
  Mag tail = tail_bound(best->M, best->rho, best->n_req, scale);
  value.re().add_error(tail);
  value.im().add_error(tail);
  return GaussResult{std::move(value), best->n_req, *best};
}

IntegrationResult integrate(const Integrand& f, const ComplexBox& a, const ComplexBox& b,
                            const IntegrationOptions& opts) {
  if (!a.is_finite() || !b.is_finite()) throw std::invalid_argument("endpoints must be finite");
  const Precision prec = opts.prec;
  const long p = prec.bits();
  const long deg_limit = opts.deg_limit.value_or(p / 2 + 60);
  const long eval_limit = opts.eval_limit.value_or(1000 * p + p * p);
  const long depth_limit = opts.depth_limit.value_or(2 * p);
  if (deg_limit < 1 || eval_limit < 1 || depth_limit < 1) {
    throw std::invalid_argument("integration limits must be positive");
  }
  const Mag rel_tol = opts.rel_tol.value_or(Mag::pow2(-p));
  Mag tol = opts.abs_tol.value_or(Mag::pow2(-p));
  RuleCache& cache = opts.cache ? *opts.cache : default_rule_cache();

  IntegrationResult result;
  IntegrationStats& st = result.stats;
  if (a.is_exact() && b.is_exact() && mpfr_equal_p(a.re().mid(), b.re().mid()) &&
      mpfr_equal_p(a.im().mid(), b.im().mid())) {
    return result;
  }

  auto update_tol = [&](const ComplexBox& v) {
    if (rel_tol.is_zero()) return;
    tol = max(tol, Mag::mul_lower(mag_lower_of(v), rel_tol));
  };
  auto finalize = [&](const ComplexBox& v, bool forced) {
    result.value = add(result.value, v, prec);
    ++st.terminal_subintervals;
    if (forced) {
      ++st.forced_subintervals;
      result.converged = false;
    }
  };

  WorkQueue queue(opts.use_heap, static_cast<std::size_t>(depth_limit));
  queue.push({a, b, Mag::inf(), 0, std::nullopt});
  st.max_queue_len = 1;

  while (!queue.empty()) {
    SubIntervalTask task = queue.pop();
    st.max_depth = std::max(st.max_depth, task.depth);

    ComplexBox direct;
    if (task.direct) {
      direct = std::move(*task.direct);
    } else {
      direct = direct_enclosure(f, task.a, task.b, prec);
      ++st.evals;
    }

    Mag err = max_radius(direct);
    bool limits_hit = st.evals >= eval_limit;
    if (err <= tol || overlaps(task.a, task.b) || limits_hit) {
      bool forced = limits_hit && !(err <= tol) && !overlaps(task.a, task.b);
      finalize(direct, forced);
      update_tol(direct);
      if (opts.verbose) {
        std::cerr << "direct depth=" << task.depth << " err=" << err.to_string()
                  << (forced ? " (forced)" : "") << "\n";
      }
      continue;
    }

    auto gauss = try_gauss(f, task.a, task.b, tol, prec, deg_limit, cache, st.evals);
    if (gauss) {
      finalize(gauss->value, false);
      ++st.rules_used[gauss->degree];
      update_tol(gauss->value);
      if (opts.verbose) {
        std::cerr << "gauss depth=" << task.depth << " n=" << gauss->degree
                  << " rho=" << gauss->ellipse.rho << " M=" << gauss->ellipse.M.to_string()
                  << "\n";
      }
      continue;
    }

    ComplexBox mid = bisection_point(task.a, task.b, prec);
    SubIntervalTask left{task.a, mid, {}, task.depth + 1, std::nullopt};
    SubIntervalTask right{mid, task.b, {}, task.depth + 1, std::nullopt};
    left.direct = direct_enclosure(f, left.a, left.b, prec);
    right.direct = direct_enclosure(f, right.a, right.b, prec);
    st.evals += 2;
    left.est_error = max_radius(*left.direct);
    right.est_error = max_radius(*right.direct);

    SubIntervalTask* small = &left;
    SubIntervalTask* large = &right;
    if (right.est_error < left.est_error) std::swap(small, large);

    std::size_t room = queue.capacity() - queue.size();
    if (room >= 2) {
      queue.push(std::move(*small));
      queue.push(std::move(*large));
    } else if (room == 1) {
      finalize(*small->direct, true);
      queue.push(std::move(*large));
    } else {
      finalize(*small->direct, true);
      finalize(*large->direct, true);
    }
    st.max_queue_len = std::max(st.max_queue_len, static_cast<long>(queue.size()));
  }

  if (opts.verbose) {
    std::cerr << "evals=" << st.evals << " subintervals=" << st.terminal_subintervals
              << " converged=" << result.converged << "\n";
  }
  return result;
}

}  // namespace ballquad
