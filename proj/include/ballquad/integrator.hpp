#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "ballquad/complex_box.hpp"
#include "ballquad/gauss_legendre.hpp"

namespace ballquad {

/// f(z, analytic, prec). With analytic == false the result must enclose
/// f over z. With analytic == true a finite result additionally certifies
/// that f is analytic on z; otherwise the integrand must return an
/// indeterminate box.
using Integrand = std::function<ComplexBox(const ComplexBox& z, bool analytic, Precision prec)>;

struct IntegrationOptions {
  Precision prec{64};
  /// Both default to 2^-prec.
  std::optional<Mag> abs_tol;
  std::optional<Mag> rel_tol;
  /// Default floor(prec / 2) + 60.
  std::optional<long> deg_limit;
  /// Default 1000 prec + prec^2.
  std::optional<long> eval_limit;
  /// Maximum queue length, default 2 prec.
  std::optional<long> depth_limit;
  bool use_heap = false;
  bool verbose = false;
  /// Node cache; nullptr selects default_rule_cache().
  RuleCache* cache = nullptr;
};

struct IntegrationStats {
  long evals = 0;
  long terminal_subintervals = 0;
  long forced_subintervals = 0;
  long max_queue_len = 0;
  long max_depth = 0;
  /// Gauss-Legendre degree -> number of subintervals that used it.
  std::map<long, long> rules_used;
};

struct IntegrationResult {
  ComplexBox value;
  bool converged = true;
  IntegrationStats stats;
};

struct SubIntervalTask {
  ComplexBox a;
  ComplexBox b;
  Mag est_error;
  long depth = 0;
  /// Direct enclosure, when already computed during bisection.
  std::optional<ComplexBox> direct;
};

/// Stack (LIFO) or max-heap on est_error, with a fixed capacity.
class WorkQueue {
 public:
  WorkQueue(bool use_heap, std::size_t capacity);

  /// False, leaving the queue unchanged, when the queue is full.
  bool push(SubIntervalTask task);
  SubIntervalTask pop();

  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  std::size_t capacity() const { return capacity_; }

 private:
  struct Entry {
    SubIntervalTask task;
    std::uint64_t seq;
  };
  static bool heap_less(const Entry& x, const Entry& y);

  bool use_heap_;
  std::size_t capacity_;
  std::uint64_t next_seq_ = 0;
  std::vector<Entry> items_;
};

struct EllipseBound {
  double rho = 0.0;
  Mag X;
  Mag Y;
  Mag M;
  Mag C;
  long n_req = 0;
};

/// |delta| * M * rho^(-2n) * C_rho with C_rho = (64/15) / (1 - rho^-2),
/// rounded upward. Infinite when rho <= 1 or M is infinite.
Mag tail_bound(const Mag& M, double rho, long n, const Mag& scale);
/// C_rho as above (upper bound).
Mag ellipse_constant(double rho);

/// (b - a) * f(hull(a, b), analytic = false).
ComplexBox direct_enclosure(const Integrand& f, const ComplexBox& a, const ComplexBox& b,
                            Precision prec);

struct GaussResult {
  ComplexBox value;
  long degree = 0;
  EllipseBound ellipse;
};

/// Searches Bernstein ellipses rho = 2^(j/4) for a Gauss-Legendre degree
/// meeting tol / 2 and returns the quadrature value with the tail bound
/// folded in. `evals` is incremented for every call to f.
std::optional<GaussResult> try_gauss(const Integrand& f, const ComplexBox& a, const ComplexBox& b,
                                     const Mag& tol, Precision prec, long deg_limit,
                                     RuleCache& cache, long& evals);

/// Rigorous enclosure of the integral of f along the segment [a, b].
/// Throws std::invalid_argument for non-finite endpoints or invalid limits.
IntegrationResult integrate(const Integrand& f, const ComplexBox& a, const ComplexBox& b,
                            const IntegrationOptions& opts = {});

}  // namespace ballquad
