#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <shared_mutex>
#include <vector>

#include "ballquad/real_ball.hpp"

namespace ballquad {

/// Degrees 1, 2, 3, 5, 8, 12, 17, ... (t <- ceil(t * sqrt 2)) not exceeding n_max.
std::vector<long> allowed_degrees(long n_max);
/// Smallest allowed degree >= n (n >= 1).
long next_allowed_degree(long n);

struct LegendreValue {
  RealBall p;
  RealBall dp;
};

/// P_n(x) and P_n'(x) by the three-term recurrence in ball arithmetic.
LegendreValue legendre_eval(long n, const RealBall& x, Precision prec);

/// Interval Newton test for a root of P_n: true if
/// mid(X) - P_n(mid X) / P_n'(X) is contained in X. Uses the bound
/// |P_n''| <= P_n''(1) on [-1, 1] for the derivative range, so X must lie
/// inside (-1, 1).
bool newton_contracts(long n, const RealBall& x, Precision work);

/// Certified Gauss-Legendre rule of degree n.
///
/// Only the non-negative nodes are stored (ascending, including 0 for odd n);
/// node(k) and weight(k) expose the full rule in ascending node order.
class QuadratureRule {
 public:
  QuadratureRule(long degree, long precision, std::vector<RealBall> nodes,
                 std::vector<RealBall> weights);

  long degree() const { return degree_; }
  long precision() const { return precision_; }

  std::size_t half_size() const { return half_nodes_.size(); }
  const RealBall& half_node(std::size_t j) const { return half_nodes_[j]; }
  const RealBall& half_weight(std::size_t j) const { return half_weights_[j]; }

  RealBall node(std::size_t k) const;
  RealBall weight(std::size_t k) const;

  std::uint64_t newton_steps = 0;
  std::uint64_t certifications = 0;

 private:
  long degree_;
  long precision_;
  std::vector<RealBall> half_nodes_;
  std::vector<RealBall> half_weights_;
};

/// Computes and certifies the degree-n rule; node and weight radii are
/// about 2^-(p+16). Throws std::runtime_error if certification keeps failing.
QuadratureRule compute_rule(long n, Precision prec);

/// Thread-safe cache keeping the highest-precision rule per degree.
class RuleCache {
 public:
  struct Stats {
    std::uint64_t hits = 0;
    std::uint64_t misses = 0;
    std::uint64_t newton_steps = 0;
    std::uint64_t certifications = 0;
  };

  std::shared_ptr<const QuadratureRule> get(long n, Precision prec);
  Stats stats() const;
  void clear();
  std::size_t size() const;

 private:
  mutable std::shared_mutex mutex_;
  std::map<long, std::shared_ptr<const QuadratureRule>> rules_;
  std::atomic<std::uint64_t> hits_{0};
  std::atomic<std::uint64_t> misses_{0};
  std::atomic<std::uint64_t> newton_steps_{0};
  std::atomic<std::uint64_t> certifications_{0};
};

RuleCache& default_rule_cache();

}  // namespace ballquad
