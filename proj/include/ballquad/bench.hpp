#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ballquad/integrator.hpp"

namespace ballquad::bench {

enum class Check {
  /// The result must contain the reference ball.
  Contains,
  /// The reference is a rounded decimal ball; the result must overlap it.
  Overlaps,
};

struct BenchCase {
  std::string id;
  std::string formula;
  Integrand f;
  /// Integration path (a, b) at precision p, after truncation.
  std::function<std::pair<ComplexBox, ComplexBox>(long p)> path;
  /// Reference enclosure at precision p.
  std::function<ComplexBox(long p)> reference;
  Check check = Check::Contains;
  std::string provenance;
  /// Per-case adjustments of the default options.
  std::function<void(IntegrationOptions&)> tune;
};

/// I0, I1, I2, I4, I5, E0..E4, D0..D3, X-neg, X-pos in that order.
const std::vector<BenchCase>& cases();
/// Throws std::invalid_argument for an unknown id.
const BenchCase& find_case(const std::string& id);

std::pair<ComplexBox, ComplexBox> truncation(const std::string& id, long p);
ComplexBox reference_value(const std::string& id, long p);
/// Working precision used for reference values at target precision p.
long reference_precision(long p);

struct Overrides {
  std::optional<Mag> abs_tol;
  std::optional<Mag> rel_tol;
  std::optional<long> deg_limit;
  std::optional<long> eval_limit;
  std::optional<long> depth_limit;
  bool use_heap = false;
};

IntegrationOptions options_for(const BenchCase& c, long p, const Overrides& o);

struct BenchRow {
  std::string id;
  long prec = 0;
  IntegrationResult result;
  double ms = 0.0;
  /// Empty when verification was skipped.
  std::optional<bool> verified;
};

BenchRow run_case(const BenchCase& c, long p, const Overrides& o, bool verify,
                  RuleCache* cache = nullptr);
bool verify_result(const BenchCase& c, long p, const ComplexBox& value);

/// One human-readable report line.
std::string format_row(const BenchRow& row);

}  // namespace ballquad::bench
