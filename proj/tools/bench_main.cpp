#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ballquad/bench.hpp"

using namespace ballquad;

namespace {

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// "1e-30", "0" or "2^-100".
Mag parse_tolerance(const std::string& text) {
  if (text.rfind("2^", 0) == 0) return Mag::pow2(std::stol(text.substr(2)));
  RealBall v = parse_real_ball(text, Precision(64));
  if (is_negative(v)) throw std::invalid_argument("tolerance must be non-negative");
  return mag_upper(v);
}

nlohmann::json to_json(const bench::BenchRow& row) {
  nlohmann::json j;
  j["id"] = row.id;
  j["prec"] = row.prec;
  j["value"] = to_string(row.result.value);
  j["rad"] = max_radius(row.result.value).to_string();
  j["converged"] = row.result.converged;
  j["evals"] = row.result.stats.evals;
  j["subs"] = row.result.stats.terminal_subintervals;
  j["ms"] = row.ms;
  if (row.verified) j["verified"] = *row.verified;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rigorous integration benchmarks"};
  std::string case_list;
  std::string prec_list = "32,64,333";
  std::string abs_tol, rel_tol;
  bench::Overrides overrides;
  long deg_limit = 0, eval_limit = 0, depth_limit = 0;
  bool json = false;
  bool verify = true;

  app.add_option("--cases", case_list, "Comma-separated case ids (default: all)");
  app.add_option("--prec", prec_list, "Comma-separated precisions in bits");
  app.add_option("--abs-tol", abs_tol, "Absolute tolerance, decimal or 2^-k");
  app.add_option("--rel-tol", rel_tol, "Relative tolerance, decimal or 2^-k");
  app.add_option("--deg-limit", deg_limit, "Maximum quadrature degree")->check(CLI::PositiveNumber);
  app.add_option("--eval-limit", eval_limit, "Maximum integrand evaluations")
      ->check(CLI::PositiveNumber);
  app.add_option("--depth-limit", depth_limit, "Maximum work queue length")
      ->check(CLI::PositiveNumber);
  app.add_flag("--heap", overrides.use_heap, "Use a global priority queue instead of a stack");
  app.add_flag("--json", json, "One JSON object per line");
  app.add_flag("--verify,!--no-verify", verify, "Check results against reference values");
  CLI11_PARSE(app, argc, argv);

  std::vector<const bench::BenchCase*> selected;
  std::vector<long> precs;
  try {
    if (case_list.empty()) {
      for (const auto& c : bench::cases()) selected.push_back(&c);
    } else {
      for (const auto& id : split(case_list)) selected.push_back(&bench::find_case(id));
    }
    for (const auto& p : split(prec_list)) {
      long v = std::stol(p);
      Precision check(v);
      precs.push_back(check.bits());
    }
    if (!abs_tol.empty()) overrides.abs_tol = parse_tolerance(abs_tol);
    if (!rel_tol.empty()) overrides.rel_tol = parse_tolerance(rel_tol);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  if (deg_limit > 0) overrides.deg_limit = deg_limit;
  if (eval_limit > 0) overrides.eval_limit = eval_limit;
  if (depth_limit > 0) overrides.depth_limit = depth_limit;

  bool all_ok = true;
  for (const auto* c : selected) {
    for (long p : precs) {
      bench::BenchRow row = bench::run_case(*c, p, overrides, verify);
      if (row.verified && !*row.verified) all_ok = false;
      if (json) {
        std::cout << to_json(row).dump() << std::endl;
      } else {
        std::cout << bench::format_row(row) << std::endl;
      }
    }
  }
  return all_ok ? 0 : 1;
}
