#include <fmt/core.h>
#include <json.hpp>

#include "pdmeans/verify.hpp"

namespace pdmeans {

namespace {

using ojson = nlohmann::ordered_json;

ojson region_json(const RegionStats& s) {
  ojson j;
  j["solves"] = s.solves;
  j["failures"] = s.failures;
  j["mean_iterations"] =
      s.solves > 0 ? static_cast<double>(s.total_iterations) / s.solves : 0.0;
  j["max_iterations"] = s.max_iterations;
  j["damping_activations"] = s.damping_activations;
  return j;
}

ojson check_json(const TheoremCheck& c) {
  ojson j;
  j["theorem_id"] = c.theorem_id;
  j["trials"] = c.trials;
  j["violations"] = c.violations;
  j["worst_margin"] = c.worst_margin ? ojson(*c.worst_margin) : ojson(nullptr);
  j["failing_seeds"] = c.failing_seeds;
  ojson parts = ojson::object();
  for (const auto& [name, n] : c.part_violations) parts[name] = n;
  j["part_violations"] = parts;
  ojson regions = ojson::array();
  for (Region r : c.region_constraint) regions.push_back(std::string(to_string(r)));
  j["region_constraint"] = regions;
  j["informational"] = c.informational;
  ojson stats;
  stats["solver_failures"] = c.solver_failures;
  stats["solver_failure_seeds"] = c.solver_failure_seeds;
  ojson right = ojson::object();
  for (const auto& [r, s] : c.region_stats) right[std::string(to_string(r))] = region_json(s);
  stats["right_mean"] = right;
  j["solver_stats"] = stats;
  return j;
}

}  // namespace

std::string report_json(const SuiteReport& report) {
  ojson doc;
  doc["suite_seed"] = report.suite_seed;
  doc["checks"] = ojson::array();
  for (const auto& c : report.checks) doc["checks"].push_back(check_json(c));
  return doc.dump(2) + "\n";
}

std::string report_table(const SuiteReport& report) {
  std::string out = fmt::format("suite seed {}\n", report.suite_seed);
  out += fmt::format("{:<22} {:>6} {:>10} {:>8} {:>13}  {}\n", "check", "trials", "violations",
                     "failures", "worst margin", "status");
  for (const auto& c : report.checks) {
    const std::string margin = c.worst_margin ? fmt::format("{:.3e}", *c.worst_margin) : "-";
    const char* status = c.passed() ? "ok" : (c.informational ? "info" : "FAIL");
    out += fmt::format("{:<22} {:>6} {:>10} {:>8} {:>13}  {}\n", c.theorem_id, c.trials,
                       c.violations, c.solver_failures, margin, status);
    for (const auto& [name, n] : c.part_violations) {
      out += fmt::format("    {}: {} violation(s)\n", name, n);
    }
  }
  out += report.passed() ? "all checks passed\n" : "some checks failed\n";
  return out;
}

}  // namespace pdmeans
