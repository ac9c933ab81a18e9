#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pdmeans/divergences.hpp"
#include "pdmeans/solver.hpp"

namespace pdmeans {

/// Parameter regions of the right mean, all closed inside (0, 1)^2:
///   A: z >= max(1 - alpha, alpha)
///   B: 1/2 <= z <= 1 - alpha
///   C: alpha <= z <= 1/2
enum class Region { A, B, C };

std::string_view to_string(Region r);

/// Every region containing (alpha, z). Throws DomainError outside
/// 0 < alpha <= z < 1.
std::set<Region> region_classify(const AlphaZ& p);

struct SamplingOptions {
  std::vector<int> dims{2, 3, 4};
  std::vector<int> sizes{2, 3, 5};
  std::vector<double> conds{10.0, 1e3};
  /// Requested z interval. Unset means the theorem's own interval; when set
  /// it must lie inside that interval (DomainError otherwise).
  std::optional<std::pair<double, double>> z_range;
};

struct CheckOptions {
  int trials = 200;
  std::uint64_t seed = 0;
  SamplingOptions sampling;
  SolverConfig solver;
  double slack = 1e-8;
  int jobs = 1;
  /// Sample (alpha, z) over the whole divergence domain even where a
  /// theorem does not claim anything. Such checks are marked informational.
  bool explore = false;
};

/// Right-mean solver statistics for one region.
struct RegionStats {
  int solves = 0;
  int failures = 0;
  long long total_iterations = 0;
  int max_iterations = 0;
  long long damping_activations = 0;
};

/// One compared relation inside a trial. Violated iff margin < -tolerance
/// (or, for strict relations, iff margin <= 0).
struct CheckPart {
  std::string name;
  double margin;
  double tolerance;
  bool violated;
};

struct TrialOutcome {
  std::uint64_t seed = 0;
  bool solver_failure = false;
  std::string failure_message;
  std::vector<CheckPart> parts;
  std::map<Region, RegionStats> region_stats;

  bool violated() const;
  /// Smallest part margin; +inf when no part was evaluated.
  double worst_margin() const;
};

struct TheoremCheck {
  std::string theorem_id;
  int trials = 0;
  int violations = 0;
  int solver_failures = 0;
  /// Smallest margin over all evaluated parts (nullopt if none ran).
  std::optional<double> worst_margin;
  /// Seeds of trials with a violation; run_trial reproduces each.
  std::vector<std::uint64_t> failing_seeds;
  std::vector<std::uint64_t> solver_failure_seeds;
  std::map<std::string, int> part_violations;
  std::map<Region, RegionStats> region_stats;
  std::set<Region> region_constraint;
  bool informational = false;

  bool passed() const { return violations == 0 && solver_failures == 0; }
};

struct TheoremInfo {
  std::string id;
  std::string statement;
  std::set<Region> regions;
  /// z interval sampled by default (for checks that sample (alpha, z)).
  std::optional<std::pair<double, double>> z_interval;
};

const std::vector<TheoremInfo>& registered_theorems();

/// Resolves an id or alias to its registered id; DomainError if unknown.
std::string canonical_theorem_id(std::string_view id);

/// Seed of trial `index` of check `id` in a suite seeded with `suite_seed`.
std::uint64_t trial_seed(std::uint64_t suite_seed, std::string_view id, int index);

/// Runs one trial from its own seed, as recorded in failing_seeds.
TrialOutcome run_trial(std::string_view id, std::uint64_t seed, const CheckOptions& opts);

TheoremCheck check_theorem(std::string_view id, const CheckOptions& opts);

struct SuiteReport {
  std::uint64_t suite_seed = 0;
  std::vector<TheoremCheck> checks;

  /// No violations and no solver failures outside informational checks.
  bool passed() const;
};

/// Runs the listed checks in order; nullopt runs every registered check.
SuiteReport run_suite(const std::optional<std::vector<std::string>>& ids,
                      const CheckOptions& opts);

std::string report_json(const SuiteReport& report);
std::string report_table(const SuiteReport& report);

}  // namespace pdmeans
