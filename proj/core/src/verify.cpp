#include "pdmeans/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include <fmt/core.h>

#include "pdmeans/error.hpp"
#include "verify_internal.hpp"

namespace pdmeans {

namespace {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void validate(const CheckOptions& opts) {
  if (opts.trials < 0) throw DomainError("trial count must be nonnegative");
  if (opts.jobs < 1) throw DomainError("jobs must be at least 1");
  if (!(opts.slack >= 0.0)) throw DomainError("slack must be nonnegative");
  opts.solver.validate();
  const auto& s = opts.sampling;
  if (s.dims.empty() || s.sizes.empty() || s.conds.empty()) {
    throw DomainError("sampling lists (dims, sizes, conds) must be nonempty");
  }
  for (int d : s.dims) {
    if (d < 1) throw DomainError(fmt::format("dimension must be positive, got {}", d));
  }
  for (int n : s.sizes) {
    if (n < 2) throw DomainError(fmt::format("tuple size must be at least 2, got {}", n));
  }
  for (double c : s.conds) {
    if (!(c >= 1.0) || !std::isfinite(c)) {
      throw DomainError(fmt::format("condition number must be >= 1, got {}", c));
    }
  }
}

// The z interval a check samples from, after applying a requested range and
// the explore flag.
std::optional<std::pair<double, double>> resolve_z(const detail::TheoremEntry& e,
                                                   const CheckOptions& opts) {
  if (!e.info.z_interval) return std::nullopt;
  if (opts.explore) return detail::kDomainZ;
  if (!opts.sampling.z_range) return e.info.z_interval;
  const auto [lo, hi] = *opts.sampling.z_range;
  const auto [clo, chi] = *e.z_claim;
  if (!(lo <= hi) || !(lo >= clo) || !(hi < chi) || !(lo > 0.0)) {
    throw DomainError(fmt::format(
        "{} is stated for z in [{}, {}); requested z range [{}, {}] violates that precondition",
        e.info.id, clo, chi, lo, hi));
  }
  return opts.sampling.z_range;
}

bool widened(const detail::TheoremEntry& e, const CheckOptions& opts) {
  return opts.explore && e.info.z_interval && *e.info.z_interval != detail::kDomainZ;
}

TrialOutcome run_resolved(const detail::TheoremEntry& e, std::uint64_t seed,
                          const CheckOptions& opts,
                          const std::optional<std::pair<double, double>>& z) {
  TrialOutcome out;
  out.seed = seed;
  detail::TrialContext ctx(seed, opts, z, out);
  try {
    e.body(ctx);
  } catch (const Error& err) {
    out.solver_failure = true;
    out.failure_message = err.what();
    out.parts.clear();
  }
  return out;
}

void merge(RegionStats& into, const RegionStats& from) {
  into.solves += from.solves;
  into.failures += from.failures;
  into.total_iterations += from.total_iterations;
  into.max_iterations = std::max(into.max_iterations, from.max_iterations);
  into.damping_activations += from.damping_activations;
}

}  // namespace

std::string_view to_string(Region r) {
  switch (r) {
    case Region::A:
      return "A";
    case Region::B:
      return "B";
    case Region::C:
      return "C";
  }
  return "?";
}

std::set<Region> region_classify(const AlphaZ& p) {
  const double a = p.alpha();
  const double z = p.z();
  if (!p.in_divergence_domain()) {
    throw DomainError(fmt::format("(alpha, z) = ({}, {}) outside 0 < alpha <= z < 1", a, z));
  }
  std::set<Region> out;
  if (z >= std::max(1.0 - a, a)) out.insert(Region::A);
  if (z >= 0.5 && z <= 1.0 - a) out.insert(Region::B);
  if (a <= z && z <= 0.5) out.insert(Region::C);
  return out;
}

bool TrialOutcome::violated() const {
  return std::any_of(parts.begin(), parts.end(), [](const CheckPart& p) { return p.violated; });
}

double TrialOutcome::worst_margin() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& p : parts) m = std::min(m, p.margin);
  return m;
}

const std::vector<TheoremInfo>& registered_theorems() {
  static const std::vector<TheoremInfo> infos = [] {
    std::vector<TheoremInfo> out;
    for (const auto& e : detail::theorem_entries()) out.push_back(e.info);
    return out;
  }();
  return infos;
}

std::string canonical_theorem_id(std::string_view id) { return detail::find_entry(id).info.id; }

std::uint64_t trial_seed(std::uint64_t suite_seed, std::string_view id, int index) {
  return mix_seed(mix_seed(suite_seed ^ fnv1a(id)) + static_cast<std::uint64_t>(index));
}

TrialOutcome run_trial(std::string_view id, std::uint64_t seed, const CheckOptions& opts) {
  validate(opts);
  const auto& e = detail::find_entry(id);
  return run_resolved(e, seed, opts, resolve_z(e, opts));
}

TheoremCheck check_theorem(std::string_view id, const CheckOptions& opts) {
  validate(opts);
  const auto& e = detail::find_entry(id);
  const auto z = resolve_z(e, opts);

  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(opts.trials));
  auto run_index = [&](int i) {
    outcomes[static_cast<std::size_t>(i)] =
        run_resolved(e, trial_seed(opts.seed, e.info.id, i), opts, z);
  };
  const int workers = std::min(opts.jobs, std::max(1, opts.trials));
  if (workers <= 1) {
    for (int i = 0; i < opts.trials; ++i) run_index(i);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int k = 0; k < workers; ++k) {
      pool.emplace_back([&] {
        for (int i = next++; i < opts.trials; i = next++) run_index(i);
      });
    }
    for (auto& t : pool) t.join();
  }

  TheoremCheck c;
  c.theorem_id = e.info.id;
  c.trials = opts.trials;
  c.region_constraint =
      widened(e, opts) ? std::set<Region>{Region::A, Region::B, Region::C} : e.info.regions;
  c.informational = widened(e, opts);
  for (const auto& o : outcomes) {
    for (const auto& [g, s] : o.region_stats) merge(c.region_stats[g], s);
    if (o.solver_failure) {
      ++c.solver_failures;
      c.solver_failure_seeds.push_back(o.seed);
      continue;
    }
    if (!o.parts.empty()) {
      const double m = o.worst_margin();
      c.worst_margin = c.worst_margin ? std::min(*c.worst_margin, m) : m;
    }
    if (o.violated()) {
      ++c.violations;
      c.failing_seeds.push_back(o.seed);
      for (const auto& p : o.parts) {
        if (p.violated) ++c.part_violations[p.name];
      }
    }
  }
  return c;
}

bool SuiteReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const TheoremCheck& c) { return c.informational || c.passed(); });
}

SuiteReport run_suite(const std::optional<std::vector<std::string>>& ids,
                      const CheckOptions& opts) {
  validate(opts);
  std::vector<std::string> chosen;
  if (ids) {
    for (const auto& id : *ids) chosen.push_back(canonical_theorem_id(id));
  } else {
    for (const auto& info : registered_theorems()) chosen.push_back(info.id);
  }
  SuiteReport report;
  report.suite_seed = opts.seed;
  for (const auto& id : chosen) report.checks.push_back(check_theorem(id, opts));
  return report;
}

}  // namespace pdmeans
