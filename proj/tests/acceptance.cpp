// Acceptance gate. Prints one PASS/FAIL line per criterion; exit status is
// nonzero if any selected criterion fails.
//
//   pdmeans_acceptance                 run criteria 1-9
//   pdmeans_acceptance --criterion 4   run one criterion

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <functional>
#include <set>
#include <span>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "pdmeans/pdmeans.hpp"

#ifdef PDMEANS_HAVE_CLI
#include "cli.hpp"
#endif

namespace {

using namespace pdmeans;

// Tolerances and sample sizes of the gate.
constexpr double kCommutingTol = 1e-9;
constexpr double kCertificateTol = 1e-9;
constexpr double kCrossSolverTol = 1e-7;
constexpr double kSuiteSlack = 1e-8;
constexpr double kTraceStepTol = 1e-10;
constexpr double kTraceBoundTol = 1e-8;
constexpr double kMonotoneRate = 0.95;

constexpr int kCommutingTrials = 200;
constexpr int kCertificateTrials = 200;
constexpr int kCrossSolverTrials = 100;
constexpr int kTheoremTrials = 200;
constexpr int kLemmaTrials = 200;
constexpr int kChainTrials = 100;
constexpr int kTraceRuns = 100;
constexpr int kDivergenceTrials = 200;
constexpr std::uint64_t kSeed = 20240601;

struct Verdict {
  bool pass;
  std::string detail;
};

std::string fmt_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

/// (alpha, z) drawn inside one region: 0 -> A, 1 -> B, 2 -> C.
AlphaZ sample_in_region(Rng& rng, int region) {
  switch (region) {
    case 0: {
      const double z = rng.uniform(0.55, 0.95);
      return AlphaZ(rng.uniform(1 - z, z), z);
    }
    case 1: {
      const double z = rng.uniform(0.5, 0.95);
      return AlphaZ(rng.uniform(0.05, std::min(z, 1 - z)), z);
    }
    default: {
      const double z = rng.uniform(0.25, 0.5);
      return AlphaZ(rng.uniform(0.05, z), z);
    }
  }
}

RealVector log_uniform_spectrum(Rng& rng, int dim, double cond) {
  RealVector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = std::exp(rng.uniform(-std::log(cond), 0.0));
  return v;
}

PDTuple random_tuple(Rng& rng, int dim, int n, double cond) {
  std::vector<PDMatrix> items;
  for (int j = 0; j < n; ++j) items.push_back(random_pd(rng, dim, cond));
  return PDTuple(std::move(items));
}

// 1. Commuting closed form on diagonal tuples, oracle evaluated per entry.
Verdict commuting_oracle() {
  Rng rng(kSeed);
  int failures = 0, solver_failures = 0;
  double worst = 0.0;
  int region_hits[3] = {0, 0, 0};
  for (int trial = 0; trial < kCommutingTrials; ++trial) {
    const int region = trial % 3;
    const AlphaZ p = sample_in_region(rng, region);
    const std::set<Region> in = region_classify(p);
    if (in.count(static_cast<Region>(region)) == 0) return {false, "region sampler out of region"};
    ++region_hits[region];
    const int dim = rng.uniform_int(2, 6);
    const int n = rng.uniform_int(2, 5);
    const double cond = rng.uniform(0.0, 1.0) < 0.5 ? 10.0 : 1e3;
    std::vector<RealVector> diags;
    std::vector<PDMatrix> items;
    for (int j = 0; j < n; ++j) {
      diags.push_back(log_uniform_spectrum(rng, dim, cond));
      items.push_back(PDMatrix::diagonal(std::span<const double>(diags.back().data(), dim)));
    }
    const WeightVector w(random_weights(rng, n));
    const double a = p.alpha();
    double err = 0.0;
    try {
      const PDMatrix x = right_mean(p, w, PDTuple(items)).value;
      for (int i = 0; i < dim; ++i) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += w[static_cast<std::size_t>(j)] * std::pow(diags[j](i), 1 - a);
        const double expected = std::pow(s, 1 / (1 - a));
        err = std::max(err, std::abs(x.matrix()(i, i).real() - expected) / expected);
      }
      const Matrix off = x.matrix() - Matrix(x.matrix().diagonal().asDiagonal());
      err = std::max(err, off.cwiseAbs().maxCoeff() / x.lambda_max());
    } catch (const Error&) {
      ++solver_failures;
      continue;
    }
    worst = std::max(worst, err);
    if (!(err <= kCommutingTol)) ++failures;
  }
  std::ostringstream d;
  d << kCommutingTrials << " diagonal tuples (A/B/C " << region_hits[0] << "/" << region_hits[1] << "/"
    << region_hits[2] << "), worst relative error " << fmt_double(worst) << " (tol " << kCommutingTol
    << "), failures " << failures << ", solver failures " << solver_failures;
  return {failures == 0 && solver_failures == 0 && worst <= kCommutingTol, d.str()};
}

// 2. Both residual forms certify every converged right mean.
Verdict fixed_point_certificate() {
  Rng rng(kSeed + 2);
  int converged = 0, solver_failures = 0, bad = 0;
  double worst_picard = 0.0, worst_geom = 0.0;
  for (int trial = 0; trial < kCertificateTrials; ++trial) {
    const AlphaZ p = sample_in_region(rng, trial % 3);
    const int dim = rng.uniform_int(2, 4);
    const int n = rng.pick(std::vector<int>{2, 3, 5});
    const double cond = rng.pick(std::vector<double>{10.0, 1e3});
    const PDTuple tuple = random_tuple(rng, dim, n, cond);
    const WeightVector w(random_weights(rng, n));
    PDMatrix x = PDMatrix::identity(dim);
    try {
      x = right_mean(p, w, tuple).value;
    } catch (const ConvergenceError&) {
      ++solver_failures;
      continue;
    }
    ++converged;
    const double r1 = right_mean_residual(p, w, tuple, x);
    const double r2 = right_mean_residual_geomform(p, w, tuple, x);
    worst_picard = std::max(worst_picard, r1);
    worst_geom = std::max(worst_geom, r2);
    if (!(r1 < kCertificateTol && r2 < kCertificateTol)) ++bad;
  }
  std::ostringstream d;
  d << converged << "/" << kCertificateTrials << " converged, worst residual " << fmt_double(worst_picard)
    << " (defining form) / " << fmt_double(worst_geom) << " (geometric form), tol " << kCertificateTol
    << ", non-certified " << bad << ", solver failures " << solver_failures;
  return {bad == 0 && converged > 0, d.str()};
}

// 3. R_{1/2,1/2} against the K-map solver.
Verdict cross_solver() {
  Rng rng(kSeed + 3);
  int failures = 0;
  double worst = 0.0;
  for (int trial = 0; trial < kCrossSolverTrials; ++trial) {
    const int dim = rng.uniform_int(2, 4);
    const int n = rng.pick(std::vector<int>{2, 3, 5});
    const PDTuple tuple = random_tuple(rng, dim, n, rng.pick(std::vector<double>{10.0, 1e3}));
    const WeightVector w(random_weights(rng, n));
    try {
      const PDMatrix r = right_mean(AlphaZ(0.5, 0.5), w, tuple).value;
      const PDMatrix omega = wasserstein_mean(w, tuple).value;
      const double d = relative_difference(r.matrix(), omega.matrix());
      worst = std::max(worst, d);
      if (!(d <= kCrossSolverTol)) ++failures;
    } catch (const Error&) {
      ++failures;
    }
  }
  std::ostringstream d;
  d << kCrossSolverTrials << " tuples, worst relative difference " << fmt_double(worst) << " (tol "
    << kCrossSolverTol << "), failures " << failures;
  return {failures == 0, d.str()};
}

CheckOptions suite_options(int trials) {
  CheckOptions opts;
  opts.trials = trials;
  opts.seed = kSeed;
  opts.slack = kSuiteSlack;
  return opts;
}

Verdict run_checks(const std::vector<std::string>& ids, int trials) {
  const CheckOptions opts = suite_options(trials);
  bool pass = true;
  std::ostringstream d;
  d << ids.size() << " checks x " << trials << " trials";
  for (const std::string& id : ids) {
    const TheoremCheck c = check_theorem(id, opts);
    pass = pass && c.passed();
    d << "\n    " << (c.passed() ? "ok  " : "FAIL") << " " << c.theorem_id << ": violations " << c.violations
      << ", solver failures " << c.solver_failures << ", worst margin "
      << (c.worst_margin ? fmt_double(*c.worst_margin) : std::string("n/a"));
    for (const auto& [part, count] : c.part_violations) d << "\n         " << part << ": " << count;
  }
  return {pass, d.str()};
}

// 4. Inequality checks.
Verdict theorem_suite() {
  return run_checks({"T:A-R", "T:inequalities-2", "T:Renyi-power", "C:log-majorization", "remark-scaled-bounds",
                     "T:Wass-Renyi", "T:Tensor", "T:Hada1", "T:Hada2", "C:Hadamard-scaled"},
                    kTheoremTrials);
}

// 5. Structural properties and order bounds.
Verdict lemma_suite() {
  return run_checks({"properties-1", "properties-2", "properties-3", "properties-4", "properties-5",
                     "properties-6", "properties-7", "properties-8", "L:boundedness"},
                    kLemmaTrials);
}

// 6. Power-mean chain and approach to the Cartan mean.
Verdict power_chain() {
  Verdict chain = run_checks({"para-monotonicity"}, kChainTrials);
  Rng rng(kSeed + 6);
  int monotone = 0, failures = 0;
  for (int trial = 0; trial < kChainTrials; ++trial) {
    const int dim = rng.uniform_int(2, 4);
    const int n = rng.pick(std::vector<int>{2, 3, 5});
    const PDTuple tuple = random_tuple(rng, dim, n, rng.pick(std::vector<double>{10.0, 1e3}));
    const WeightVector w(random_weights(rng, n));
    try {
      const PDMatrix lambda = cartan_mean(w, tuple).value;
      double prev = INFINITY;
      bool ok = true;
      for (double t : {0.5, 0.25, 0.1, 0.05}) {
        const double d = thompson_distance(power_mean(t, w, tuple).value, lambda);
        ok = ok && d <= prev;
        prev = d;
      }
      monotone += ok ? 1 : 0;
    } catch (const Error&) {
      ++failures;
    }
  }
  const double rate = static_cast<double>(monotone) / kChainTrials;
  std::ostringstream d;
  d << chain.detail << "\n    d_T(P_t, Cartan) nonincreasing over t = 0.5, 0.25, 0.1, 0.05 in " << monotone << "/"
    << kChainTrials << " trials (required rate " << kMonotoneRate << "), solver failures " << failures;
  return {chain.pass && rate >= kMonotoneRate && failures == 0, d.str()};
}

// 7. Trace along K-map iterates from three starts, bounded by tr of R_{1/2,1/2}.
Verdict kmap_traces() {
  Rng rng(kSeed + 7);
  int failures = 0;
  double worst_step = 0.0, worst_excess = -INFINITY;
  for (int run = 0; run < kTraceRuns; ++run) {
    const int dim = rng.uniform_int(2, 4);
    const int n = rng.pick(std::vector<int>{2, 3, 5});
    const PDTuple tuple = random_tuple(rng, dim, n, rng.pick(std::vector<double>{10.0, 1e3}));
    const WeightVector w(random_weights(rng, n));
    const std::vector<PDMatrix> starts{PDMatrix::identity(dim), arithmetic_mean(w, tuple),
                                       random_pd(rng, dim, 1e2)};
    try {
      // Reference from the other solver.
      const double tr_omega = trace(right_mean(AlphaZ(0.5, 0.5), w, tuple).value.hermitian());
      bool ok = true;
      for (const PDMatrix& s0 : starts) {
        const WassersteinResult r = wasserstein_mean(w, tuple, {}, s0);
        // Monotone from S_1 on; S_0 is arbitrary.
        for (std::size_t k = 2; k < r.traces.size(); ++k) {
          const double drop = r.traces[k - 1] - r.traces[k];
          worst_step = std::max(worst_step, drop);
          ok = ok && drop <= kTraceStepTol;
        }
        const double excess = r.traces.back() - tr_omega;
        worst_excess = std::max(worst_excess, excess);
        ok = ok && excess <= kTraceBoundTol;
      }
      failures += ok ? 0 : 1;
    } catch (const Error&) {
      ++failures;
    }
  }
  std::ostringstream d;
  d << kTraceRuns << " runs x 3 starts, largest trace decrease " << fmt_double(worst_step) << " (tol "
    << kTraceStepTol << "), largest final excess over tr Omega " << fmt_double(worst_excess) << " (tol "
    << kTraceBoundTol << "), failing runs " << failures;
  return {failures == 0, d.str()};
}

// 8. Two verify runs with identical flags give identical report bytes.
Verdict determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "pdmeans_acceptance_c8";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::string reports[2];
  std::string stdouts[2];
  int codes[2] = {0, 0};
  for (int k = 0; k < 2; ++k) {
    const fs::path report = dir / ("report" + std::to_string(k) + ".json");
#ifdef PDMEANS_HAVE_CLI
    std::ostringstream out, err;
    codes[k] = cli::run({"--format", "json", "verify", "--theorems",
                         "properties-3,T:Tensor,T:iteration,divergence-axioms,C:log-majorization", "--trials", "20",
                         "--seed", "42", "--jobs", "2", "--report", report.string()},
                        out, err);
    stdouts[k] = out.str();
#else
    CheckOptions opts;
    opts.trials = 20;
    opts.seed = 42;
    opts.jobs = 2;
    write_text_file(report, report_json(run_suite(
                                std::vector<std::string>{"properties-3", "T:Tensor", "T:iteration",
                                                         "divergence-axioms", "C:log-majorization"},
                                opts)));
#endif
    reports[k] = read_text_file(report);
  }
  fs::remove_all(dir);
  const bool same = !reports[0].empty() && reports[0] == reports[1] && stdouts[0] == stdouts[1] &&
                    codes[0] == codes[1];
  std::ostringstream d;
  d << "two verify runs (seed 42, 5 checks x 20 trials): report " << reports[0].size() << " bytes, "
    << (same ? "byte-identical" : "DIFFERENT") << ", exit codes " << codes[0] << "/" << codes[1];
  return {same, d.str()};
}

// 9. Divergence axioms.
Verdict divergence_axioms() { return run_checks({"divergence-axioms"}, kDivergenceTrials); }

struct Criterion {
  int number;
  const char* title;
  std::function<Verdict()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {1, "commuting closed form", commuting_oracle},
      {2, "fixed-point certificate", fixed_point_certificate},
      {3, "right mean at (1/2, 1/2) equals Wasserstein mean", cross_solver},
      {4, "inequality suite", theorem_suite},
      {5, "property suite", lemma_suite},
      {6, "power-mean chain", power_chain},
      {7, "K-map trace monotonicity", kmap_traces},
      {8, "report determinism", determinism},
      {9, "divergence axioms", divergence_axioms},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: pdmeans_acceptance [--criterion N]\n";
      return 2;
    }
  }
  bool all_pass = true;
  bool ran = false;
  for (const Criterion& c : criteria()) {
    if (only != 0 && c.number != only) continue;
    ran = true;
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    all_pass = all_pass && v.pass;
    std::cout << "criterion " << c.number << ": " << (v.pass ? "PASS" : "FAIL") << "  " << c.title << " -- "
              << v.detail << std::endl;
  }
  if (!ran) {
    std::cerr << "no criterion " << only << "\n";
    return 2;
  }
  return all_pass ? 0 : 1;
}
