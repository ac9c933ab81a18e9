#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>

#include <CLI11.hpp>
#include <fmt/core.h>
#include <json.hpp>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include "pdmeans/pdmeans.hpp"

namespace pdmeans::cli {

namespace {

using ojson = nlohmann::ordered_json;

std::shared_ptr<spdlog::logger> make_logger(std::ostream& err) {
  auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err);
  auto log = std::make_shared<spdlog::logger>("pdmeans", sink);
  log->set_pattern("pdmeans [%l] %v");
  const char* env = std::getenv("PDMEANS_LOG");
  const std::string level = env ? env : "error";
  if (level == "debug") {
    log->set_level(spdlog::level::debug);
  } else if (level == "info") {
    log->set_level(spdlog::level::info);
  } else {
    log->set_level(spdlog::level::err);
  }
  return log;
}

ojson report_doc(const SolverReport& r) {
  ojson j;
  j["status"] = std::string(to_string(r.status));
  j["iterations"] = r.iterations;
  j["final_residual"] = r.final_residual;
  j["damping_activations"] = r.damping_activations;
  j["residuals"] = r.residuals;
  return j;
}

struct MeanArgs {
  std::string kind;
  std::string input;
  std::string output;
  std::optional<double> alpha;
  std::optional<double> z;
  std::optional<double> t;
  double tol = SolverConfig{}.tol;
  int max_iter = SolverConfig{}.max_iter;
};

struct DivergenceArgs {
  std::string kind;
  std::string a;
  std::string b;
  std::optional<double> alpha;
  std::optional<double> z;
};

struct TraceArgs {
  std::string input;
  double p = 1.0;
  double tol = SolverConfig{}.tol;
  int max_iter = SolverConfig{}.max_iter;
};

struct VerifyArgs {
  std::vector<std::string> theorems;
  int trials = CheckOptions{}.trials;
  std::uint64_t seed = 0;
  std::vector<int> dims = SamplingOptions{}.dims;
  std::vector<int> sizes = SamplingOptions{}.sizes;
  std::vector<double> conds = SamplingOptions{}.conds;
  std::vector<double> z_range;
  std::string report;
  int jobs = 1;
  bool explore = false;
  bool list = false;
};

struct GenArgs {
  int dim = 2;
  int n = 2;
  double cond = 10.0;
  std::uint64_t seed = 0;
  std::vector<double> weights;
  std::string output;
};

double require(const std::optional<double>& v, const char* flag, const std::string& kind) {
  if (!v) throw DomainError(fmt::format("--{} is required for kind '{}'", flag, kind));
  return *v;
}

int cmd_mean(const MeanArgs& a, const std::string& format, std::ostream& out,
             spdlog::logger& log) {
  const WeightedTuple in = read_tuple_file(a.input);
  SolverConfig cfg;
  cfg.tol = a.tol;
  cfg.max_iter = a.max_iter;
  cfg.validate();
  log.info("mean kind={} n={} dim={}", a.kind, in.matrices.size(), in.matrices.dim());

  ojson sidecar;
  sidecar["kind"] = a.kind;
  std::optional<PDMatrix> value;
  int code = kOk;
  std::string failure;
  try {
    if (a.kind == "arithmetic") {
      value = arithmetic_mean(in.weights, in.matrices);
      sidecar["report"] = report_doc(SolverReport{});
    } else if (a.kind == "harmonic") {
      value = harmonic_mean(in.weights, in.matrices);
      sidecar["report"] = report_doc(SolverReport{});
    } else if (a.kind == "right") {
      const AlphaZ p(require(a.alpha, "alpha", a.kind), require(a.z, "z", a.kind));
      sidecar["alpha"] = p.alpha();
      sidecar["z"] = p.z();
      ojson regions = ojson::array();
      for (Region r : region_classify(p)) regions.push_back(std::string(to_string(r)));
      sidecar["regions"] = regions;
      MeanResult r = right_mean(p, in.weights, in.matrices, cfg);
      sidecar["report"] = report_doc(r.report);
      value = std::move(r.value);
    } else if (a.kind == "power") {
      const double t = require(a.t, "t", a.kind);
      sidecar["t"] = t;
      MeanResult r = power_mean(t, in.weights, in.matrices, cfg);
      sidecar["report"] = report_doc(r.report);
      value = std::move(r.value);
    } else if (a.kind == "cartan") {
      MeanResult r = cartan_mean(in.weights, in.matrices, cfg);
      sidecar["report"] = report_doc(r.report);
      value = std::move(r.value);
    } else if (a.kind == "wasserstein") {
      WassersteinResult r = wasserstein_mean(in.weights, in.matrices, cfg);
      sidecar["report"] = report_doc(r.report);
      sidecar["traces"] = r.traces;
      value = std::move(r.value);
    } else {
      throw DomainError(fmt::format("unknown mean kind '{}'", a.kind));
    }
  } catch (const ConvergenceError& e) {
    sidecar["report"] = report_doc(e.report());
    failure = e.what();
    code = kSolverError;
  }

  const std::string report_text = sidecar.dump(2) + "\n";
  if (!a.output.empty()) {
    if (value) write_text_file(a.output, format_matrix(value->matrix()));
    write_text_file(a.output + ".report.json", report_text);
  }
  if (code != kOk) throw ConvergenceError(failure, SolverReport{});

  if (a.output.empty()) {
    out << format_matrix(value->matrix());
  } else if (format == "json") {
    out << report_text;
  } else {
    const ojson& r = sidecar["report"];
    out << fmt::format("{} mean written to {} ({} iterations, residual {:.3e})\n", a.kind,
                       a.output, r["iterations"].get<int>(), r["final_residual"].get<double>());
  }
  return kOk;
}

int cmd_divergence(const DivergenceArgs& a, const std::string& format, std::ostream& out) {
  const PDMatrix x = read_pd_matrix_file(a.a);
  const PDMatrix y = read_pd_matrix_file(a.b);
  double value = 0.0;
  if (a.kind == "phi") {
    value = phi_alpha_z(AlphaZ(require(a.alpha, "alpha", a.kind), require(a.z, "z", a.kind)), x, y);
  } else if (a.kind == "bw") {
    value = bures_wasserstein_distance(x, y);
  } else if (a.kind == "logdet") {
    value = log_det_alpha_divergence(a.alpha.value_or(0.0), x, y);
  } else {
    throw DomainError(fmt::format("unknown divergence kind '{}'", a.kind));
  }
  if (format == "json") {
    out << fmt::format("{{\"kind\": \"{}\", \"value\": {:.17g}}}\n", a.kind, value);
  } else {
    out << fmt::format("{:.17g}\n", value);
  }
  return kOk;
}

int cmd_trace(const TraceArgs& a, const std::string& format, std::ostream& out) {
  const WeightedTuple in = read_tuple_file(a.input);
  SolverConfig cfg;
  cfg.tol = a.tol;
  cfg.max_iter = a.max_iter;
  cfg.validate();
  const TraceInequality r = trace_inequality_check(a.p, in.weights, in.matrices, cfg);
  if (format == "json") {
    out << fmt::format("{{\"p\": {:.17g}, \"lhs\": {:.17g}, \"rhs\": {:.17g}, \"holds\": {}}}\n",
                       a.p, r.lhs, r.rhs, r.holds);
  } else {
    out << fmt::format("lhs {:.17g}\nrhs {:.17g}\n{}\n", r.lhs, r.rhs,
                       r.holds ? "holds" : "violated");
  }
  return r.holds ? kOk : kChecksFailed;
}

int cmd_verify(const VerifyArgs& a, const std::string& format, bool theorems_given,
               std::ostream& out, spdlog::logger& log) {
  if (a.list) {
    for (const auto& info : registered_theorems()) {
      out << fmt::format("{:<22} {}\n", info.id, info.statement);
    }
    return kOk;
  }
  CheckOptions opts;
  opts.trials = a.trials;
  opts.seed = a.seed;
  opts.sampling.dims = a.dims;
  opts.sampling.sizes = a.sizes;
  opts.sampling.conds = a.conds;
  if (!a.z_range.empty()) {
    if (a.z_range.size() != 2) throw DomainError("--z-range takes exactly two values: lo,hi");
    opts.sampling.z_range = std::pair{a.z_range[0], a.z_range[1]};
  }
  opts.jobs = a.jobs;
  opts.explore = a.explore;

  std::optional<std::vector<std::string>> ids;
  if (theorems_given) {
    ids.emplace();
    for (const auto& id : a.theorems) {
      if (!id.empty()) ids->push_back(id);
    }
  }
  log.info("verify seed={} trials={} jobs={}", a.seed, a.trials, a.jobs);
  const SuiteReport report = run_suite(ids, opts);
  const std::string json = report_json(report);
  if (!a.report.empty()) write_text_file(a.report, json);
  out << (format == "json" ? json : report_table(report));
  return report.passed() ? kOk : kChecksFailed;
}

int cmd_gen(const GenArgs& a, const std::string& format, std::ostream& out) {
  if (a.dim < 1 || a.n < 1) throw DomainError("--dim and --n must be positive");
  Rng rng(a.seed);
  std::vector<PDMatrix> items;
  for (int j = 0; j < a.n; ++j) items.push_back(random_pd(rng, a.dim, a.cond));
  const WeightVector w = a.weights.empty()
                             ? WeightVector::uniform(static_cast<std::size_t>(a.n))
                             : WeightVector(a.weights);
  const PDTuple tuple(std::move(items));
  require_same_length(w, tuple);
  const std::string text = format_tuple(w, tuple);
  if (a.output.empty()) {
    out << text;
  } else {
    write_text_file(a.output, text);
    if (format != "json") out << fmt::format("wrote {} matrices to {}\n", a.n, a.output);
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  auto log = make_logger(err);

  CLI::App app{"Means of positive definite matrices and verification of their inequalities",
               "pdmeans"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "table";
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"json", "table"}))
      ->capture_default_str();

  MeanArgs mean;
  auto* m = app.add_subcommand("mean", "Compute a mean of a weighted tuple file");
  m->add_option("--kind", mean.kind, "right|power|cartan|wasserstein|arithmetic|harmonic")
      ->required()
      ->check(CLI::IsMember({"right", "power", "cartan", "wasserstein", "arithmetic", "harmonic"}));
  m->add_option("--input", mean.input, "Weighted tuple JSON file")->required();
  m->add_option("--output", mean.output,
                "Result matrix file; the report goes to <output>.report.json");
  m->add_option("--alpha", mean.alpha, "alpha for kind=right (0 < alpha <= z)");
  m->add_option("--z", mean.z, "z for kind=right (z < 1)");
  m->add_option("--t", mean.t, "t for kind=power, in [-1, 1] without 0");
  m->add_option("--tol", mean.tol, "Relative residual tolerance")->capture_default_str();
  m->add_option("--max-iter", mean.max_iter, "Iteration limit")->capture_default_str();

  DivergenceArgs div;
  auto* d = app.add_subcommand("divergence", "Evaluate a divergence between two matrix files");
  d->add_option("--kind", div.kind, "phi|bw|logdet")
      ->required()
      ->check(CLI::IsMember({"phi", "bw", "logdet"}));
  d->add_option("a", div.a, "First matrix file")->required();
  d->add_option("b", div.b, "Second matrix file")->required();
  d->add_option("--alpha", div.alpha, "alpha (phi: 0 < alpha <= z < 1; logdet: -1 < alpha < 1, default 0)");
  d->add_option("--z", div.z, "z for kind=phi");

  TraceArgs tr;
  auto* tc = app.add_subcommand(
      "trace", "Compare tr R_{1-p/2,1/2}(w; A)^p with tr Omega(w; A^p) for 1 <= p < 2");
  tc->add_option("--input", tr.input, "Weighted tuple JSON file")->required();
  tc->add_option("--p", tr.p, "Exponent p in [1, 2)")->capture_default_str();
  tc->add_option("--tol", tr.tol, "Relative residual tolerance")->capture_default_str();
  tc->add_option("--max-iter", tr.max_iter, "Iteration limit")->capture_default_str();

  VerifyArgs ver;
  auto* v = app.add_subcommand("verify", "Run randomized checks of the inequalities and identities");
  auto* th = v->add_option("--theorems", ver.theorems, "Comma-separated check ids (default: all)")
                 ->delimiter(',');
  v->add_option("--trials", ver.trials, "Trials per check")->capture_default_str();
  v->add_option("--seed", ver.seed, "Suite seed")->capture_default_str();
  v->add_option("--dims", ver.dims, "Matrix dimensions to sample")->delimiter(',')->capture_default_str();
  v->add_option("--sizes", ver.sizes, "Tuple sizes to sample")->delimiter(',')->capture_default_str();
  v->add_option("--cond", ver.conds, "Condition numbers to sample")->delimiter(',')->capture_default_str();
  v->add_option("--z-range", ver.z_range, "Restrict sampled z to lo,hi")->delimiter(',');
  v->add_option("--report", ver.report, "Write the JSON report to this file");
  v->add_option("--jobs", ver.jobs, "Parallel trials (report bytes do not depend on it)")
      ->capture_default_str();
  v->add_flag("--explore", ver.explore,
              "Sample (alpha, z) over the whole domain; widened checks are informational");
  v->add_flag("--list", ver.list, "List the registered check ids and exit");

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Generate a random weighted tuple file");
  g->add_option("--dim", gen.dim, "Matrix dimension")->capture_default_str();
  g->add_option("--n", gen.n, "Number of matrices")->capture_default_str();
  g->add_option("--cond", gen.cond, "Condition number bound (>= 1)")->capture_default_str();
  g->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
  g->add_option("--weights", gen.weights, "Comma-separated weights (default uniform)")
      ->delimiter(',');
  g->add_option("--output", gen.output, "Output file (default: standard output)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "pdmeans: " << e.what() << "\n";
    return kParseError;
  }

  try {
    if (*m) return cmd_mean(mean, format, out, *log);
    if (*d) return cmd_divergence(div, format, out);
    if (*tc) return cmd_trace(tr, format, out);
    if (*v) return cmd_verify(ver, format, th->count() > 0, out, *log);
    if (*g) return cmd_gen(gen, format, out);
  } catch (const ParseError& e) {
    err << "pdmeans: parse error: " << e.what() << "\n";
    return kParseError;
  } catch (const DomainError& e) {
    err << "pdmeans: domain error: " << e.what() << "\n";
    return kDomainError;
  } catch (const DimensionError& e) {
    err << "pdmeans: domain error: " << e.what() << "\n";
    return kDomainError;
  } catch (const ConvergenceError& e) {
    err << "pdmeans: solver error: " << e.what() << "\n";
    return kSolverError;
  } catch (const NumericalError& e) {
    err << "pdmeans: solver error: " << e.what() << "\n";
    return kSolverError;
  } catch (const Error& e) {
    err << "pdmeans: " << e.what() << "\n";
    return kChecksFailed;
  }
  return kParseError;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace pdmeans::cli
