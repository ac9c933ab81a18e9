#include "fixed_point.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <optional>

#include <fmt/core.h>

#include "pdmeans/error.hpp"

namespace pdmeans::detail {

namespace {

constexpr int kAndersonDepth = 5;
constexpr double kThetaFloor = 0x1p-20;
constexpr double kDivergenceFactor = 10.0;

Eigen::VectorXd flatten(const Matrix& m) {
  const Eigen::Index n = m.size();
  Eigen::VectorXd v(2 * n);
  v.head(n) = m.reshaped().real();
  v.tail(n) = m.reshaped().imag();
  return v;
}

Matrix unflatten(const Eigen::VectorXd& v, Eigen::Index dim) {
  const Eigen::Index n = dim * dim;
  Matrix m(dim, dim);
  m.reshaped() = v.head(n).cast<Complex>() + Complex(0, 1) * v.tail(n).cast<Complex>();
  return m;
}

struct Iterate {
  PDMatrix x;
  PDMatrix gx;
  double residual;
};

std::optional<Iterate> evaluate(const FixedPointMap& map, const Matrix& candidate) {
  try {
    PDMatrix x(hermitian_part(candidate));
    PDMatrix gx = map(x);
    const double r = fixed_point_residual(x, gx);
    if (!std::isfinite(r)) return std::nullopt;
    return Iterate{std::move(x), std::move(gx), r};
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace

double fixed_point_residual(const PDMatrix& x, const PDMatrix& gx) {
  return (x.matrix() - gx.matrix()).norm() / x.matrix().norm();
}

MeanResult solve_fixed_point(const FixedPointMap& map, PDMatrix x0, double tau,
                             const SolverConfig& cfg, const char* what) {
  cfg.validate();
  SolverReport report;

  PDMatrix gx0 = map(x0);
  Iterate cur{std::move(x0), std::move(gx0), 0.0};
  cur.residual = fixed_point_residual(cur.x, cur.gx);

  double theta = cfg.damping;
  double running_min = cur.residual;
  int streak = 0;
  std::deque<Eigen::VectorXd> f_hist;
  std::deque<Eigen::VectorXd> g_hist;

  const Eigen::Index dim = cur.x.dim();

  while (!(cur.residual < cfg.tol)) {
    if (report.iterations >= cfg.max_iter) {
      report.status = SolverStatus::max_iter_exceeded;
      report.final_residual = cur.residual;
      throw ConvergenceError(
          fmt::format("{}: no convergence after {} iterations (residual {:.3e}, tol {:.1e})", what,
                      report.iterations, cur.residual, cfg.tol),
          std::move(report));
    }

    const PDMatrix step = geometric_mean_two(cur.x, cur.gx, theta * tau);
    const Eigen::VectorXd step_vec = flatten(step.matrix());
    f_hist.push_back(step_vec - flatten(cur.x.matrix()));
    g_hist.push_back(step_vec);
    while (static_cast<int>(f_hist.size()) > kAndersonDepth + 1) {
      f_hist.pop_front();
      g_hist.pop_front();
    }

    std::optional<Iterate> next;
    if (f_hist.size() >= 2) {
      const auto cols = static_cast<Eigen::Index>(f_hist.size() - 1);
      Eigen::MatrixXd df(step_vec.size(), cols);
      Eigen::MatrixXd dg(step_vec.size(), cols);
      for (Eigen::Index k = 0; k < cols; ++k) {
        df.col(k) = f_hist[static_cast<std::size_t>(k + 1)] - f_hist[static_cast<std::size_t>(k)];
        dg.col(k) = g_hist[static_cast<std::size_t>(k + 1)] - g_hist[static_cast<std::size_t>(k)];
      }
      const Eigen::VectorXd gamma = df.completeOrthogonalDecomposition().solve(f_hist.back());
      if (gamma.allFinite()) {
        auto accelerated = evaluate(map, unflatten(step_vec - dg * gamma, dim));
        if (accelerated && accelerated->residual < cur.residual) next = std::move(accelerated);
      }
    }

    double rejected_residual = cur.residual;
    if (!next) {
      auto plain = evaluate(map, step.matrix());
      if (plain && plain->residual < cur.residual) {
        next = std::move(plain);
      } else if (plain) {
        rejected_residual = plain->residual;
      } else {
        rejected_residual = std::numeric_limits<double>::infinity();
      }
    }

    ++report.iterations;
    if (next) {
      cur = std::move(*next);
      running_min = std::min(running_min, cur.residual);
      if (++streak >= 2) {
        theta = std::min(1.0, theta * 1.5);
        streak = 0;
      }
    } else {
      ++report.damping_activations;
      streak = 0;
      f_hist.clear();
      g_hist.clear();
      if (theta <= kThetaFloor && rejected_residual > kDivergenceFactor * running_min) {
        report.residuals.push_back(cur.residual);
        report.status = SolverStatus::diverged;
        report.final_residual = cur.residual;
        throw ConvergenceError(
            fmt::format("{}: diverged (residual {:.3e} vs best {:.3e} at minimal damping)", what,
                        rejected_residual, running_min),
            std::move(report));
      }
      theta = std::max(kThetaFloor, theta / 2);
    }
    report.residuals.push_back(cur.residual);
  }

  report.status = SolverStatus::converged;
  report.final_residual = cur.residual;
  return MeanResult{std::move(cur.x), std::move(report)};
}

}  // namespace pdmeans::detail

namespace pdmeans {

void SolverConfig::validate() const {
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    throw DomainError(fmt::format("solver tolerance must be positive, got {}", tol));
  }
  if (max_iter < 1) {
    throw DomainError(fmt::format("max_iter must be at least 1, got {}", max_iter));
  }
  if (!(damping > 0.0 && damping <= 1.0)) {
    throw DomainError(fmt::format("damping must lie in (0, 1], got {}", damping));
  }
}

std::string_view to_string(SolverStatus status) {
  switch (status) {
    case SolverStatus::converged:
      return "converged";
    case SolverStatus::max_iter_exceeded:
      return "max-iter-exceeded";
    case SolverStatus::diverged:
      return "diverged";
  }
  return "unknown";
}

}  // namespace pdmeans
