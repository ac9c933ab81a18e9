#pragma once

#include <stdexcept>
#include <string>

#include "pdmeans/solver.hpp"

namespace pdmeans {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands have incompatible shapes or tuple lengths.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A parameter or input lies outside the mathematical domain of the operation
/// (e.g. alpha > z, a non-positive-definite matrix, a non-positive weight).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed matrix/tuple file or JSON document.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// The dense eigensolver or SVD failed to converge.
class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, int dim, double condition_estimate)
      : Error(what), dim_(dim), condition_estimate_(condition_estimate) {}

  int dim() const noexcept { return dim_; }
  double condition_estimate() const noexcept { return condition_estimate_; }

 private:
  int dim_;
  double condition_estimate_;
};

/// A fixed-point solver stopped without certifying its residual. The report
/// carries the full residual trajectory.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, SolverReport report)
      : Error(what), report_(std::move(report)) {}

  const SolverReport& report() const noexcept { return report_; }

 private:
  SolverReport report_;
};

}  // namespace pdmeans
