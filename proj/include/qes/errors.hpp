// Copyright 2026 The qesdirac Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace qes {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
};

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "domain_error"; }
};

/// A required input (e.g. a constrained potential coefficient) is missing.
class PreconditionError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "precondition_error"; }
};

/// An iterative solver did not reach its tolerance.
class SolverFailure : public Error {
 public:
  SolverFailure(const std::string& what, double best_residual)
      : Error(what), best_residual_(best_residual) {}
  const char* kind() const noexcept override { return "solver_failure"; }
  double best_residual() const noexcept { return best_residual_; }

 private:
  double best_residual_;
};

/// A computed object violates an invariant it is supposed to satisfy.
class InvariantViolation : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "invariant_violation"; }
};

/// The coefficient-matching oracle could not produce a polynomial solution.
class OracleFailure : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "oracle_failure"; }
};

}  // namespace qes
