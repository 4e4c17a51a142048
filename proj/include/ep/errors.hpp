// Copyright (c) 2026 eptool contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ep {

/// Base class for all library errors. `code()` is the machine-readable tag
/// the CLI puts into its JSON error output.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

/// Malformed or non-finite input (bad file, NaN entries, shape mismatch).
class InvalidInput : public Error {
 public:
  explicit InvalidInput(const std::string& message) : Error("invalid_input", message) {}
};

/// Left/right eigenvalue pairing could not be resolved: two candidates are
/// equally close. Carries the (right index, left candidate index) pairs.
class PairingError : public Error {
 public:
  PairingError(const std::string& message, std::vector<std::pair<int, int>> ambiguous)
      : Error("pairing_ambiguous", message), ambiguous_(std::move(ambiguous)) {}
  const std::vector<std::pair<int, int>>& ambiguous() const noexcept { return ambiguous_; }

 private:
  std::vector<std::pair<int, int>> ambiguous_;
};

/// Least-squares solve left a residual although the right-hand side was
/// required to lie in the range of the matrix.
class NoSolution : public Error {
 public:
  explicit NoSolution(const std::string& message) : Error("no_solution", message) {}
};

/// The supplied (matrix, eigenvalue, order) triple fails the nilpotency test,
/// i.e. the matrix does not carry a single Jordan block of the stated order.
/// Carries the sequence ||N^k|| for k = 1..n used by the check.
class NotAnEP : public Error {
 public:
  NotAnEP(const std::string& message, std::vector<double> norm_sequence)
      : Error("not_an_ep", message), norm_sequence_(std::move(norm_sequence)) {}
  const std::vector<double>& norm_sequence() const noexcept { return norm_sequence_; }

 private:
  std::vector<double> norm_sequence_;
};

/// Petermann prediction requested exactly at the degeneracy.
class DivergesAtEP : public Error {
 public:
  explicit DivergesAtEP(const std::string& message) : Error("diverges_at_ep", message) {}
};

/// Eigenvalue continuation across a parameter step was ambiguous.
class TrackingError : public Error {
 public:
  explicit TrackingError(const std::string& message) : Error("tracking_failed", message) {}
};

/// The estimator found no candidate mode, even after the fallback kick.
class NoEPCandidate : public Error {
 public:
  explicit NoEPCandidate(const std::string& message) : Error("no_ep_candidate", message) {}
};

/// A numerical routine failed its own consistency check.
class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& message) : Error("numerical_failure", message) {}
};

/// Invariant violation that should be unreachable through the public API.
class InternalError : public Error {
 public:
  explicit InternalError(const std::string& message) : Error("internal_error", message) {}
};

}  // namespace ep
