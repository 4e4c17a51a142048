// Copyright (c) 2026 eptool contributors.
// SPDX-License-Identifier: Apache-2.0

#include "ep/jordan.hpp"

#include <cmath>
#include <string>

namespace ep {

namespace {

CMatrix shifted(const EPSpec& ep) {
  return ep.h_ep - ep.e_ep * CMatrix::Identity(ep.h_ep.rows(), ep.h_ep.cols());
}

void validate_spec(const EPSpec& ep) {
  if (ep.h_ep.rows() != ep.h_ep.cols()) throw InvalidInput("EPSpec: matrix must be square");
  if (!is_finite(ep.h_ep)) throw InvalidInput("EPSpec: non-finite entries");
  if (ep.order < 2) throw InvalidInput("EPSpec: order must be at least 2");
  if (ep.order > ep.h_ep.rows()) throw InvalidInput("EPSpec: order exceeds matrix dimension");
}

// Solves for the coefficients that remove the J_1..J_{n-1} components from
// J_n, then shifts the whole chain consistently (adding beta_j * J_{k-j} to
// every J_k preserves the chain equations). One refinement round keeps the
// final overlaps at rounding level.
void orthogonalize_chain(std::vector<CVector>& j) {
  const int n = static_cast<int>(j.size());
  if (n < 2) return;
  for (int round = 0; round < 2; ++round) {
    CMatrix gram(n - 1, n - 1);
    CVector rhs(n - 1);
    for (int m = 0; m < n - 1; ++m) {
      for (int col = 1; col <= n - 1; ++col) {
        gram(m, col - 1) = j[m].dot(j[n - 1 - col]);
      }
      rhs(m) = -j[m].dot(j[n - 1]);
    }
    const CVector beta = gram.fullPivLu().solve(rhs);
    std::vector<CVector> updated = j;
    for (int k = 1; k < n; ++k) {
      for (int col = 1; col <= std::min(k, n - 1); ++col) {
        updated[k] += beta(col - 1) * j[k - col];
      }
    }
    j = std::move(updated);
  }
}

}  // namespace

NilpotencyCheck check_nilpotency(const EPSpec& ep, double tol_nilp) {
  validate_spec(ep);
  const CMatrix n = shifted(ep);
  NilpotencyCheck result;
  CMatrix power = n;
  result.norm_sequence.push_back(spectral_norm(power));
  for (int k = 2; k <= ep.order; ++k) {
    power = power * n;
    result.norm_sequence.push_back(spectral_norm(power));
  }
  const double base = result.norm_sequence.front();
  if (base > 0.0) {
    const double top = result.norm_sequence[static_cast<std::size_t>(ep.order - 1)];
    const double below = result.norm_sequence[static_cast<std::size_t>(ep.order - 2)];
    result.is_ep = top <= tol_nilp * std::pow(base, ep.order) &&
                   below > tol_nilp * std::pow(base, ep.order - 1);
  }
  return result;
}

void require_ep(const EPSpec& ep, double tol_nilp) {
  NilpotencyCheck check = check_nilpotency(ep, tol_nilp);
  if (!check.is_ep) {
    throw NotAnEP("matrix is not at an EP of order " + std::to_string(ep.order),
                  check.norm_sequence);
  }
}

JordanChain build_chain(const EPSpec& ep, const ChainOptions& opts) {
  NilpotencyCheck check = check_nilpotency(ep, opts.tol_nilp);
  if (!check.is_ep) {
    throw NotAnEP("build_chain: matrix is not at an EP of order " + std::to_string(ep.order),
                  check.norm_sequence);
  }
  const CMatrix n = shifted(ep);

  const CMatrix kernel = kernel_basis(n, opts.rank_tol);
  if (kernel.cols() != 1) {
    throw NotAnEP("build_chain: kernel dimension is " + std::to_string(kernel.cols()) +
                      ", expected a single Jordan block",
                  check.norm_sequence);
  }

  std::vector<CVector> j;
  j.reserve(static_cast<std::size_t>(ep.order));
  j.push_back(kernel.col(0));
  for (int k = 1; k < ep.order; ++k) {
    try {
      j.push_back(solve_least_norm(n, j.back(), opts.rank_tol, true));
    } catch (const NoSolution&) {
      throw NotAnEP("build_chain: chain equation has no solution at step " + std::to_string(k + 1),
                    check.norm_sequence);
    }
  }

  orthogonalize_chain(j);

  // <J_1|J_1> = 1, then the global phase: largest entry of J_1 real positive.
  const double norm1 = j.front().norm();
  if (norm1 == 0.0) throw InternalError("build_chain: vanishing first chain vector");
  Eigen::Index imax = 0;
  j.front().cwiseAbs().maxCoeff(&imax);
  const Complex top = j.front()(imax);
  const Complex factor = (std::abs(top) / top) / norm1;
  for (CVector& v : j) v *= factor;

  return JordanChain{std::move(j), ep};
}

double xi_from_chain(const JordanChain& chain) {
  if (chain.vectors.empty()) throw InvalidInput("xi_from_chain: empty chain");
  const double jn = chain.vectors.back().norm();
  if (jn == 0.0 || !std::isfinite(jn)) {
    throw InternalError("xi_from_chain: degenerate last chain vector");
  }
  return 1.0 / jn;
}

LeftOverlapReport check_left_overlaps(const JordanChain& chain, const CVector& l_ep) {
  if (chain.vectors.empty()) throw InvalidInput("check_left_overlaps: empty chain");
  if (l_ep.size() != chain.vectors.front().size()) {
    throw InvalidInput("check_left_overlaps: dimension mismatch");
  }
  LeftOverlapReport report;
  report.jn_norm = chain.vectors.back().norm();
  const int n = chain.order();
  report.pass = true;
  for (int k = 0; k < n; ++k) {
    const double overlap = std::abs(l_ep.dot(chain.vectors[static_cast<std::size_t>(k)]));
    report.overlaps.push_back(overlap);
    if (k < n - 1 && overlap > 1e-9) report.pass = false;
  }
  if (std::abs(report.overlaps.back() - report.jn_norm) > 1e-9) report.pass = false;
  return report;
}

CVector left_eigenvector(const EPSpec& ep, double rank_tol) {
  validate_spec(ep);
  const CMatrix kernel = left_kernel_basis(shifted(ep), rank_tol);
  if (kernel.cols() != 1) {
    throw NotAnEP("left_eigenvector: adjoint kernel dimension is " + std::to_string(kernel.cols()),
                  {});
  }
  return kernel.col(0).normalized();
}

}  // namespace ep
