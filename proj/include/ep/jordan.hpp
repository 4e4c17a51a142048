// Copyright (c) 2026 eptool contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "ep/linalg.hpp"
#include "ep/types.hpp"

namespace ep {

/// A matrix together with the eigenvalue and order of the exceptional point
/// it is supposed to carry. Validity means N = H - E I is nilpotent of index
/// exactly `order`, i.e. the eigenvalue hosts a single Jordan block of that
/// size.
struct EPSpec {
  CMatrix h_ep;
  Complex e_ep;
  int order = 2;
};

struct ChainOptions {
  double tol_nilp = kDefaultNilpTol;   // relative nilpotency tolerance
  double rank_tol = kDefaultRankTol;   // SVD cutoff for kernel/solves
};

/// ||N^k|| for k = 1..n and the verdict of the nilpotency test.
struct NilpotencyCheck {
  std::vector<double> norm_sequence;
  bool is_ep = false;
};

NilpotencyCheck check_nilpotency(const EPSpec& ep, double tol_nilp = kDefaultNilpTol);

/// Same check, but throws NotAnEP (with the norm sequence) on failure.
void require_ep(const EPSpec& ep, double tol_nilp = kDefaultNilpTol);

/// Jordan chain J_1..J_n of an EP: N J_1 = 0, N J_k = J_{k-1}, normalized so
/// <J_1|J_1> = 1 and <J_n|J_k> = 0 for k < n. The remaining phase freedom is
/// fixed by making the largest-magnitude entry of J_1 real positive.
struct JordanChain {
  std::vector<CVector> vectors;
  EPSpec ep;

  int order() const { return static_cast<int>(vectors.size()); }
};

/// Constructs the chain: J_1 from the kernel of N (SVD), J_k as minimum-norm
/// solutions of N x = J_{k-1}, then the solve-family freedom (adding earlier
/// chain vectors) is used to zero <J_n|J_k>, and the whole chain is rescaled.
/// Throws NotAnEP if the nilpotency structure is wrong (kernel dimension != 1
/// or a chain solve has no solution).
JordanChain build_chain(const EPSpec& ep, const ChainOptions& opts = {});

/// Spectral response strength from the chain: 1 / ||J_n||.
double xi_from_chain(const JordanChain& chain);

/// Overlaps |<L_EP|J_k>| of the unit left eigenvector with the chain. The
/// expected pattern is zero for k < n and ||J_n|| at k = n; `pass` records
/// whether both hold at the 1e-9 level.
struct LeftOverlapReport {
  std::vector<double> overlaps;
  double jn_norm = 0.0;
  bool pass = false;
};

LeftOverlapReport check_left_overlaps(const JordanChain& chain, const CVector& l_ep);

/// Unit left eigenvector of H_EP at E_EP (kernel of N^dagger). Throws
/// NotAnEP when that kernel is not one-dimensional.
CVector left_eigenvector(const EPSpec& ep, double rank_tol = kDefaultRankTol);

}  // namespace ep
