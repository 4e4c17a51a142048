// Copyright (c) 2026 eptool contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ep/types.hpp"

namespace ep {

/// Parameters of the fully asymmetric tight-binding chain: on-site energy E0
/// on the diagonal, hopping A on the superdiagonal. For A != 0 the chain sits
/// exactly at an EP of order n with eigenvalue E0 and xi = |A|^{n-1}. The
/// probe perturbation is a single unit entry in the opposite corner, which
/// has unit spectral norm and splits the EP into the full n-th root ring.
struct HatanoParams {
  int n = 3;
  Complex e0 = 0.0;
  Complex a = 1.0;
  std::vector<double> eps_grid;
};

/// 40 log-spaced perturbation strengths covering [1e-10, 1e-1].
std::vector<double> default_eps_grid();

void validate(const HatanoParams& p);

/// (H_EP, H_1) for the chain model.
std::pair<CMatrix, CMatrix> build_model(const HatanoParams& p);

/// Eigenvalue displacement under eps H_1. The magnitude (eps |A|^{n-1})^{1/n}
/// and the n complex branches (principal root times the roots of unity) are
/// exact for this model: the characteristic polynomial is
/// (E - E0)^n = eps A^{n-1}.
struct ShiftTable {
  double magnitude = 0.0;
  std::vector<Complex> branches;
};

ShiftTable exact_shift(const HatanoParams& p, double eps);

/// Closed-form rigidity value with K = 1/r^2. in_regime is false once the
/// expansion variable x = |dE/A| reaches one.
struct HatanoRigidity {
  double r = 0.0;
  double k = 0.0;
  double x = 0.0;
  bool in_regime = true;
};

/// Series closed form r = n x^{n-1} / sum_{j=1..n} x^{j-1}. Its ratio to the
/// leading-order prediction is exactly that denominator, which is what the
/// sweep asserts.
HatanoRigidity exact_rigidity(const HatanoParams& p, double eps);

/// Rigidity from the explicit left/right eigenvectors of the perturbed
/// chain: r = n x^{n-1} / sum_{j=1..n} x^{2(j-1)}. The two closed forms
/// differ at O(x); this one is the value an eigensolver reproduces.
HatanoRigidity rigidity_from_overlap(const HatanoParams& p, double eps);

/// One comparison row per eps: series closed form vs leading-order formula.
struct SweepRow {
  double eps;
  double r_exact;
  double r_pred;
  double k_exact;
  double k_pred;
};

std::vector<SweepRow> figure1_sweep(const HatanoParams& p);

/// CSV with header eps,r_exact,r_pred,K_exact,K_pred.
std::string sweep_to_csv(const std::vector<SweepRow>& rows);

}  // namespace ep
