// Copyright (c) 2026 eptool contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "ep/linalg.hpp"
#include "ep/types.hpp"

namespace ep {

/// One eigenstate of a nonnormal matrix with its biorthogonal diagnostics.
/// R and L are unit vectors; overlap = <L|R>, r = |overlap|, K = 1/r^2.
/// When r falls below kOverlapFloor the mode is effectively defective and K
/// is +infinity (a real marker, never a clamped large float).
///
/// r is the normalized left-right overlap throughout. Rigidity variants that
/// use <R*|R> instead coincide with it only for complex-symmetric matrices
/// under a matching normalization and are not provided here.
struct BiorthogonalMode {
  Complex e;
  CVector right;
  CVector left;
  Complex overlap;
  double r = 0.0;
  double k = 0.0;

  bool k_diverged() const { return std::isinf(k); }
};

/// Biorthogonal diagnostics for every eigenstate of H, sorted by
/// (Re E, Im E).
std::vector<BiorthogonalMode> analyze_modes(const CMatrix& h, double tol_eig = kDefaultEigTol,
                                            LeftVectors source = LeftVectors::SharedSchur);

/// Mode table in CSV form: l, Re(E), Im(E), r, K. Diverged Petermann factors
/// print as "inf".
std::string modes_to_csv(const std::vector<BiorthogonalMode>& modes);

/// Compares the two sides of first-order eigenvalue perturbation theory for
/// mode l of H(eps) = H_EP + eps H_1: a central finite difference of E_l
/// against the overlap expression <L|H_1|R> / <L|R>.
struct DerivativeCheck {
  Complex lhs;      // [E_l(eps+h) - E_l(eps-h)] / (2h)
  Complex rhs;      // <L|H_1|R> / <L|R> at eps
  double rel_diff;  // |lhs - rhs| / |rhs|
};

/// Throws TrackingError when the eigenvalue continuation from eps to eps +- h
/// is ambiguous (nearest and second-nearest candidate within a factor 2).
DerivativeCheck perturbation_derivative_check(const CMatrix& h_ep, const CMatrix& h_1, double eps,
                                              int l, double h);

}  // namespace ep
