// Copyright (c) 2026 eptool contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <Eigen/Dense>

namespace ep {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Default relative tolerance for eigendecomposition residuals.
inline constexpr double kDefaultEigTol = 1e-9;
/// Default relative rank cutoff for SVD-based solves and kernel extraction.
inline constexpr double kDefaultRankTol = 1e-10;
/// Default relative nilpotency tolerance when validating a defective matrix.
inline constexpr double kDefaultNilpTol = 1e-8;
/// Overlaps below this are treated as numerically zero (diverging Petermann factor).
inline constexpr double kOverlapFloor = 1e-14;

bool is_finite(const CMatrix& a);
bool is_finite(const CVector& v);

/// A^k by repeated multiplication (k >= 0; A square).
CMatrix matrix_power(const CMatrix& a, int k);

}  // namespace ep
