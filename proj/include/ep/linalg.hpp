// Copyright (c) 2026 eptool contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "ep/errors.hpp"
#include "ep/types.hpp"

namespace ep {

/// Largest singular value of a (full SVD; matrices here stay small).
/// Throws InvalidInput on non-finite entries.
double spectral_norm(const CMatrix& a);

/// Where the left eigenvectors of eig_full come from.
///
/// SharedSchur back-substitutes both vector families from one Schur
/// factorization, so every left vector is paired with its right vector by
/// construction and the pair reflects the same backward-perturbed matrix.
/// That consistency is what keeps left-right overlaps meaningful when
/// eigenvalues cluster at a near-degeneracy.
///
/// AdjointEig runs a second, independent eigendecomposition of the adjoint
/// and pairs by eigenvalue proximity. It can reject genuinely ambiguous
/// spectra (PairingError) but the two runs see different rounding, which
/// scrambles overlaps between nearly-coalesced eigenvectors.
enum class LeftVectors { SharedSchur, AdjointEig };

/// Full biorthogonal eigendecomposition of a square matrix H.
///
/// values[i], right[i], left[i] belong together: H right = E right and
/// H^dagger left = conj(E) left, both vectors unit-normalized. Entries are
/// sorted by (Re E, Im E).
struct EigenSystem {
  std::vector<Complex> values;
  std::vector<CVector> right;
  std::vector<CVector> left;

  int size() const { return static_cast<int>(values.size()); }
};

/// Eigenvalues plus unit right and left eigenvectors of H.
///
/// tol_eig is relative to ||H||: the residuals ||H R - E R|| and
/// ||H^dagger L - conj(E) L|| are checked against tol_eig * ||H|| and a
/// NumericalError is raised if the backend exceeded them.
/// With LeftVectors::AdjointEig, a pairing ambiguity raises PairingError.
EigenSystem eig_full(const CMatrix& h, double tol_eig = kDefaultEigTol,
                     LeftVectors source = LeftVectors::SharedSchur);

/// Minimum-norm x minimizing ||Ax - b||. Singular values below
/// rank_tol * sigma_max are treated as zero. If require_in_range is set and
/// the residual exceeds rank_tol * ||b||, throws NoSolution.
CVector solve_least_norm(const CMatrix& a, const CVector& b, double rank_tol = kDefaultRankTol,
                         bool require_in_range = false);

/// Orthonormal basis of the kernel of A (right singular vectors whose
/// singular values fall below rank_tol * sigma_max), as matrix columns.
CMatrix kernel_basis(const CMatrix& a, double rank_tol = kDefaultRankTol);

/// Orthonormal basis of the kernel of A^dagger, as matrix columns.
CMatrix left_kernel_basis(const CMatrix& a, double rank_tol = kDefaultRankTol);

/// sigma_max / sigma_min; +inf for singular matrices.
double condition_number(const CMatrix& a);

}  // namespace ep
