// Copyright (c) 2026 eptool contributors.
// SPDX-License-Identifier: Apache-2.0

#include "ep/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace ep {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct RightSystem {
  std::vector<Complex> values;
  std::vector<CVector> vectors;
};

// zgeev on a copy of h. Either vector family may be skipped.
void zgeev_decompose(const CMatrix& h, bool want_left, bool want_right,
                     std::vector<Complex>& values, std::vector<CVector>* left,
                     std::vector<CVector>* right) {
  const lapack_int m = static_cast<lapack_int>(h.rows());
  CMatrix work = h;
  CVector w(m);
  CMatrix vl = want_left ? CMatrix(m, m) : CMatrix();
  CMatrix vr = want_right ? CMatrix(m, m) : CMatrix();
  const lapack_int info = LAPACKE_zgeev(
      LAPACK_COL_MAJOR, want_left ? 'V' : 'N', want_right ? 'V' : 'N', m, work.data(), m, w.data(),
      want_left ? vl.data() : nullptr, m, want_right ? vr.data() : nullptr, m);
  if (info < 0) throw InternalError("zgeev: illegal argument " + std::to_string(-info));
  if (info > 0) throw NumericalError("zgeev: QR iteration failed to converge");
  values.assign(w.data(), w.data() + m);
  if (want_left) {
    left->clear();
    for (lapack_int j = 0; j < m; ++j) left->push_back(vl.col(j).normalized());
  }
  if (want_right) {
    right->clear();
    for (lapack_int j = 0; j < m; ++j) right->push_back(vr.col(j).normalized());
  }
}

// Bijective proximity matching of adjoint-problem eigenvalues mu_j to
// conj(E_i). Throws PairingError when some right eigenvalue has two left
// candidates at numerically equal distance.
std::vector<int> pair_by_proximity(const std::vector<Complex>& values,
                                   const std::vector<Complex>& adjoint_values, double scale) {
  const int m = static_cast<int>(values.size());
  const double amb_tol = 100.0 * kEps * std::max(scale, 1.0);
  std::vector<std::pair<int, int>> ambiguous;
  for (int i = 0; i < m; ++i) {
    double d1 = std::numeric_limits<double>::infinity();
    double d2 = std::numeric_limits<double>::infinity();
    int j1 = -1, j2 = -1;
    for (int j = 0; j < m; ++j) {
      const double d = std::abs(adjoint_values[j] - std::conj(values[i]));
      if (d < d1) {
        d2 = d1;
        j2 = j1;
        d1 = d;
        j1 = j;
      } else if (d < d2) {
        d2 = d;
        j2 = j;
      }
    }
    if (m > 1 && d2 - d1 <= amb_tol) {
      ambiguous.emplace_back(i, j1);
      ambiguous.emplace_back(i, j2);
    }
  }
  if (!ambiguous.empty()) {
    throw PairingError("eig_full: left/right eigenvalue pairing is ambiguous", ambiguous);
  }
  // Globally greedy assignment on sorted distances keeps the match bijective.
  std::vector<std::tuple<double, int, int>> edges;
  edges.reserve(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      edges.emplace_back(std::abs(adjoint_values[j] - std::conj(values[i])), i, j);
    }
  }
  std::sort(edges.begin(), edges.end());
  std::vector<int> match(m, -1);
  std::vector<bool> used(m, false);
  int assigned = 0;
  for (const auto& [d, i, j] : edges) {
    if (match[i] >= 0 || used[j]) continue;
    match[i] = j;
    used[j] = true;
    if (++assigned == m) break;
  }
  return match;
}

}  // namespace

double spectral_norm(const CMatrix& a) {
  if (!is_finite(a)) throw InvalidInput("spectral_norm: non-finite entries");
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(a);
  return svd.singularValues()(0);
}

EigenSystem eig_full(const CMatrix& h, double tol_eig, LeftVectors source) {
  if (h.rows() != h.cols()) throw InvalidInput("eig_full: matrix must be square");
  if (h.rows() == 0) throw InvalidInput("eig_full: empty matrix");
  if (!is_finite(h)) throw InvalidInput("eig_full: non-finite entries");

  const int m = static_cast<int>(h.rows());
  EigenSystem sys;
  if (source == LeftVectors::SharedSchur) {
    zgeev_decompose(h, true, true, sys.values, &sys.left, &sys.right);
  } else {
    zgeev_decompose(h, false, true, sys.values, nullptr, &sys.right);
    std::vector<Complex> adj_values;
    std::vector<CVector> adj_vectors;
    zgeev_decompose(h.adjoint(), false, true, adj_values, nullptr, &adj_vectors);
    const double scale = h.norm();
    const std::vector<int> match = pair_by_proximity(sys.values, adj_values, scale);
    sys.left.resize(m);
    for (int i = 0; i < m; ++i) sys.left[i] = adj_vectors[static_cast<std::size_t>(match[i])];
  }

  std::vector<int> order(m);
  for (int i = 0; i < m; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const Complex& x = sys.values[a];
    const Complex& y = sys.values[b];
    if (std::real(x) != std::real(y)) return std::real(x) < std::real(y);
    return std::imag(x) < std::imag(y);
  });
  EigenSystem sorted;
  sorted.values.reserve(m);
  sorted.right.reserve(m);
  sorted.left.reserve(m);
  for (int i : order) {
    sorted.values.push_back(sys.values[i]);
    sorted.right.push_back(sys.right[i]);
    sorted.left.push_back(sys.left[i]);
  }

  // Frobenius norm bounds the spectral norm from above, so this check is
  // slightly conservative and cheap.
  const double scale = std::max(h.norm(), kEps);
  for (int i = 0; i < m; ++i) {
    const double res_r = (h * sorted.right[i] - sorted.values[i] * sorted.right[i]).norm();
    const double res_l =
        (h.adjoint() * sorted.left[i] - std::conj(sorted.values[i]) * sorted.left[i]).norm();
    if (res_r > tol_eig * scale || res_l > tol_eig * scale) {
      throw NumericalError("eig_full: eigenpair residual exceeds tolerance");
    }
  }
  return sorted;
}

CVector solve_least_norm(const CMatrix& a, const CVector& b, double rank_tol,
                         bool require_in_range) {
  if (!is_finite(a) || !is_finite(b)) throw InvalidInput("solve_least_norm: non-finite input");
  if (a.rows() != b.size()) throw InvalidInput("solve_least_norm: shape mismatch");
  Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  const double cutoff = s.size() > 0 ? rank_tol * s(0) : 0.0;
  CVector coeffs = svd.matrixU().adjoint() * b;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    coeffs(i) = s(i) > cutoff ? coeffs(i) / s(i) : Complex(0.0, 0.0);
  }
  CVector x = svd.matrixV() * coeffs;
  if (require_in_range) {
    const double residual = (a * x - b).norm();
    if (residual > rank_tol * b.norm()) {
      throw NoSolution("solve_least_norm: right-hand side not in range, residual " +
                       std::to_string(residual));
    }
  }
  return x;
}

CMatrix kernel_basis(const CMatrix& a, double rank_tol) {
  Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double cutoff = s.size() > 0 ? rank_tol * s(0) : 0.0;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > cutoff) ++rank;
  }
  return svd.matrixV().rightCols(a.cols() - rank);
}

CMatrix left_kernel_basis(const CMatrix& a, double rank_tol) {
  Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeFullU);
  const auto& s = svd.singularValues();
  const double cutoff = s.size() > 0 ? rank_tol * s(0) : 0.0;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > cutoff) ++rank;
  }
  return svd.matrixU().rightCols(a.rows() - rank);
}

double condition_number(const CMatrix& a) {
  Eigen::JacobiSVD<CMatrix> svd(a);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(s.size() - 1) == 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / s(s.size() - 1);
}

}  // namespace ep
