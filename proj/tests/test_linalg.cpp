// Copyright (c) 2026 eptool contributors.
// SPDX-License-Identifier: Apache-2.0

#include "ep/linalg.hpp"

#include <cmath>
#include <complex>
#include <limits>

#include <doctest.h>

#include "ep/rng.hpp"
#include "oracles.hpp"

using namespace ep;
using namespace std::complex_literals;

namespace {

CMatrix hatano_ep(int n, Complex e0, Complex a) {
  CMatrix h = CMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    h(i, i) = e0;
    if (i + 1 < n) h(i, i + 1) = a;
  }
  return h;
}

}  // namespace

TEST_CASE("spectral_norm: single off-diagonal entry") {
  CMatrix a = CMatrix::Zero(2, 2);
  a(0, 1) = 1.0;
  CHECK(spectral_norm(a) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("spectral_norm: nilpotent power of the hopping chain") {
  // N^{n-1} for the n=3 chain with hopping 2 has one entry 4 left.
  CMatrix h = hatano_ep(3, 0.0, 2.0);
  CMatrix n2 = matrix_power(h, 2);
  CHECK(spectral_norm(n2) == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("spectral_norm: matches power iteration on random matrices") {
  auto eng = rng::make_stream(101, 0);
  for (int rep = 0; rep < 20; ++rep) {
    CMatrix a = rng::uniform_matrix(4, 4, eng);
    const double expected = oracle::power_iteration_norm(a, 1e-12);
    CHECK(spectral_norm(a) == doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("spectral_norm: rejects non-finite entries") {
  CMatrix a = CMatrix::Zero(2, 2);
  a(1, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(spectral_norm(a), InvalidInput);
  a(1, 1) = Complex(std::numeric_limits<double>::infinity(), 0.0);
  CHECK_THROWS_AS(spectral_norm(a), InvalidInput);
}

TEST_CASE("spectral_norm: unitary invariance and absolute homogeneity") {
  auto eng = rng::make_stream(102, 0);
  for (int rep = 0; rep < 10; ++rep) {
    CMatrix a = rng::uniform_matrix(5, 5, eng);
    CMatrix u = oracle::random_unitary_qr(5, eng);
    CMatrix v = oracle::random_unitary_qr(5, eng);
    const double base = spectral_norm(a);
    CHECK(spectral_norm(u * a * v.adjoint()) == doctest::Approx(base).epsilon(1e-10));
    const Complex c = 0.3 - 1.7i;
    CHECK(spectral_norm(c * a) == doctest::Approx(std::abs(c) * base).epsilon(1e-12));
  }
}

TEST_CASE("eig_full: diagonal matrix reproduces basis vectors") {
  CMatrix h = CMatrix::Zero(2, 2);
  h(0, 0) = 1.0 + 2.0i;
  h(1, 1) = 3.0;
  for (auto source : {LeftVectors::SharedSchur, LeftVectors::AdjointEig}) {
    EigenSystem sys = eig_full(h, kDefaultEigTol, source);
    REQUIRE(sys.size() == 2);
    // Sorted by (Re, Im): 1+2i before 3.
    CHECK(std::abs(sys.values[0] - (1.0 + 2.0i)) < 1e-14);
    CHECK(std::abs(sys.values[1] - 3.0) < 1e-14);
    for (int i = 0; i < 2; ++i) {
      CHECK(std::abs(std::abs(sys.right[i](i)) - 1.0) < 1e-12);
      CHECK(std::abs(std::abs(sys.left[i](i)) - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("eig_full: perturbed hopping chain splits into the cube-root ring") {
  // H_EP + eps*H_1 for n=3, hopping 1: eigenvalues are the three cube roots
  // of eps, i.e. eps^{1/3} * exp(i 2 pi l / 3).
  const double eps = 1e-3;
  CMatrix h = hatano_ep(3, 0.0, 1.0);
  h(2, 0) = eps;
  EigenSystem sys = eig_full(h);
  std::vector<Complex> expected;
  const double rho = std::cbrt(eps);
  for (int l = 1; l <= 3; ++l) {
    const double phi = 2.0 * M_PI * l / 3.0;
    expected.push_back(rho * Complex(std::cos(phi), std::sin(phi)));
  }
  CHECK(oracle::set_distance(sys.values, expected) < 1e-6);
}

TEST_CASE("eig_full: eigenvalues match the characteristic polynomial (3x3)") {
  auto eng = rng::make_stream(103, 0);
  for (int rep = 0; rep < 20; ++rep) {
    CMatrix a = rng::uniform_matrix(3, 3, eng);
    EigenSystem sys = eig_full(a);
    auto roots = oracle::eigenvalues_3x3_charpoly(a);
    CHECK(oracle::set_distance(sys.values, {roots.begin(), roots.end()}) < 1e-8);
  }
}

TEST_CASE("eig_full: residual invariants hold for both vector families") {
  auto eng = rng::make_stream(104, 0);
  CMatrix h = rng::uniform_matrix(6, 6, eng);
  const double scale = spectral_norm(h);
  for (auto source : {LeftVectors::SharedSchur, LeftVectors::AdjointEig}) {
    EigenSystem sys = eig_full(h, kDefaultEigTol, source);
    for (int i = 0; i < sys.size(); ++i) {
      CHECK(std::abs(sys.right[i].norm() - 1.0) <= 1e-12);
      CHECK(std::abs(sys.left[i].norm() - 1.0) <= 1e-12);
      CHECK((h * sys.right[i] - sys.values[i] * sys.right[i]).norm() <= kDefaultEigTol * scale);
      CHECK((h.adjoint() * sys.left[i] - std::conj(sys.values[i]) * sys.left[i]).norm() <=
            kDefaultEigTol * scale);
    }
  }
}

TEST_CASE("eig_full: Hermitian matrices give real eigenvalues and parallel pairs") {
  auto eng = rng::make_stream(105, 0);
  CMatrix a = rng::uniform_matrix(5, 5, eng);
  CMatrix h = a + a.adjoint();
  const double scale = spectral_norm(h);
  EigenSystem sys = eig_full(h);
  for (int i = 0; i < sys.size(); ++i) {
    CHECK(std::abs(std::imag(sys.values[i])) <= kDefaultEigTol * scale);
    CHECK(std::abs(sys.left[i].dot(sys.right[i])) == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("eig_full: Rayleigh quotient consistency") {
  auto eng = rng::make_stream(106, 0);
  for (int rep = 0; rep < 10; ++rep) {
    CMatrix h = rng::uniform_matrix(5, 5, eng);
    const double scale = spectral_norm(h);
    EigenSystem sys = eig_full(h);
    for (int i = 0; i < sys.size(); ++i) {
      const Complex ovl = sys.left[i].dot(sys.right[i]);
      if (std::abs(ovl) <= 1e-8) continue;
      const Complex rq = sys.left[i].dot(h * sys.right[i]) / ovl;
      CHECK(std::abs(rq - sys.values[i]) <= kDefaultEigTol * scale / std::abs(ovl));
    }
  }
}

TEST_CASE("eig_full: adjoint pairing agrees with the shared factorization") {
  auto eng = rng::make_stream(107, 0);
  for (int rep = 0; rep < 10; ++rep) {
    CMatrix h = rng::uniform_matrix(5, 5, eng);
    EigenSystem a = eig_full(h, kDefaultEigTol, LeftVectors::SharedSchur);
    EigenSystem b = eig_full(h, kDefaultEigTol, LeftVectors::AdjointEig);
    for (int i = 0; i < a.size(); ++i) {
      CHECK(std::abs(a.values[i] - b.values[i]) < 1e-10);
      // Overlap magnitudes are phase-convention free.
      CHECK(std::abs(a.left[i].dot(a.right[i])) ==
            doctest::Approx(std::abs(b.left[i].dot(b.right[i]))).epsilon(1e-8));
    }
  }
}

TEST_CASE("eig_full: equal eigenvalues make adjoint pairing ambiguous") {
  CMatrix h = CMatrix::Identity(2, 2);
  CHECK_THROWS_AS(eig_full(h, kDefaultEigTol, LeftVectors::AdjointEig), PairingError);
  // The shared factorization has nothing to pair and stays well-defined.
  CHECK_NOTHROW(eig_full(h, kDefaultEigTol, LeftVectors::SharedSchur));
}

TEST_CASE("eig_full: rejects non-square input") {
  CMatrix a = CMatrix::Zero(2, 3);
  CHECK_THROWS_AS(eig_full(a), InvalidInput);
}

TEST_CASE("solve_least_norm: identity returns the right-hand side") {
  CMatrix a = CMatrix::Identity(3, 3);
  CVector b(3);
  b << 1.0 + 1.0i, 2.0, -0.5i;
  CHECK((solve_least_norm(a, b) - b).norm() < 1e-14);
}

TEST_CASE("solve_least_norm: picks the preimage orthogonal to the kernel") {
  CMatrix a = CMatrix::Zero(2, 2);
  a(0, 1) = 1.0;
  CVector b(2);
  b << 1.0, 0.0;
  CVector x = solve_least_norm(a, b, kDefaultRankTol, true);
  CHECK(std::abs(x(0)) < 1e-14);
  CHECK(std::abs(x(1) - 1.0) < 1e-14);
}

TEST_CASE("solve_least_norm: agrees with the explicit pseudo-inverse") {
  auto eng = rng::make_stream(108, 0);
  for (int rep = 0; rep < 10; ++rep) {
    // Rank-deficient 4x3 system: last column is a combination of the others.
    CMatrix a(4, 3);
    a.col(0) = rng::uniform_matrix(4, 1, eng);
    a.col(1) = rng::uniform_matrix(4, 1, eng);
    a.col(2) = a.col(0) - 2.0 * a.col(1);
    CVector b = rng::uniform_matrix(4, 1, eng);
    CVector x = solve_least_norm(a, b);
    CVector expected = oracle::pinv(a) * b;
    CHECK((x - expected).norm() < 1e-10);
  }
}

TEST_CASE("solve_least_norm: flags inconsistent systems when asked to") {
  CMatrix a = CMatrix::Zero(2, 2);
  a(0, 1) = 1.0;
  CVector b(2);
  b << 0.0, 1.0;  // e_2 is orthogonal to the range of A.
  CHECK_THROWS_AS(solve_least_norm(a, b, kDefaultRankTol, true), NoSolution);
  CHECK_NOTHROW(solve_least_norm(a, b, kDefaultRankTol, false));
}

TEST_CASE("kernel_basis: nilpotent block kernels") {
  CMatrix h = hatano_ep(3, 0.0, 1.0);
  CMatrix k = kernel_basis(h);
  REQUIRE(k.cols() == 1);
  CHECK(std::abs(std::abs(k(0, 0)) - 1.0) < 1e-12);
  CMatrix lk = left_kernel_basis(h);
  REQUIRE(lk.cols() == 1);
  CHECK(std::abs(std::abs(lk(2, 0)) - 1.0) < 1e-12);
}
