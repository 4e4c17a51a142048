// Copyright (c) 2026 eptool contributors.
// SPDX-License-Identifier: Apache-2.0

#include "ep/hatano.hpp"

#include <cmath>
#include <sstream>

#include <doctest.h>

#include "ep/modes.hpp"
#include "ep/response.hpp"
#include "oracles.hpp"

using namespace ep;
using namespace std::complex_literals;

TEST_CASE("build_model: smallest chain") {
  HatanoParams p{2, 0.0, 1.0, {}};
  auto [h_ep, h_1] = build_model(p);
  CHECK(h_ep(0, 1) == Complex(1.0, 0.0));
  CHECK(h_ep(0, 0) == Complex(0.0, 0.0));
  CHECK(h_1(1, 0) == Complex(1.0, 0.0));
  CHECK(h_1(0, 1) == Complex(0.0, 0.0));
  CHECK(spectral_norm(h_1) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("build_model: the chain is a valid EP with xi = |A|^{n-1}") {
  HatanoParams p{3, 0.1 - 0.2i, 2.0, {}};
  auto [h_ep, h_1] = build_model(p);
  EPSpec ep{h_ep, p.e0, p.n};
  CHECK(xi_exact(ep) == doctest::Approx(4.0).epsilon(1e-12));
  // All eigenvalues coincide at E0: the matrix is defective.
  auto modes = analyze_modes(h_ep);
  for (const auto& m : modes) CHECK(std::abs(m.e - p.e0) < 1e-12);
}

TEST_CASE("build_model: parameter validation") {
  CHECK_THROWS_AS(validate(HatanoParams{3, 0.0, 0.0, {}}), InvalidInput);
  CHECK_THROWS_AS(validate(HatanoParams{1, 0.0, 1.0, {}}), InvalidInput);
  CHECK_THROWS_AS(validate(HatanoParams{3, 0.0, 1.0, {1e-3, 1e-4}}), InvalidInput);
  CHECK_THROWS_AS(validate(HatanoParams{3, 0.0, 1.0, {0.0, 1e-4}}), InvalidInput);
  CHECK_NOTHROW(validate(HatanoParams{3, 0.0, 1.0, default_eps_grid()}));
}

TEST_CASE("exact_shift: reference magnitude and limits") {
  HatanoParams p{3, 0.0, 1.0, {}};
  CHECK(exact_shift(p, 1e-6).magnitude == doctest::Approx(1e-2).epsilon(1e-12));
  CHECK(exact_shift(p, 1e-30).magnitude == doctest::Approx(1e-10).epsilon(1e-12));
}

TEST_CASE("exact_shift: branches match the numerical spectrum") {
  HatanoParams p{3, 0.05i, 1.7, {}};
  const double eps = 1e-6;
  auto [h_ep, h_1] = build_model(p);
  const CMatrix h = h_ep + eps * h_1;
  const EigenSystem sys = eig_full(h);
  ShiftTable shift = exact_shift(p, eps);
  std::vector<Complex> expected;
  for (const Complex& b : shift.branches) expected.push_back(p.e0 + b);
  CHECK(oracle::set_distance(sys.values, expected) < 1e-8);
}

TEST_CASE("exact_rigidity: frozen reference value") {
  HatanoParams p{3, 0.0, 1.0, {}};
  HatanoRigidity rig = exact_rigidity(p, 1e-6);
  CHECK(rig.x == doctest::Approx(1e-2).epsilon(1e-12));
  CHECK(rig.r == doctest::Approx(3e-4 / 1.0101).epsilon(1e-12));
  CHECK(rig.k == doctest::Approx(1.0 / (rig.r * rig.r)).epsilon(1e-12));
  CHECK(rig.in_regime);
}

TEST_CASE("exact_rigidity: formal limit x = 1 is flagged") {
  HatanoParams p{3, 0.0, 1.0, {}};
  HatanoRigidity rig = exact_rigidity(p, 1.0);  // eps = 1, A = 1 -> x = 1
  CHECK(rig.r == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_FALSE(rig.in_regime);
}

TEST_CASE("exact_rigidity: small eps tends to the leading-order value") {
  HatanoParams p{4, 0.0, 1.3, {}};
  const double eps = 1e-12;
  HatanoRigidity rig = exact_rigidity(p, eps);
  const double xi = std::pow(1.3, 3);
  const double pred = predicted_rigidity(4, exact_shift(p, eps).magnitude, xi).value;
  CHECK(rig.r == doctest::Approx(pred).epsilon(1e-3));
}

TEST_CASE("rigidity_from_overlap: matches analyze_modes across the eps range") {
  for (int n = 2; n <= 5; ++n) {
    HatanoParams p{n, 0.0, 1.0, {}};
    auto [h_ep, h_1] = build_model(p);
    for (double eps : {1e-10, 1e-8, 1e-6, 1e-4, 1e-2}) {
      const CMatrix h = h_ep + eps * h_1;
      auto modes = analyze_modes(h);
      const double expected = rigidity_from_overlap(p, eps).r;
      for (const auto& m : modes) {
        CHECK(m.r == doctest::Approx(expected).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("rigidity_from_overlap vs exact_rigidity: same leading order") {
  HatanoParams p{3, 0.0, 1.0, {}};
  const double eps = 1e-9;
  const double x = std::cbrt(eps);
  // The two denominators differ by x - x^2 at leading order.
  const double series = exact_rigidity(p, eps).r;
  const double overlap = rigidity_from_overlap(p, eps).r;
  CHECK(std::abs(series - overlap) / overlap == doctest::Approx(x).epsilon(0.01));
}

TEST_CASE("figure1_sweep: ratio identity and asymptotic agreement") {
  HatanoParams p{3, 0.0, 1.0, default_eps_grid()};
  auto rows = figure1_sweep(p);
  REQUIRE(rows.size() == 40);
  for (const auto& row : rows) {
    const double x = std::cbrt(row.eps);
    const double expected_ratio = 1.0 + x + x * x;
    CHECK(row.r_pred / row.r_exact == doctest::Approx(expected_ratio).epsilon(1e-10));
  }
  // Leading-order agreement tightens as eps shrinks.
  HatanoParams fine{3, 0.0, 1.0, {1e-9}};
  auto row = figure1_sweep(fine).at(0);
  CHECK(std::abs(row.r_pred - row.r_exact) / row.r_exact <= 2e-3);
}

TEST_CASE("figure1_sweep: n = 2 sweep satisfies the identity") {
  HatanoParams p{2, 0.0, 1.0, default_eps_grid()};
  for (const auto& row : figure1_sweep(p)) {
    const double x = std::sqrt(row.eps);
    CHECK(row.r_pred / row.r_exact == doctest::Approx(1.0 + x).epsilon(1e-10));
  }
}

TEST_CASE("figure1_sweep: the eps-||H_1|| bound coincides with the prediction") {
  HatanoParams p{3, 0.0, 1.0, default_eps_grid()};
  const double xi = 1.0;
  for (const auto& row : figure1_sweep(p)) {
    const double r_up = bounds(3, row.eps, 1.0, xi, {}, {}).r_upper.value();
    CHECK(row.r_pred == doctest::Approx(r_up).epsilon(1e-12));
  }
}

TEST_CASE("figure1_sweep: log-log slope of r is (n-1)/n") {
  HatanoParams p{3, 0.0, 1.0, {}};
  for (double e = 1e-9; e <= 1.0001e-5; e *= 10.0) p.eps_grid.push_back(e);
  auto rows = figure1_sweep(p);
  std::vector<double> lx, ly;
  for (const auto& row : rows) {
    lx.push_back(std::log10(row.eps));
    ly.push_back(std::log10(row.r_exact));
  }
  CHECK(oracle::regression_slope(lx, ly) == doctest::Approx(2.0 / 3.0).epsilon(0.015));
}

TEST_CASE("sweep_to_csv: header and row count") {
  HatanoParams p{3, 0.0, 1.0, {1e-8, 1e-6}};
  const std::string csv = sweep_to_csv(figure1_sweep(p));
  std::istringstream lines(csv);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "eps,r_exact,r_pred,K_exact,K_pred");
  int rows = 0;
  std::string row;
  while (std::getline(lines, row)) ++rows;
  CHECK(rows == 2);
}
