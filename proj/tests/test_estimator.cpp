// Copyright (c) 2026 eptool contributors.
// SPDX-License-Identifier: Apache-2.0

#include "ep/estimator.hpp"

#include <cmath>

#include <doctest.h>

#include "ep/hatano.hpp"
#include "ep/response.hpp"
#include "ep/rng.hpp"
#include "oracles.hpp"

using namespace ep;
using namespace std::complex_literals;

namespace {

CMatrix jordan_block(int n, Complex lambda) {
  CMatrix j = CMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    j(i, i) = lambda;
    if (i + 1 < n) j(i, i + 1) = 1.0;
  }
  return j;
}

}  // namespace

TEST_CASE("estimate_xi: perturbed hopping chain recovers xi = 1") {
  HatanoParams p{3, 0.0, 1.0, {}};
  auto [h_ep, h_1] = build_model(p);
  const CMatrix h = h_ep + 1e-8 * h_1;
  EstimateConfig cfg;
  cfg.e_ep = 0.0;
  cfg.n = 3;
  EstimateReport report = estimate_xi(h, cfg);
  CHECK(report.xi_num == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(report.candidates.size() == 3);
  CHECK_FALSE(report.fallback_used);
  CHECK(report.de == doctest::Approx(std::cbrt(1e-8)).epsilon(1e-6));
}

TEST_CASE("estimate_xi: report invariant xi = n dE^{n-1} / r") {
  HatanoParams p{4, -0.05i, 1.5, {}};
  auto [h_ep, h_1] = build_model(p);
  const CMatrix h = h_ep + 1e-9 * h_1;
  EstimateConfig cfg;
  cfg.e_ep = -0.05i;
  cfg.n = 4;
  EstimateReport report = estimate_xi(h, cfg);
  CHECK(report.xi_num ==
        doctest::Approx(4.0 * std::pow(report.de, 3) / report.r_used).epsilon(1e-15));
}

TEST_CASE("estimate_xi: exact EP block triggers the fallback kick") {
  CMatrix h = CMatrix::Zero(5, 5);
  h.topLeftCorner(3, 3) = jordan_block(3, 0.0);
  h(3, 3) = 5.0;
  h(4, 4) = 6.0 + 1.0i;
  EstimateConfig cfg;
  cfg.e_ep = 0.0;
  cfg.n = 3;
  EstimateReport report = estimate_xi(h, cfg);
  CHECK(report.fallback_used);
  CHECK(report.xi_num == doctest::Approx(1.0).epsilon(1e-2));
}

TEST_CASE("estimate_xi: fallback is deterministic in the seed") {
  CMatrix h = CMatrix::Zero(3, 3);
  h.topLeftCorner(3, 3) = jordan_block(3, 0.25);
  EstimateConfig cfg;
  cfg.e_ep = 0.25;
  cfg.n = 3;
  EstimateReport a = estimate_xi(h, cfg);
  EstimateReport b = estimate_xi(h, cfg);
  CHECK(a.xi_num == b.xi_num);
  cfg.kick_seed = 77;
  EstimateReport c = estimate_xi(h, cfg);
  CHECK(c.xi_num != a.xi_num);  // different kick, different splitting
  CHECK(c.xi_num == doctest::Approx(1.0).epsilon(1e-2));
}

TEST_CASE("estimate_xi: no candidate raises NoEPCandidate") {
  // A Hermitian matrix has r = 1 for every mode; nothing passes tau.
  auto eng = rng::make_stream(601, 0);
  CMatrix a = rng::uniform_matrix(4, 4, eng);
  CMatrix h = a + a.adjoint();
  EstimateConfig cfg;
  cfg.e_ep = 0.0;
  cfg.n = 2;
  CHECK_THROWS_AS(estimate_xi(h, cfg), NoEPCandidate);
}

TEST_CASE("estimate_xi: config validation") {
  CMatrix h = jordan_block(3, 0.0);
  EstimateConfig cfg;
  cfg.e_ep = 0.0;
  cfg.n = 3;
  cfg.tau = 0.0;
  CHECK_THROWS_AS(estimate_xi(h, cfg), InvalidInput);
  cfg.tau = 0.1;
  cfg.degenerate_kick = 1e-6;
  CHECK_THROWS_AS(estimate_xi(h, cfg), InvalidInput);
  cfg.degenerate_kick = 1e-12;
  cfg.n = 4;  // exceeds the dimension
  CHECK_THROWS_AS(estimate_xi(CMatrix::Zero(3, 3), cfg), InvalidInput);
}

TEST_CASE("estimate_xi: unitary conjugation leaves the estimate put") {
  auto eng = rng::make_stream(602, 0);
  CMatrix q;
  do {
    q = rng::uniform_matrix(3, 3, eng);
  } while (condition_number(q) > 50.0);
  CMatrix h_ep = q * jordan_block(3, 0.1 - 0.3i) * q.inverse();
  CMatrix h = h_ep + 1e-9 * rng::uniform_matrix(3, 3, eng);
  EstimateConfig cfg;
  cfg.e_ep = 0.1 - 0.3i;
  cfg.n = 3;
  const double base = estimate_xi(h, cfg).xi_num;
  for (int rep = 0; rep < 3; ++rep) {
    CMatrix u = oracle::random_unitary_qr(3, eng);
    const double conj = estimate_xi(u * h * u.adjoint(), cfg).xi_num;
    CHECK(conj == doctest::Approx(base).epsilon(1e-6));
  }
}

TEST_CASE("estimate_xi: consistency against xi_exact for generic small EPs") {
  // The estimate truncates at leading order, so its error scales with the
  // ring radius (eps xi)^{1/n}; eps well inside 1e-8 keeps it below 1e-3.
  auto eng = rng::make_stream(603, 0);
  for (double eps : {1e-12, 1e-10}) {
    for (int rep = 0; rep < 5; ++rep) {
      CMatrix q;
      do {
        q = rng::uniform_matrix(3, 3, eng);
      } while (condition_number(q) > 50.0);
      const Complex e_ep = -0.05i;
      CMatrix h_ep = q * jordan_block(3, e_ep) * q.inverse();
      const double xi_true = xi_exact(EPSpec{h_ep, e_ep, 3});
      const CMatrix h = h_ep + eps * rng::uniform_matrix(3, 3, eng);
      EstimateConfig cfg;
      cfg.e_ep = e_ep;
      cfg.n = 3;
      EstimateReport report = estimate_xi(h, cfg);
      CHECK(std::abs(report.xi_num - xi_true) / xi_true <= 1e-3);
    }
  }
}

TEST_CASE("estimate_xi: ring-averaged detuning variant stays close") {
  HatanoParams p{3, 0.0, 1.0, {}};
  auto [h_ep, h_1] = build_model(p);
  const CMatrix h = h_ep + 1e-8 * h_1;
  EstimateConfig cfg;
  cfg.e_ep = 0.0;
  cfg.n = 3;
  cfg.average_ring_detuning = true;
  EstimateReport report = estimate_xi(h, cfg);
  CHECK(report.xi_num == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("estimate_xi: json serialization carries the diagnostics") {
  HatanoParams p{3, 0.0, 1.0, {}};
  auto [h_ep, h_1] = build_model(p);
  EstimateConfig cfg;
  cfg.e_ep = 0.0;
  cfg.n = 3;
  EstimateReport report = estimate_xi(h_ep + 1e-8 * h_1, cfg);
  nlohmann::json j = to_json(report);
  CHECK(j["xi_num"].get<double>() == report.xi_num);
  CHECK(j["candidates"].size() == 3);
  CHECK_FALSE(j["fallback_used"].get<bool>());
}
