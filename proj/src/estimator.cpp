// Copyright (c) 2026 eptool contributors.
// SPDX-License-Identifier: Apache-2.0

#include "ep/estimator.hpp"

#include <cmath>
#include <limits>
#include <optional>

#include "ep/linalg.hpp"
#include "ep/rng.hpp"

namespace ep {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void validate(const EstimateConfig& cfg, const CMatrix& h) {
  if (h.rows() != h.cols()) throw InvalidInput("estimate_xi: matrix must be square");
  if (cfg.n < 2) throw InvalidInput("estimate_xi: order must be at least 2");
  if (h.rows() < cfg.n) throw InvalidInput("estimate_xi: dimension below the EP order");
  if (cfg.tau <= 0.0 || cfg.tau > 1.0) throw InvalidInput("estimate_xi: tau must be in (0, 1]");
  if (cfg.degenerate_kick < 1e-14 || cfg.degenerate_kick > 1e-8) {
    throw InvalidInput("estimate_xi: degenerate_kick outside [1e-14, 1e-8]");
  }
}

// One filtering/selection pass. Returns nothing when no mode passes the
// filter or the winner is too degenerate for the formula to mean anything.
std::optional<EstimateReport> try_estimate(const CMatrix& h, const EstimateConfig& cfg,
                                           double de_floor) {
  const auto modes = analyze_modes(h);
  EstimateReport report;
  int best = -1;
  double best_de = std::numeric_limits<double>::infinity();
  double de_sum = 0.0;
  for (std::size_t l = 0; l < modes.size(); ++l) {
    if (modes[l].r >= cfg.tau) continue;
    report.candidates.emplace_back(modes[l].e, modes[l].r);
    const double de = std::abs(modes[l].e - cfg.e_ep);
    de_sum += de;
    if (de < best_de) {
      best_de = de;
      best = static_cast<int>(l);
    }
  }
  if (best < 0) return std::nullopt;
  const BiorthogonalMode& mode = modes[static_cast<std::size_t>(best)];
  if (best_de < de_floor || mode.r < kOverlapFloor) return std::nullopt;

  report.l_selected = best;
  report.r_used = mode.r;
  report.de = cfg.average_ring_detuning
                  ? de_sum / static_cast<double>(report.candidates.size())
                  : best_de;
  report.xi_num = cfg.n * std::pow(report.de, cfg.n - 1) / report.r_used;
  return report;
}

}  // namespace

EstimateReport estimate_xi(const CMatrix& h, const EstimateConfig& cfg) {
  validate(cfg, h);
  const double scale = h.norm();
  const double de_floor = 64.0 * kEps * std::max({scale, std::abs(cfg.e_ep), 1.0});

  if (auto report = try_estimate(h, cfg, de_floor)) return *report;

  // Exactly-at-EP fallback: a tiny seeded perturbation splits the degeneracy
  // enough for the eigensolver to resolve the ring.
  auto eng = rng::make_stream(cfg.kick_seed, 0);
  CMatrix kick = rng::uniform_matrix(h.rows(), h.cols(), eng);
  kick *= cfg.degenerate_kick * std::max(scale, 1.0) / spectral_norm(kick);
  if (auto report = try_estimate(h + kick, cfg, de_floor)) {
    report->fallback_used = true;
    return *report;
  }
  throw NoEPCandidate("estimate_xi: no mode with r < tau near E_EP, even after the fallback kick");
}

nlohmann::json to_json(const EstimateReport& r) {
  nlohmann::json candidates = nlohmann::json::array();
  for (const auto& [e, rig] : r.candidates) {
    candidates.push_back({{"e", {std::real(e), std::imag(e)}}, {"r", rig}});
  }
  return {{"xi_num", r.xi_num},
          {"de", r.de},
          {"r_used", r.r_used},
          {"l_selected", r.l_selected},
          {"candidates", std::move(candidates)},
          {"fallback_used", r.fallback_used}};
}

}  // namespace ep
