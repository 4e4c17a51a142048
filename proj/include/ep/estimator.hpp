// Copyright (c) 2026 eptool contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "ep/modes.hpp"
#include "ep/types.hpp"

namespace ep {

/// Configuration of the response-strength estimator. E_EP and n are assumed
/// known; the estimator only reconstructs xi.
struct EstimateConfig {
  Complex e_ep;
  int n = 2;
  /// Rigidity threshold separating near-EP modes from generic ones.
  double tau = 0.1;
  /// Relative spectral norm of the fallback perturbation applied when the
  /// input sits exactly on the EP (kept within [1e-14, 1e-8]).
  double degenerate_kick = 1e-12;
  /// Seed of the (deterministic) fallback perturbation.
  std::uint64_t kick_seed = 0x6b69636bULL;
  /// Replace the selected mode's detuning by the mean over all candidates
  /// (robustness variant; the default uses the single selected mode).
  bool average_ring_detuning = false;
};

struct EstimateReport {
  double xi_num = 0.0;
  double de = 0.0;      // detuning used in the formula
  double r_used = 0.0;  // rigidity of the selected mode
  int l_selected = -1;  // index into the sorted mode table
  std::vector<std::pair<Complex, double>> candidates;  // (E_l, r_l) passing tau
  bool fallback_used = false;
};

/// Estimates xi of an EP embedded in an m-dimensional space from one
/// eigendecomposition: among modes with r < tau, pick the one closest to
/// E_EP and evaluate xi = n dE^{n-1} / r.
///
/// When no usable candidate exists (no mode passes the filter, or the best
/// one is numerically degenerate with dE ~ 0 or r ~ 0, as happens when the
/// input represents the EP exactly), one retry is made after adding a seeded
/// random perturbation of spectral norm degenerate_kick * ||H||. A second
/// failure raises NoEPCandidate.
EstimateReport estimate_xi(const CMatrix& h, const EstimateConfig& cfg);

nlohmann::json to_json(const EstimateReport& r);

}  // namespace ep
