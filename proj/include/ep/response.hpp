// Copyright (c) 2026 eptool contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <vector>

#include <json.hpp>

#include "ep/jordan.hpp"
#include "ep/types.hpp"

namespace ep {

/// Spectral response strength xi = ||N^{n-1}|| of a validated EP.
/// Throws NotAnEP when the nilpotency check fails.
double xi_exact(const EPSpec& ep, double tol_nilp = kDefaultNilpTol);

/// A leading-order prediction together with a regime flag. The asymptotic
/// formulas are only meaningful while r <= 1 (equivalently K >= 1); outside
/// that window the raw value is still returned, never clamped.
struct Prediction {
  double value = 0.0;
  bool in_regime = true;
};

/// Leading-order phase rigidity near an EP: r = n dE^{n-1} / xi.
Prediction predicted_rigidity(int n, double de, double xi);

/// Leading-order Petermann factor: K = xi^2 / (n^2 dE^{2n-2}), identical to
/// 1/r^2. Throws DivergesAtEP at de = 0.
Prediction predicted_petermann(int n, double de, double xi);

/// The closed-form bounds. Fields are empty when their inputs were not
/// supplied ("not computed"), never silently defaulted.
///
/// The two passive-system entries treat 2 dE as the detectable peak
/// splitting. That estimate needs the ring spread along the real axis, so it
/// is reliable for n >= 3; at n = 2 the whole eigenvalue change can sit in
/// the imaginary part and k_resolvable_peak = 1 just says such peaks buy no
/// sensing enhancement. Both are still computed for every n >= 2.
struct BoundsRecord {
  std::optional<double> r_upper;           // from eps, ||H_1||, xi
  std::optional<double> k_lower;           // from eps, ||H_1||, xi
  std::optional<double> xi_passive_upper;  // from Im E_EP
  std::optional<double> k_passive_upper;   // from Im E_EP and a detuning
  double k_resolvable_peak = 0.0;          // 2^{n-1} n^{n-3}, from n alone
};

BoundsRecord bounds(int n, std::optional<double> eps, std::optional<double> norm_h1,
                    std::optional<double> xi, std::optional<double> im_e_ep,
                    std::optional<double> de);

/// Everything the `exact` analysis reports for one EP: both xi routes, their
/// gap, per-detuning predictions, and the bounds record.
struct ResponseReport {
  double xi = 0.0;        // canonical value, from the norm formula
  double xi_chain = 0.0;  // from the Jordan-chain length
  double gap_rel = 0.0;   // |xi - xi_chain| / xi
  int n = 0;
  Complex e_ep;
  std::vector<double> detunings;
  std::vector<Prediction> r_pred;
  std::vector<Prediction> k_pred;
  BoundsRecord bound;
};

/// Runs both xi computations and tabulates predictions over the supplied
/// detunings (all must be > 0). eps/norm_h1/bound_de feed the bounds record
/// when present; Im E_EP comes from the EPSpec argument.
ResponseReport analyze_ep(const EPSpec& ep, const std::vector<double>& detunings = {},
                          std::optional<double> eps = {}, std::optional<double> norm_h1 = {},
                          std::optional<double> bound_de = {});

nlohmann::json to_json(const BoundsRecord& b);
nlohmann::json to_json(const ResponseReport& r);

}  // namespace ep
