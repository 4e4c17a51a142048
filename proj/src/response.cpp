// Copyright (c) 2026 eptool contributors.
// SPDX-License-Identifier: Apache-2.0

#include "ep/response.hpp"

#include <cmath>

namespace ep {

double xi_exact(const EPSpec& ep, double tol_nilp) {
  require_ep(ep, tol_nilp);
  const CMatrix n =
      ep.h_ep - ep.e_ep * CMatrix::Identity(ep.h_ep.rows(), ep.h_ep.cols());
  return spectral_norm(matrix_power(n, ep.order - 1));
}

Prediction predicted_rigidity(int n, double de, double xi) {
  if (n < 2) throw InvalidInput("predicted_rigidity: order must be at least 2");
  if (xi <= 0.0) throw InvalidInput("predicted_rigidity: xi must be positive");
  if (de < 0.0) throw InvalidInput("predicted_rigidity: negative detuning");
  const double r = n * std::pow(de, n - 1) / xi;
  return {r, r <= 1.0};
}

Prediction predicted_petermann(int n, double de, double xi) {
  if (n < 2) throw InvalidInput("predicted_petermann: order must be at least 2");
  if (xi <= 0.0) throw InvalidInput("predicted_petermann: xi must be positive");
  if (de <= 0.0) throw DivergesAtEP("Petermann factor diverges at the EP (dE = 0)");
  const double k = xi * xi / (n * n * std::pow(de, 2 * n - 2));
  return {k, k >= 1.0};
}

BoundsRecord bounds(int n, std::optional<double> eps, std::optional<double> norm_h1,
                    std::optional<double> xi, std::optional<double> im_e_ep,
                    std::optional<double> de) {
  if (n < 2) throw InvalidInput("bounds: order must be at least 2");
  BoundsRecord b;
  b.k_resolvable_peak = std::pow(2.0, n - 1) * std::pow(static_cast<double>(n), n - 3);
  if (eps && norm_h1 && xi) {
    if (*eps < 0.0 || *norm_h1 <= 0.0 || *xi <= 0.0) {
      throw InvalidInput("bounds: eps must be >= 0, ||H_1|| and xi positive");
    }
    const double drive = *eps * *norm_h1;
    b.r_upper = n * std::pow(drive, (n - 1.0) / n) / std::pow(*xi, 1.0 / n);
    b.k_lower = std::pow(*xi, 2.0 / n) / (n * n * std::pow(drive, (2.0 * n - 2.0) / n));
  }
  if (im_e_ep) {
    const double gamma = std::abs(*im_e_ep);
    b.xi_passive_upper = std::pow(std::sqrt(2.0 * n) * gamma, n - 1);
    if (de && *de > 0.0) {
      b.k_passive_upper = b.k_resolvable_peak * std::pow(gamma / *de, 2 * n - 2);
    }
  }
  return b;
}

ResponseReport analyze_ep(const EPSpec& ep, const std::vector<double>& detunings,
                          std::optional<double> eps, std::optional<double> norm_h1,
                          std::optional<double> bound_de) {
  ResponseReport report;
  report.xi = xi_exact(ep);
  report.xi_chain = xi_from_chain(build_chain(ep));
  report.gap_rel = std::abs(report.xi - report.xi_chain) / report.xi;
  report.n = ep.order;
  report.e_ep = ep.e_ep;
  for (double de : detunings) {
    if (de <= 0.0) throw InvalidInput("analyze_ep: detunings must be positive");
    report.detunings.push_back(de);
    report.r_pred.push_back(predicted_rigidity(ep.order, de, report.xi));
    report.k_pred.push_back(predicted_petermann(ep.order, de, report.xi));
  }
  report.bound = bounds(ep.order, eps, norm_h1, report.xi, std::imag(ep.e_ep), bound_de);
  return report;
}

namespace {

nlohmann::json opt_json(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

nlohmann::json to_json(const BoundsRecord& b) {
  return {{"r_upper", opt_json(b.r_upper)},
          {"k_lower", opt_json(b.k_lower)},
          {"xi_passive_upper", opt_json(b.xi_passive_upper)},
          {"k_passive_upper", opt_json(b.k_passive_upper)},
          {"k_resolvable_peak", b.k_resolvable_peak}};
}

nlohmann::json to_json(const ResponseReport& r) {
  nlohmann::json table = nlohmann::json::array();
  for (std::size_t i = 0; i < r.detunings.size(); ++i) {
    table.push_back({{"de", r.detunings[i]},
                     {"r", r.r_pred[i].value},
                     {"r_in_regime", r.r_pred[i].in_regime},
                     {"k", r.k_pred[i].value},
                     {"k_in_regime", r.k_pred[i].in_regime}});
  }
  return {{"xi", r.xi},
          {"xi_chain", r.xi_chain},
          {"gap_rel", r.gap_rel},
          {"n", r.n},
          {"e_ep", {std::real(r.e_ep), std::imag(r.e_ep)}},
          {"predictions", std::move(table)},
          {"bounds", to_json(r.bound)}};
}

}  // namespace ep
