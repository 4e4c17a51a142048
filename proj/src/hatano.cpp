// Copyright (c) 2026 eptool contributors.
// SPDX-License-Identifier: Apache-2.0

#include "ep/hatano.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "ep/errors.hpp"
#include "ep/response.hpp"

namespace ep {

namespace {

// Expansion variable x = |dE / A| = (eps / |A|)^{1/n}.
double expansion_x(const HatanoParams& p, double eps) {
  return std::pow(eps / std::abs(p.a), 1.0 / p.n);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::vector<double> default_eps_grid() {
  std::vector<double> grid;
  const int points = 40;
  const double lo = -10.0, hi = -1.0;
  for (int i = 0; i < points; ++i) {
    grid.push_back(std::pow(10.0, lo + (hi - lo) * i / (points - 1)));
  }
  return grid;
}

void validate(const HatanoParams& p) {
  if (p.n < 2) throw InvalidInput("hatano: order must be at least 2");
  if (p.a == Complex(0.0, 0.0)) throw InvalidInput("hatano: hopping A must be nonzero");
  double prev = 0.0;
  for (double eps : p.eps_grid) {
    if (eps <= prev) throw InvalidInput("hatano: eps grid must be positive and increasing");
    prev = eps;
  }
}

std::pair<CMatrix, CMatrix> build_model(const HatanoParams& p) {
  validate(p);
  CMatrix h_ep = CMatrix::Zero(p.n, p.n);
  for (int i = 0; i < p.n; ++i) {
    h_ep(i, i) = p.e0;
    if (i + 1 < p.n) h_ep(i, i + 1) = p.a;
  }
  CMatrix h_1 = CMatrix::Zero(p.n, p.n);
  h_1(p.n - 1, 0) = 1.0;
  return {std::move(h_ep), std::move(h_1)};
}

ShiftTable exact_shift(const HatanoParams& p, double eps) {
  validate(p);
  if (eps <= 0.0) throw InvalidInput("exact_shift: eps must be positive");
  ShiftTable table;
  table.magnitude = std::pow(eps * std::pow(std::abs(p.a), p.n - 1), 1.0 / p.n);
  const Complex principal =
      std::pow(eps, 1.0 / p.n) * std::pow(p.a, (p.n - 1.0) / p.n);
  for (int l = 1; l <= p.n; ++l) {
    const double phi = 2.0 * M_PI * l / p.n;
    table.branches.push_back(principal * Complex(std::cos(phi), std::sin(phi)));
  }
  return table;
}

HatanoRigidity exact_rigidity(const HatanoParams& p, double eps) {
  validate(p);
  if (eps <= 0.0) throw InvalidInput("exact_rigidity: eps must be positive");
  HatanoRigidity rig;
  rig.x = expansion_x(p, eps);
  double denom = 0.0;
  for (int j = 1; j <= p.n; ++j) denom += std::pow(rig.x, j - 1);
  rig.r = p.n * std::pow(rig.x, p.n - 1) / denom;
  rig.k = 1.0 / (rig.r * rig.r);
  rig.in_regime = rig.x < 1.0;
  return rig;
}

HatanoRigidity rigidity_from_overlap(const HatanoParams& p, double eps) {
  validate(p);
  if (eps <= 0.0) throw InvalidInput("rigidity_from_overlap: eps must be positive");
  HatanoRigidity rig;
  rig.x = expansion_x(p, eps);
  double denom = 0.0;
  for (int j = 1; j <= p.n; ++j) denom += std::pow(rig.x, 2 * (j - 1));
  rig.r = p.n * std::pow(rig.x, p.n - 1) / denom;
  rig.k = 1.0 / (rig.r * rig.r);
  rig.in_regime = rig.x < 1.0;
  return rig;
}

std::vector<SweepRow> figure1_sweep(const HatanoParams& p) {
  validate(p);
  if (p.eps_grid.empty()) throw InvalidInput("figure1_sweep: empty eps grid");
  const double xi = std::pow(std::abs(p.a), p.n - 1);
  std::vector<SweepRow> rows;
  rows.reserve(p.eps_grid.size());
  for (double eps : p.eps_grid) {
    SweepRow row;
    row.eps = eps;
    const HatanoRigidity rig = exact_rigidity(p, eps);
    row.r_exact = rig.r;
    row.k_exact = rig.k;
    row.r_pred = predicted_rigidity(p.n, exact_shift(p, eps).magnitude, xi).value;
    row.k_pred = predicted_petermann(p.n, exact_shift(p, eps).magnitude, xi).value;
    rows.push_back(row);
  }
  return rows;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "eps,r_exact,r_pred,K_exact,K_pred\n";
  for (const auto& row : rows) {
    out << format_double(row.eps) << ',' << format_double(row.r_exact) << ','
        << format_double(row.r_pred) << ',' << format_double(row.k_exact) << ','
        << format_double(row.k_pred) << '\n';
  }
  return out.str();
}

}  // namespace ep
