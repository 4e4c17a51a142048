// Copyright (c) 2026 eptool contributors.
// SPDX-License-Identifier: Apache-2.0

#include "ep/modes.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace ep {

namespace {

// Nearest eigenvalue to `target`, rejecting the match when the runner-up is
// within a factor 2 in distance (or exactly tied).
int track_nearest(const std::vector<Complex>& values, Complex target) {
  double d1 = std::numeric_limits<double>::infinity();
  double d2 = std::numeric_limits<double>::infinity();
  int best = -1;
  for (std::size_t j = 0; j < values.size(); ++j) {
    const double d = std::abs(values[j] - target);
    if (d < d1) {
      d2 = d1;
      d1 = d;
      best = static_cast<int>(j);
    } else if (d < d2) {
      d2 = d;
    }
  }
  if (values.size() > 1 && (d2 < 2.0 * d1 || d1 == d2)) {
    throw TrackingError("eigenvalue continuation ambiguous: nearest " + std::to_string(d1) +
                        ", runner-up " + std::to_string(d2));
  }
  return best;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::vector<BiorthogonalMode> analyze_modes(const CMatrix& h, double tol_eig,
                                            LeftVectors source) {
  const EigenSystem sys = eig_full(h, tol_eig, source);
  std::vector<BiorthogonalMode> modes;
  modes.reserve(sys.values.size());
  for (int i = 0; i < sys.size(); ++i) {
    BiorthogonalMode m;
    m.e = sys.values[i];
    m.right = sys.right[i];
    m.left = sys.left[i];
    m.overlap = m.left.dot(m.right);
    m.r = std::abs(m.overlap);
    m.k = m.r < kOverlapFloor ? std::numeric_limits<double>::infinity() : 1.0 / (m.r * m.r);
    modes.push_back(std::move(m));
  }
  return modes;
}

std::string modes_to_csv(const std::vector<BiorthogonalMode>& modes) {
  std::ostringstream out;
  out << "l,Re(E),Im(E),r,K\n";
  for (std::size_t l = 0; l < modes.size(); ++l) {
    const auto& m = modes[l];
    out << l << ',' << format_double(std::real(m.e)) << ',' << format_double(std::imag(m.e)) << ','
        << format_double(m.r) << ',' << format_double(m.k) << '\n';
  }
  return out.str();
}

DerivativeCheck perturbation_derivative_check(const CMatrix& h_ep, const CMatrix& h_1, double eps,
                                              int l, double h) {
  if (h_ep.rows() != h_ep.cols() || h_1.rows() != h_1.cols() || h_ep.rows() != h_1.rows()) {
    throw InvalidInput("perturbation_derivative_check: shape mismatch");
  }
  if (eps <= 0.0 || h <= 0.0) {
    throw InvalidInput("perturbation_derivative_check: eps and h must be positive");
  }
  const auto modes = analyze_modes(h_ep + eps * h_1);
  if (l < 0 || l >= static_cast<int>(modes.size())) {
    throw InvalidInput("perturbation_derivative_check: mode index out of range");
  }
  const BiorthogonalMode& mode = modes[static_cast<std::size_t>(l)];
  if (std::abs(mode.overlap) < kOverlapFloor) {
    throw NumericalError("perturbation_derivative_check: mode is numerically defective");
  }

  DerivativeCheck check;
  check.rhs = mode.left.dot(h_1 * mode.right) / mode.overlap;

  const EigenSystem plus = eig_full(h_ep + (eps + h) * h_1);
  const EigenSystem minus = eig_full(h_ep + (eps - h) * h_1);
  const Complex e_plus = plus.values[static_cast<std::size_t>(track_nearest(plus.values, mode.e))];
  const Complex e_minus =
      minus.values[static_cast<std::size_t>(track_nearest(minus.values, mode.e))];
  check.lhs = (e_plus - e_minus) / (2.0 * h);
  const double denom = std::max(std::abs(check.rhs), std::numeric_limits<double>::min());
  check.rel_diff = std::abs(check.lhs - check.rhs) / denom;
  return check;
}

}  // namespace ep
