// Copyright (c) 2026 eptool contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "ep/ensemble.hpp"

namespace ep::svg {

/// Grid rendering of a grayscale image; shade 1 maps to black.
/// `comment` is embedded verbatim inside an XML comment (manifests).
std::string heatmap(const GrayImage& img, int cell_px = 16, const std::string& comment = "");

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Log-log polyline chart; points with non-positive coordinates are skipped.
std::string loglog_chart(const std::vector<Series>& series, const std::string& x_label,
                         const std::string& y_label, const std::string& comment = "");

/// Histogram bars with logarithmic x (bin edges) and y (density).
std::string histogram(const Histogram& hist, const std::string& comment = "");

}  // namespace ep::svg
