// Copyright (c) 2026 eptool contributors.
// SPDX-License-Identifier: Apache-2.0

#include "ep/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace ep::svg {

namespace {

const char* kSeriesColors[] = {"#c0392b", "#2980b9", "#27ae60", "#8e44ad"};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

std::string escape_comment(const std::string& text) {
  std::string safe = text;
  std::size_t pos = 0;
  while ((pos = safe.find("--", pos)) != std::string::npos) safe.replace(pos, 2, "- ");
  return safe;
}

void open_svg(std::ostringstream& out, int width, int height, const std::string& comment) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  if (!comment.empty()) out << "<!-- " << escape_comment(comment) << " -->\n";
}

struct LogAxis {
  double lo = 0.0;
  double hi = 1.0;
  double px0 = 0.0;
  double px1 = 1.0;

  double map(double v) const {
    return px0 + (std::log10(v) - lo) / (hi - lo) * (px1 - px0);
  }
};

void draw_log_ticks(std::ostringstream& out, const LogAxis& axis, bool horizontal, double cross_px,
                    double tick_len) {
  const int first = static_cast<int>(std::ceil(axis.lo - 1e-9));
  const int last = static_cast<int>(std::floor(axis.hi + 1e-9));
  for (int d = first; d <= last; ++d) {
    const double p = axis.map(std::pow(10.0, d));
    if (horizontal) {
      out << "<line x1=\"" << fmt(p) << "\" y1=\"" << fmt(cross_px) << "\" x2=\"" << fmt(p)
          << "\" y2=\"" << fmt(cross_px + tick_len) << "\" stroke=\"#333333\"/>\n";
      out << "<text x=\"" << fmt(p) << "\" y=\"" << fmt(cross_px + tick_len + 12.0)
          << "\" font-size=\"10\" text-anchor=\"middle\">1e" << d << "</text>\n";
    } else {
      out << "<line x1=\"" << fmt(cross_px - tick_len) << "\" y1=\"" << fmt(p) << "\" x2=\""
          << fmt(cross_px) << "\" y2=\"" << fmt(p) << "\" stroke=\"#333333\"/>\n";
      out << "<text x=\"" << fmt(cross_px - tick_len - 2.0) << "\" y=\"" << fmt(p + 3.0)
          << "\" font-size=\"10\" text-anchor=\"end\">1e" << d << "</text>\n";
    }
  }
}

}  // namespace

std::string heatmap(const GrayImage& img, int cell_px, const std::string& comment) {
  const int width = static_cast<int>(img.cols) * cell_px;
  const int height = static_cast<int>(img.rows) * cell_px;
  std::ostringstream out;
  open_svg(out, std::max(width, 1), std::max(height, 1), comment);
  for (Eigen::Index i = 0; i < img.rows; ++i) {
    for (Eigen::Index j = 0; j < img.cols; ++j) {
      const int level =
          static_cast<int>(std::lround(255.0 * (1.0 - std::clamp(img.at(i, j), 0.0, 1.0))));
      char color[8];
      std::snprintf(color, sizeof(color), "#%02x%02x%02x", level, level, level);
      out << "<rect x=\"" << j * cell_px << "\" y=\"" << i * cell_px << "\" width=\"" << cell_px
          << "\" height=\"" << cell_px << "\" fill=\"" << color << "\"/>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

std::string loglog_chart(const std::vector<Series>& series, const std::string& x_label,
                         const std::string& y_label, const std::string& comment) {
  const int width = 520, height = 380;
  const double margin_l = 64.0, margin_r = 16.0, margin_t = 16.0, margin_b = 48.0;
  double xmin = std::numeric_limits<double>::infinity(), xmax = 0.0;
  double ymin = std::numeric_limits<double>::infinity(), ymax = 0.0;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (s.x[i] <= 0.0 || s.y[i] <= 0.0) continue;
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, s.y[i]);
      ymax = std::max(ymax, s.y[i]);
    }
  }
  if (!(xmax > 0.0) || !(ymax > 0.0)) {
    xmin = ymin = 0.1;
    xmax = ymax = 1.0;
  }
  const LogAxis xaxis{std::floor(std::log10(xmin)), std::ceil(std::log10(xmax)), margin_l,
                      width - margin_r};
  const LogAxis yaxis{std::ceil(std::log10(ymax)), std::floor(std::log10(ymin)), margin_t,
                      height - margin_b};

  std::ostringstream out;
  open_svg(out, width, height, comment);
  out << "<rect x=\"" << fmt(margin_l) << "\" y=\"" << fmt(margin_t) << "\" width=\""
      << fmt(width - margin_l - margin_r) << "\" height=\"" << fmt(height - margin_t - margin_b)
      << "\" fill=\"none\" stroke=\"#333333\"/>\n";
  draw_log_ticks(out, xaxis, true, height - margin_b, 4.0);
  draw_log_ticks(out, yaxis, false, margin_l, 4.0);
  out << "<text x=\"" << fmt((margin_l + width - margin_r) / 2.0) << "\" y=\"" << height - 8
      << "\" font-size=\"12\" text-anchor=\"middle\">" << x_label << "</text>\n";
  out << "<text x=\"14\" y=\"" << fmt((margin_t + height - margin_b) / 2.0)
      << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
      << fmt((margin_t + height - margin_b) / 2.0) << ")\">" << y_label << "</text>\n";

  int color_index = 0;
  double legend_y = margin_t + 14.0;
  for (const auto& s : series) {
    const char* color = kSeriesColors[color_index % 4];
    std::ostringstream points;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (s.x[i] <= 0.0 || s.y[i] <= 0.0) continue;
      points << fmt(xaxis.map(s.x[i])) << ',' << fmt(yaxis.map(s.y[i])) << ' ';
    }
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\""
        << points.str() << "\"/>\n";
    out << "<text x=\"" << fmt(margin_l + 8.0) << "\" y=\"" << fmt(legend_y)
        << "\" font-size=\"11\" fill=\"" << color << "\">" << s.label << "</text>\n";
    legend_y += 14.0;
    ++color_index;
  }
  out << "</svg>\n";
  return out.str();
}

std::string histogram(const Histogram& hist, const std::string& comment) {
  const int width = 520, height = 380;
  const double margin_l = 64.0, margin_r = 16.0, margin_t = 16.0, margin_b = 48.0;
  double dmin = std::numeric_limits<double>::infinity(), dmax = 0.0;
  for (double d : hist.density) {
    if (d <= 0.0) continue;
    dmin = std::min(dmin, d);
    dmax = std::max(dmax, d);
  }
  if (!(dmax > 0.0)) {
    dmin = 0.1;
    dmax = 1.0;
  }
  const LogAxis xaxis{std::log10(hist.edges.front()), std::log10(hist.edges.back()), margin_l,
                      width - margin_r};
  const LogAxis yaxis{std::ceil(std::log10(dmax)), std::floor(std::log10(dmin)), margin_t,
                      height - margin_b};
  std::ostringstream out;
  open_svg(out, width, height, comment);
  out << "<rect x=\"" << fmt(margin_l) << "\" y=\"" << fmt(margin_t) << "\" width=\""
      << fmt(width - margin_l - margin_r) << "\" height=\"" << fmt(height - margin_t - margin_b)
      << "\" fill=\"none\" stroke=\"#333333\"/>\n";
  draw_log_ticks(out, xaxis, true, height - margin_b, 4.0);
  draw_log_ticks(out, yaxis, false, margin_l, 4.0);
  for (std::size_t i = 0; i < hist.density.size(); ++i) {
    if (hist.density[i] <= 0.0) continue;
    const double x0 = xaxis.map(hist.edges[i]);
    const double x1 = xaxis.map(hist.edges[i + 1]);
    const double y = yaxis.map(hist.density[i]);
    out << "<rect x=\"" << fmt(x0) << "\" y=\"" << fmt(y) << "\" width=\"" << fmt(x1 - x0)
        << "\" height=\"" << fmt(height - margin_b - y)
        << "\" fill=\"#2980b9\" stroke=\"#1a5276\" stroke-width=\"0.5\"/>\n";
  }
  out << "<text x=\"" << fmt((margin_l + width - margin_r) / 2.0) << "\" y=\"" << height - 8
      << "\" font-size=\"12\" text-anchor=\"middle\">relative error</text>\n";
  out << "<text x=\"14\" y=\"" << fmt((margin_t + height - margin_b) / 2.0)
      << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
      << fmt((margin_t + height - margin_b) / 2.0) << ")\">density</text>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace ep::svg
