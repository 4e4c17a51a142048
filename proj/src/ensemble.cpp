// Copyright (c) 2026 eptool contributors.
// SPDX-License-Identifier: Apache-2.0

#include "ep/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "ep/linalg.hpp"

namespace ep {

namespace {

// Substream channels inside one realization. Q resampling bumps its own
// channel so the other draws stay put.
constexpr std::uint64_t kChannelHa = 0;
constexpr std::uint64_t kChannelU = 1;
constexpr std::uint64_t kChannelQ = 2;

constexpr double kMaxQCondition = 1e12;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Nearest-rank quantile of an ascending vector.
double quantile(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return 0.0;
  const auto rank = static_cast<std::size_t>(
      std::ceil(q * static_cast<double>(sorted.size())));
  return sorted[std::min(sorted.size() - 1, rank > 0 ? rank - 1 : 0)];
}

std::uint64_t kick_seed_for(std::uint64_t master_seed, std::uint64_t index) {
  return master_seed + 0x9e3779b97f4a7c15ULL * (index + 1);
}

}  // namespace

Histogram make_histogram(const std::vector<double>& values, const HistogramSpec& spec) {
  if (spec.bins < 1 || spec.lo <= 0.0 || spec.hi <= spec.lo) {
    throw InvalidInput("histogram: need bins >= 1 and 0 < lo < hi");
  }
  Histogram hist;
  const double llo = std::log10(spec.lo);
  const double lhi = std::log10(spec.hi);
  for (int i = 0; i <= spec.bins; ++i) {
    hist.edges.push_back(std::pow(10.0, llo + (lhi - llo) * i / spec.bins));
  }
  hist.counts.assign(static_cast<std::size_t>(spec.bins), 0);
  std::uint64_t in_range = 0;
  for (double v : values) {
    if (!(v >= spec.lo)) {
      ++hist.underflow;
      continue;
    }
    if (v >= spec.hi) {
      ++hist.overflow;
      continue;
    }
    const double pos = (std::log10(v) - llo) / (lhi - llo) * spec.bins;
    auto bin = static_cast<std::size_t>(pos);
    bin = std::min(bin, static_cast<std::size_t>(spec.bins - 1));
    ++hist.counts[bin];
    ++in_range;
  }
  hist.density.assign(static_cast<std::size_t>(spec.bins), 0.0);
  if (in_range > 0) {
    for (int i = 0; i < spec.bins; ++i) {
      const double width = hist.edges[static_cast<std::size_t>(i + 1)] -
                           hist.edges[static_cast<std::size_t>(i)];
      hist.density[static_cast<std::size_t>(i)] =
          static_cast<double>(hist.counts[static_cast<std::size_t>(i)]) /
          (static_cast<double>(in_range) * width);
    }
  }
  return hist;
}

std::string histogram_to_csv(const Histogram& hist) {
  std::ostringstream out;
  out << "bin_lo,bin_hi,density\n";
  for (std::size_t i = 0; i < hist.counts.size(); ++i) {
    out << format_double(hist.edges[i]) << ',' << format_double(hist.edges[i + 1]) << ','
        << format_double(hist.density[i]) << '\n';
  }
  return out.str();
}

void validate(const EnsembleConfig& cfg) {
  if (cfg.n < 2) throw InvalidInput("ensemble: order must be at least 2");
  if (cfg.m <= cfg.n) throw InvalidInput("ensemble: need embedding dimension m > n");
  if (cfg.realizations < 1) throw InvalidInput("ensemble: need at least one realization");
  if (cfg.hist.bins < 1 || cfg.hist.lo <= 0.0 || cfg.hist.hi <= cfg.hist.lo) {
    throw InvalidInput("ensemble: malformed histogram spec");
  }
}

CMatrix random_unitary(Eigen::Index m, rng::Engine& eng) {
  if (m < 1) throw InvalidInput("random_unitary: dimension must be positive");
  const CMatrix a = rng::uniform_matrix(m, m, eng);
  Eigen::HouseholderQR<CMatrix> qr(a);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < m; ++i) {
    const Complex d = r(i, i);
    q.col(i) *= std::abs(d) > 0.0 ? d / std::abs(d) : Complex(1.0, 0.0);
  }
  return q;
}

Realization random_ep_hamiltonian(const EnsembleConfig& cfg, std::uint64_t index) {
  // n = m is allowed here (trivial embedding); run_experiment is stricter.
  if (cfg.n < 2 || cfg.m < cfg.n) throw InvalidInput("random_ep_hamiltonian: bad dimensions");

  CMatrix jordan = CMatrix::Zero(cfg.n, cfg.n);
  for (int i = 0; i < cfg.n; ++i) {
    jordan(i, i) = cfg.e_ep;
    if (i + 1 < cfg.n) jordan(i, i + 1) = 1.0;
  }

  Realization real;
  CMatrix q;
  for (std::uint64_t attempt = 0;; ++attempt) {
    auto eng = rng::make_stream(cfg.master_seed, index, kChannelQ + attempt);
    q = rng::uniform_matrix(cfg.n, cfg.n, eng);
    if (condition_number(q) <= kMaxQCondition) break;
    ++real.q_resamples;
  }
  const CMatrix h_ep = q * jordan * q.inverse();
  const CMatrix nilpotent = h_ep - cfg.e_ep * CMatrix::Identity(cfg.n, cfg.n);
  real.xi_true = spectral_norm(matrix_power(nilpotent, cfg.n - 1));

  real.h_block = CMatrix::Zero(cfg.m, cfg.m);
  real.h_block.topLeftCorner(cfg.n, cfg.n) = h_ep;
  if (cfg.m > cfg.n) {
    auto eng_a = rng::make_stream(cfg.master_seed, index, kChannelHa);
    real.h_block.bottomRightCorner(cfg.m - cfg.n, cfg.m - cfg.n) =
        rng::uniform_matrix(cfg.m - cfg.n, cfg.m - cfg.n, eng_a);
  }
  auto eng_u = rng::make_stream(cfg.master_seed, index, kChannelU);
  real.u = random_unitary(cfg.m, eng_u);
  real.h = real.u * real.h_block * real.u.adjoint();
  return real;
}

EnsembleReport run_experiment(const EnsembleConfig& cfg) {
  validate(cfg);
  const int total = cfg.realizations;
  std::vector<RealizationRecord> records(static_cast<std::size_t>(total));
  std::vector<char> failed(static_cast<std::size_t>(total), 0);

  int workers = cfg.workers;
  if (workers <= 0) {
    workers = static_cast<int>(std::min(8u, std::max(1u, std::thread::hardware_concurrency())));
  }
  workers = std::min(workers, total);

  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto body = [&](int begin, int end) {
    try {
      for (int i = begin; i < end; ++i) {
        const auto idx = static_cast<std::uint64_t>(i);
        const Realization real = random_ep_hamiltonian(cfg, idx);
        EstimateConfig est;
        est.e_ep = cfg.e_ep;
        est.n = cfg.n;
        est.tau = cfg.tau;
        est.degenerate_kick = cfg.degenerate_kick;
        est.kick_seed = kick_seed_for(cfg.master_seed, idx);
        try {
          const EstimateReport report = estimate_xi(real.h, est);
          auto& rec = records[static_cast<std::size_t>(i)];
          rec.xi_true = real.xi_true;
          rec.xi_num = report.xi_num;
          rec.delta = std::abs(report.xi_num - real.xi_true) / real.xi_true;
        } catch (const NoEPCandidate&) {
          failed[static_cast<std::size_t>(i)] = 1;
        }
      }
    } catch (...) {
      const std::lock_guard<std::mutex> lock(error_mutex);
      if (!first_error) first_error = std::current_exception();
    }
  };

  if (workers <= 1) {
    body(0, total);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (total + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const int begin = w * chunk;
      const int end = std::min(total, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(body, begin, end);
    }
    for (auto& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  EnsembleReport report;
  std::vector<double> deltas;
  for (int i = 0; i < total; ++i) {
    if (failed[static_cast<std::size_t>(i)]) {
      ++report.failed_count;
      report.failed_indices.push_back(static_cast<std::uint64_t>(i));
      continue;
    }
    report.records.push_back(records[static_cast<std::size_t>(i)]);
    deltas.push_back(records[static_cast<std::size_t>(i)].delta);
  }
  report.hist = make_histogram(deltas, cfg.hist);
  std::sort(deltas.begin(), deltas.end());
  report.p50 = quantile(deltas, 0.50);
  report.p99 = quantile(deltas, 0.99);
  report.max = deltas.empty() ? 0.0 : deltas.back();
  return report;
}

nlohmann::json to_json(const Histogram& h) {
  return {{"edges", h.edges},
          {"counts", h.counts},
          {"density", h.density},
          {"underflow", h.underflow},
          {"overflow", h.overflow}};
}

nlohmann::json to_json(const EnsembleReport& r) {
  nlohmann::json records = nlohmann::json::array();
  for (const auto& rec : r.records) {
    records.push_back({{"xi_true", rec.xi_true}, {"xi_num", rec.xi_num}, {"delta", rec.delta}});
  }
  return {{"records", std::move(records)},
          {"histogram", to_json(r.hist)},
          {"quantiles", {{"p50", r.p50}, {"p99", r.p99}, {"max", r.max}}},
          {"failed", r.failed_count},
          {"failed_indices", r.failed_indices}};
}

GrayImage matrix_heatmap(const CMatrix& h) {
  if (!is_finite(h)) throw InvalidInput("matrix_heatmap: non-finite entries");
  GrayImage img;
  img.rows = h.rows();
  img.cols = h.cols();
  img.shade.reserve(static_cast<std::size_t>(h.size()));
  const double max_abs = h.size() > 0 ? h.cwiseAbs().maxCoeff() : 0.0;
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    for (Eigen::Index j = 0; j < h.cols(); ++j) {
      img.shade.push_back(max_abs > 0.0 ? std::abs(h(i, j)) / max_abs : 0.0);
    }
  }
  return img;
}

}  // namespace ep
