// Copyright (c) 2026 eptool contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "ep/estimator.hpp"
#include "ep/rng.hpp"
#include "ep/types.hpp"

namespace ep {

/// Log-spaced histogram specification. Values outside [lo, hi) land in the
/// separate underflow/overflow counters.
struct HistogramSpec {
  int bins = 60;
  double lo = 1e-12;
  double hi = 1.0;
};

struct Histogram {
  std::vector<double> edges;           // bins + 1 ascending edges
  std::vector<std::uint64_t> counts;   // per-bin counts
  std::vector<double> density;         // normalized over in-range values
  std::uint64_t underflow = 0;
  std::uint64_t overflow = 0;
};

Histogram make_histogram(const std::vector<double>& values, const HistogramSpec& spec);

/// CSV with header bin_lo,bin_hi,density.
std::string histogram_to_csv(const Histogram& hist);

/// Random-matrix experiment configuration. Every draw is a pure function of
/// (master_seed, realization index), so results do not depend on how many
/// workers execute the loop. `workers` is an execution resource, not part of
/// the result, and is deliberately excluded from serialized reports.
struct EnsembleConfig {
  int m = 20;
  int n = 3;
  Complex e_ep = Complex(0.0, -0.05);
  int realizations = 10000;
  std::uint64_t master_seed = 1;
  HistogramSpec hist;
  double tau = 0.1;
  double degenerate_kick = 1e-12;
  int workers = 0;  // 0 = automatic
};

void validate(const EnsembleConfig& cfg);

/// Unitary from the QR factorization of a uniform random complex matrix,
/// with the R-diagonal phases absorbed into Q to fix the distribution.
CMatrix random_unitary(Eigen::Index m, rng::Engine& eng);

/// One ensemble member: an m x m matrix hiding an EP of order n with
/// eigenvalue e_ep and known response strength.
struct Realization {
  CMatrix h;        // U blockdiag(H_EP, H_a) U^dagger
  CMatrix h_block;  // the block matrix before conjugation
  CMatrix u;        // the conjugating unitary
  double xi_true = 0.0;
  int q_resamples = 0;  // ill-conditioned Q draws skipped (cond > 1e12)
};

Realization random_ep_hamiltonian(const EnsembleConfig& cfg, std::uint64_t index);

struct RealizationRecord {
  double xi_true = 0.0;
  double xi_num = 0.0;
  double delta = 0.0;  // |xi_num - xi_true| / xi_true
};

struct EnsembleReport {
  std::vector<RealizationRecord> records;  // successful realizations, in index order
  Histogram hist;                          // of the delta values
  double p50 = 0.0;
  double p99 = 0.0;
  double max = 0.0;
  std::uint64_t failed_count = 0;
  std::vector<std::uint64_t> failed_indices;
};

/// Runs the full generate-estimate loop. Reproducible from (cfg.master_seed)
/// alone: records are stored by realization index and the aggregation is
/// order-insensitive, so the worker count never changes the report.
/// Realizations where the estimator finds no candidate are counted and
/// listed, not silently dropped.
EnsembleReport run_experiment(const EnsembleConfig& cfg);

nlohmann::json to_json(const Histogram& h);
nlohmann::json to_json(const EnsembleReport& r);

/// Grayscale rendering of |H_ij|: shade 0 = white (zero entry), 1 = black
/// (largest magnitude).
struct GrayImage {
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  std::vector<double> shade;  // row-major, in [0, 1]

  double at(Eigen::Index i, Eigen::Index j) const {
    return shade[static_cast<std::size_t>(i * cols + j)];
  }
};

GrayImage matrix_heatmap(const CMatrix& h);

}  // namespace ep
