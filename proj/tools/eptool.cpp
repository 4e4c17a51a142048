// Copyright (c) 2026 eptool contributors.
// SPDX-License-Identifier: Apache-2.0
//
// eptool: analyses of non-Hermitian matrices near exceptional points.
// Subcommands: exact, modes, hatano, estimate, randexp, matshow, eigs.
// Exit codes: 0 ok, 2 invalid input / not an EP, 3 numerical failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ep/ensemble.hpp"
#include "ep/errors.hpp"
#include "ep/hatano.hpp"
#include "ep/matrix_io.hpp"
#include "ep/modes.hpp"
#include "ep/response.hpp"
#include "ep/svg.hpp"

#ifndef EPTOOL_VERSION
#define EPTOOL_VERSION "0.0.0"
#endif

namespace {

using nlohmann::json;

struct GlobalOpts {
  std::string out;     // empty = stdout
  std::string format;  // subcommand-dependent default
  std::uint64_t seed = 0;
  bool seed_given = false;
};

ep::Complex parse_complex(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    throw ep::InvalidInput("complex values are written RE,IM (got '" + text + "')");
  }
  try {
    std::size_t used = 0;
    const double re = std::stod(text.substr(0, comma), &used);
    if (used != comma) throw std::invalid_argument(text);
    const std::string imag_part = text.substr(comma + 1);
    const double im = std::stod(imag_part, &used);
    if (used != imag_part.size()) throw std::invalid_argument(text);
    return {re, im};
  } catch (const std::exception&) {
    throw ep::InvalidInput("cannot parse complex value '" + text + "'");
  }
}

json manifest(const std::string& subcommand, json config,
              const std::vector<std::string>& input_files,
              std::optional<std::uint64_t> seed = {}) {
  json m = {{"tool", "eptool"},
            {"version", EPTOOL_VERSION},
            {"subcommand", subcommand},
            {"config", std::move(config)}};
  if (seed) m["seed"] = *seed;
  json inputs = json::array();
  for (const auto& path : input_files) {
    inputs.push_back({{"path", path}, {"fnv1a64", ep::file_digest(path)}});
  }
  m["inputs"] = std::move(inputs);
  return m;
}

void write_output(const std::string& out, const std::string& content) {
  if (out.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream file(out);
  if (!file) throw ep::InvalidInput("cannot open output file: " + out);
  file << content;
}

void write_json(const std::string& out, const json& j) { write_output(out, j.dump(2) + "\n"); }

// CSV outputs carry their manifest as a leading comment line.
void write_csv(const std::string& out, const json& man, const std::string& body) {
  write_output(out, "# manifest: " + man.dump() + "\n" + body);
}

int run_exact(const std::string& matrix_path, const std::string& eep, int order,
              const std::vector<double>& detunings, std::optional<double> eps,
              std::optional<double> norm_h1, std::optional<double> bound_de,
              const GlobalOpts& global) {
  ep::EPSpec spec{ep::read_matrix_file(matrix_path), parse_complex(eep), order};
  ep::ResponseReport report = ep::analyze_ep(spec, detunings, eps, norm_h1, bound_de);
  json j = ep::to_json(report);
  json config = {{"matrix", matrix_path}, {"eep", eep}, {"order", order}};
  if (eps) config["eps"] = *eps;
  if (norm_h1) config["normh1"] = *norm_h1;
  if (bound_de) config["bound_de"] = *bound_de;
  if (!detunings.empty()) config["de"] = detunings;
  j["manifest"] = manifest("exact", config, {matrix_path});
  write_json(global.out, j);
  return 0;
}

int run_modes(const std::string& matrix_path, const GlobalOpts& global) {
  const auto modes = ep::analyze_modes(ep::read_matrix_file(matrix_path));
  const json man = manifest("modes", {{"matrix", matrix_path}}, {matrix_path});
  write_csv(global.out, man, ep::modes_to_csv(modes));
  return 0;
}

int run_hatano(int n, const std::string& e0, const std::string& a, double eps_min, double eps_max,
               int points, const GlobalOpts& global) {
  ep::HatanoParams params;
  params.n = n;
  params.e0 = parse_complex(e0);
  params.a = parse_complex(a);
  if (points < 2 || eps_min <= 0.0 || eps_max <= eps_min) {
    throw ep::InvalidInput("hatano: need points >= 2 and 0 < eps-min < eps-max");
  }
  for (int i = 0; i < points; ++i) {
    params.eps_grid.push_back(std::pow(
        10.0, std::log10(eps_min) + (std::log10(eps_max) - std::log10(eps_min)) * i / (points - 1)));
  }
  const auto rows = ep::figure1_sweep(params);
  const json man = manifest("hatano",
                            {{"n", n},
                             {"e0", e0},
                             {"a", a},
                             {"eps_min", eps_min},
                             {"eps_max", eps_max},
                             {"points", points}},
                            {});
  if (global.format == "svg") {
    ep::svg::Series r_exact{"r exact", {}, {}}, r_pred{"r leading order", {}, {}};
    ep::svg::Series k_exact{"K exact", {}, {}}, k_pred{"K leading order", {}, {}};
    for (const auto& row : rows) {
      r_exact.x.push_back(row.eps);
      r_exact.y.push_back(row.r_exact);
      r_pred.x.push_back(row.eps);
      r_pred.y.push_back(row.r_pred);
      k_exact.x.push_back(row.eps);
      k_exact.y.push_back(row.k_exact);
      k_pred.x.push_back(row.eps);
      k_pred.y.push_back(row.k_pred);
    }
    write_output(global.out, ep::svg::loglog_chart({r_exact, r_pred, k_exact, k_pred}, "eps",
                                                   "r, K", "manifest: " + man.dump()));
  } else {
    write_csv(global.out, man, ep::sweep_to_csv(rows));
  }
  return 0;
}

int run_estimate(const std::string& matrix_path, const std::string& eep, int order, double tau,
                 double kick, bool average_ring, const GlobalOpts& global) {
  ep::EstimateConfig cfg;
  cfg.e_ep = parse_complex(eep);
  cfg.n = order;
  cfg.tau = tau;
  cfg.degenerate_kick = kick;
  cfg.average_ring_detuning = average_ring;
  if (global.seed_given) cfg.kick_seed = global.seed;
  const ep::EstimateReport report = ep::estimate_xi(ep::read_matrix_file(matrix_path), cfg);
  json j = ep::to_json(report);
  j["manifest"] = manifest("estimate",
                           {{"matrix", matrix_path},
                            {"eep", eep},
                            {"order", order},
                            {"tau", tau},
                            {"kick", kick},
                            {"average_ring", average_ring}},
                           {matrix_path}, cfg.kick_seed);
  write_json(global.out, j);
  return 0;
}

int run_randexp(int m, int n, const std::string& eep, int count, double tau, int bins,
                double bin_lo, double bin_hi, int workers, const std::string& hist_csv,
                const std::string& hist_svg, const std::string& dump_matrix,
                const std::string& dump_block, const GlobalOpts& global) {
  ep::EnsembleConfig cfg;
  cfg.m = m;
  cfg.n = n;
  cfg.e_ep = parse_complex(eep);
  cfg.realizations = count;
  cfg.master_seed = global.seed_given ? global.seed : 1;
  cfg.tau = tau;
  cfg.hist = ep::HistogramSpec{bins, bin_lo, bin_hi};
  cfg.workers = workers;
  ep::validate(cfg);

  if (!dump_matrix.empty() || !dump_block.empty()) {
    const ep::Realization real = ep::random_ep_hamiltonian(cfg, 0);
    if (!dump_matrix.empty()) ep::write_matrix_file(dump_matrix, real.h);
    if (!dump_block.empty()) ep::write_matrix_file(dump_block, real.h_block);
  }

  const ep::EnsembleReport report = ep::run_experiment(cfg);
  // The worker count is an execution resource: it never appears in the
  // output, so reruns with different parallelism stay byte-identical.
  const json man = manifest("randexp",
                            {{"m", m},
                             {"n", n},
                             {"eep", eep},
                             {"count", count},
                             {"tau", tau},
                             {"bins", bins},
                             {"bin_lo", bin_lo},
                             {"bin_hi", bin_hi}},
                            {}, cfg.master_seed);
  json j = ep::to_json(report);
  j["manifest"] = man;
  write_json(global.out, j);
  if (!hist_csv.empty()) write_csv(hist_csv, man, ep::histogram_to_csv(report.hist));
  if (!hist_svg.empty()) {
    write_output(hist_svg, ep::svg::histogram(report.hist, "manifest: " + man.dump()));
  }
  return 0;
}

int run_matshow(const std::string& matrix_path, int cell_px, const GlobalOpts& global) {
  const ep::GrayImage img = ep::matrix_heatmap(ep::read_matrix_file(matrix_path));
  const json man = manifest("matshow", {{"matrix", matrix_path}, {"cell_px", cell_px}},
                            {matrix_path});
  write_output(global.out, ep::svg::heatmap(img, cell_px, "manifest: " + man.dump()));
  return 0;
}

int run_eigs(const std::string& matrix_path, const GlobalOpts& global) {
  const ep::EigenSystem sys = ep::eig_full(ep::read_matrix_file(matrix_path));
  std::string body = "re,im\n";
  for (const ep::Complex& e : sys.values) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", std::real(e), std::imag(e));
    body += buf;
  }
  const json man = manifest("eigs", {{"matrix", matrix_path}}, {matrix_path});
  write_csv(global.out, man, body);
  return 0;
}

void print_error(const std::string& code, const std::string& message, const json& extra = {}) {
  json err = {{"error", code}, {"message", message}};
  for (auto it = extra.begin(); it != extra.end(); ++it) err[it.key()] = it.value();
  std::cerr << err.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral analyses of non-Hermitian matrices near exceptional points"};
  app.set_version_flag("--version", EPTOOL_VERSION);
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts global;
  app.add_option("--out", global.out, "Output file (default: stdout)");
  app.add_option("--format", global.format, "Output format where applicable: json, csv, svg")
      ->check(CLI::IsMember({"json", "csv", "svg"}));
  auto* seed_opt = app.add_option("--seed", global.seed, "Seed for randomized operations");

  // exact
  std::string matrix_path, eep_text;
  int order = 2;
  std::vector<double> detunings;
  double opt_eps = 0.0, opt_normh1 = 0.0, opt_bound_de = 0.0;
  auto* exact = app.add_subcommand("exact", "Response strength and bounds of an EP matrix");
  exact->add_option("--matrix", matrix_path, "Matrix JSON file")->required();
  exact->add_option("--eep", eep_text, "EP eigenvalue RE,IM")->required();
  exact->add_option("--order", order, "EP order n")->required();
  exact->add_option("--de", detunings, "Detunings for the prediction table");
  auto* eps_opt = exact->add_option("--eps", opt_eps, "Perturbation strength for the bounds");
  auto* nh1_opt = exact->add_option("--normh1", opt_normh1, "Spectral norm of the perturbation");
  auto* bde_opt = exact->add_option("--bound-de", opt_bound_de, "Detuning for the passive bound");

  // modes
  auto* modes = app.add_subcommand("modes", "Biorthogonal mode table (CSV)");
  modes->add_option("--matrix", matrix_path, "Matrix JSON file")->required();

  // hatano
  int hat_n = 3, hat_points = 40;
  std::string hat_e0 = "0,0", hat_a = "1,0";
  double hat_eps_min = 1e-10, hat_eps_max = 1e-1;
  auto* hatano = app.add_subcommand("hatano", "Asymmetric-chain sweep: exact vs leading order");
  hatano->add_option("--n", hat_n, "Chain length / EP order");
  hatano->add_option("--e0", hat_e0, "On-site energy RE,IM");
  hatano->add_option("--a", hat_a, "Hopping RE,IM");
  hatano->add_option("--eps-min", hat_eps_min, "Smallest perturbation strength");
  hatano->add_option("--eps-max", hat_eps_max, "Largest perturbation strength");
  hatano->add_option("--points", hat_points, "Grid points (log-spaced)");

  // estimate
  double est_tau = 0.1, est_kick = 1e-12;
  bool est_average = false;
  auto* estimate = app.add_subcommand("estimate", "Estimate xi of an embedded EP");
  estimate->add_option("--matrix", matrix_path, "Matrix JSON file")->required();
  estimate->add_option("--eep", eep_text, "EP eigenvalue RE,IM")->required();
  estimate->add_option("--order", order, "EP order n")->required();
  estimate->add_option("--tau", est_tau, "Rigidity threshold for candidate modes");
  estimate->add_option("--kick", est_kick, "Relative fallback perturbation size");
  estimate->add_flag("--average-ring", est_average, "Average the detuning over all candidates");

  // randexp
  int re_m = 20, re_n = 3, re_count = 10000, re_bins = 60, re_workers = 0;
  double re_tau = 0.1, re_bin_lo = 1e-12, re_bin_hi = 1.0;
  std::string re_eep = "0,-0.05", re_hist_csv, re_hist_svg, re_dump_matrix, re_dump_block;
  auto* randexp = app.add_subcommand("randexp", "Random-matrix validation of the estimator");
  randexp->add_option("--m", re_m, "Embedding dimension");
  randexp->add_option("--n", re_n, "EP order");
  randexp->add_option("--eep", re_eep, "EP eigenvalue RE,IM");
  randexp->add_option("--count", re_count, "Number of realizations");
  randexp->add_option("--tau", re_tau, "Rigidity threshold");
  randexp->add_option("--bins", re_bins, "Histogram bins");
  randexp->add_option("--bin-lo", re_bin_lo, "Lowest histogram edge");
  randexp->add_option("--bin-hi", re_bin_hi, "Highest histogram edge");
  randexp->add_option("--workers", re_workers, "Worker threads (0 = automatic)");
  randexp->add_option("--hist-csv", re_hist_csv, "Also write the histogram as CSV here");
  randexp->add_option("--hist-svg", re_hist_svg, "Also write the histogram as SVG here");
  randexp->add_option("--dump-matrix", re_dump_matrix, "Write realization 0 as matrix JSON");
  randexp->add_option("--dump-block", re_dump_block, "Write its pre-conjugation block matrix");

  // matshow
  int cell_px = 16;
  auto* matshow = app.add_subcommand("matshow", "Grayscale magnitude plot of a matrix (SVG)");
  matshow->add_option("--matrix", matrix_path, "Matrix JSON file")->required();
  matshow->add_option("--cell-px", cell_px, "Cell size in pixels");

  // eigs
  auto* eigs = app.add_subcommand("eigs", "Eigenvalue scatter data (CSV)");
  eigs->add_option("--matrix", matrix_path, "Matrix JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("invalid_input", e.what());
    return 2;
  }
  global.seed_given = seed_opt->count() > 0;

  try {
    if (exact->parsed()) {
      return run_exact(matrix_path, eep_text, order, detunings,
                       eps_opt->count() ? std::optional<double>(opt_eps) : std::nullopt,
                       nh1_opt->count() ? std::optional<double>(opt_normh1) : std::nullopt,
                       bde_opt->count() ? std::optional<double>(opt_bound_de) : std::nullopt,
                       global);
    }
    if (modes->parsed()) return run_modes(matrix_path, global);
    if (hatano->parsed()) {
      return run_hatano(hat_n, hat_e0, hat_a, hat_eps_min, hat_eps_max, hat_points, global);
    }
    if (estimate->parsed()) {
      return run_estimate(matrix_path, eep_text, order, est_tau, est_kick, est_average, global);
    }
    if (randexp->parsed()) {
      return run_randexp(re_m, re_n, re_eep, re_count, re_tau, re_bins, re_bin_lo, re_bin_hi,
                         re_workers, re_hist_csv, re_hist_svg, re_dump_matrix, re_dump_block,
                         global);
    }
    if (matshow->parsed()) return run_matshow(matrix_path, cell_px, global);
    if (eigs->parsed()) return run_eigs(matrix_path, global);
    print_error("invalid_input", "no subcommand given");
    return 2;
  } catch (const ep::NotAnEP& e) {
    print_error(e.code(), e.what(), {{"norm_sequence", e.norm_sequence()}});
    return 2;
  } catch (const ep::InvalidInput& e) {
    print_error(e.code(), e.what());
    return 2;
  } catch (const ep::Error& e) {
    print_error(e.code(), e.what());
    return 3;
  } catch (const std::exception& e) {
    print_error("internal_error", e.what());
    return 3;
  }
}
