#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hyperbh/belief_propagation.hpp"
#include "hyperbh/detectability.hpp"
#include "hyperbh/metrics.hpp"
#include "hyperbh/spectral.hpp"

namespace hyperbh {

// Runs job(i) for i in [0, count) on `threads` workers. Jobs write to their
// own slots, so results do not depend on the thread count.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& job);

// Seed of repetition `rep` at grid point `point`.
std::uint64_t job_seed(std::uint64_t base, std::size_t point, std::size_t rep);

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;  // standard error of the mean
  int count = 0;    // successful runs
};
MeanSe summarize(const std::vector<double>& values);

// ---- eps sweep --------------------------------------------------------------

struct EpsSweepConfig {
  std::size_t n = 3000;
  int q = 2;
  std::vector<int> orders{3};
  double d = 10.0;
  std::vector<double> grid;
  int reps = 20;
  std::uint64_t seed = 1;
  bool run_bh = true;
  bool run_bp = false;
  // Spectral clustering uses the negative-eigenvalue count unless this is set.
  bool bh_fixed_q = false;
  SpectralOptions spectral;
  BpConfig bp;
  int threads = 1;
};

struct EpsSweepRow {
  double eps = 0.0;
  MeanSe bh;
  MeanSe bp;
  double mean_q_hat = 0.0;
  int bh_failures = 0;  // runs that raised an error other than "no structure"
};

struct EpsSweepResult {
  std::vector<EpsSweepRow> rows;
  SnrReport snr;  // at eps = 0, carries both critical roots
  std::optional<double> transition_bh;
  std::optional<double> transition_bp;
};

EpsSweepResult run_eps_sweep(const EpsSweepConfig& cfg);

// Smallest grid value x_i with mean < threshold at x_i and at every larger
// grid value. Rows must be sorted by x.
std::optional<double> transition_point(const std::vector<double>& x, const std::vector<double>& mean,
                                       double threshold = 0.02);

// ---- shape / order sweeps ---------------------------------------------------

struct SwitchSweepConfig {
  SwitchExperiment experiment;
  std::size_t n = 2000;
  double d = 10.0;
  std::vector<double> grid;
  int reps = 10;
  std::uint64_t seed = 1;
  SpectralOptions spectral;  // fixed_q is forced to 2
  int threads = 1;
};

struct SwitchSweepRow {
  double rho = 0.0;
  MeanSe ami_01_23;
  MeanSe ami_02_13;
  int failures = 0;
};

struct SwitchSweepResult {
  std::vector<SwitchSweepRow> rows;
  double rho_raw = 0.0;
  double rho_adjusted = 0.0;
  std::optional<double> crossing;  // where mean AMI_01;23 - AMI_02;13 first changes sign
};

SwitchSweepResult run_switch_sweep(const SwitchSweepConfig& cfg);

// Linear interpolation at the first sign change of diff; nullopt if none.
std::optional<double> first_crossing(const std::vector<double>& x, const std::vector<double>& diff);

// Fine four-community labels mapped onto a two-group split.
Partition coarsen(const Partition& fine, const std::vector<int>& split);

// ---- spectrum ---------------------------------------------------------------

struct SpectrumConfig {
  SymmetricHsbmSpec model;
  std::vector<double> eta_grid;  // extra eta values for negative-eigenvalue counts
  bool with_nb = true;
};

struct SpectrumResult {
  double bulk_radius = 0.0;
  std::vector<std::complex<double>> nb_eigenvalues;
  std::vector<double> nb_real_outside;  // |lambda| > bulk radius
  int nb_real_above = 0;                 // lambda > bulk radius; pairs with bh_negative
  std::vector<double> bh_eigenvalues;  // at eta = bulk radius, all of them
  int bh_negative = 0;
  std::vector<std::pair<double, int>> negative_by_eta;
};

SpectrumResult run_spectrum(const SpectrumConfig& cfg);

// ---- empirical --------------------------------------------------------------

struct EmpiricalConfig {
  std::filesystem::path edges;
  std::optional<std::filesystem::path> labels;
  bool merge_duplicates = false;
  SpectralOptions spectral;
};

struct EmpiricalResult {
  std::vector<std::string> tokens;
  SpectralResult spectral;
  std::optional<Partition> truth;
  std::vector<std::string> truth_names;
  std::optional<double> ami_vs_truth;
  std::optional<Eigen::MatrixXd> confusion;  // rows: truth classes, row-normalised
  CompositionHistogram detected_composition;
  std::optional<CompositionHistogram> truth_composition;
  std::size_t dropped_lines = 0;
};

EmpiricalResult run_empirical(const EmpiricalConfig& cfg);

// ---- serialisation ----------------------------------------------------------

void write_eps_sweep_csv(const std::filesystem::path& path, const EpsSweepResult& r);
void write_switch_sweep_csv(const std::filesystem::path& path, const SwitchSweepResult& r);
void write_confusion_csv(const std::filesystem::path& path, const Eigen::MatrixXd& m,
                         const std::vector<std::string>& row_names = {});
void write_composition_csv(const std::filesystem::path& path, const CompositionHistogram& h);
void write_marginals_csv(const std::filesystem::path& path, const std::vector<double>& marginals, std::size_t n, int q);

nlohmann::json to_json(const SnrReport& r);
nlohmann::json to_json(const EpsSweepResult& r);
nlohmann::json to_json(const SwitchSweepResult& r);
nlohmann::json to_json(const SpectrumResult& r);
nlohmann::json to_json(const SpectralResult& r);

// Config parsing. Unknown keys are rejected so typos fail loudly.
SymmetricHsbmSpec symmetric_spec_from_json(const nlohmann::json& j);
SpectralOptions spectral_options_from_json(const nlohmann::json& j);
BpConfig bp_config_from_json(const nlohmann::json& j);
EpsSweepConfig eps_sweep_from_json(const nlohmann::json& j);
SwitchSweepConfig switch_sweep_from_json(const nlohmann::json& j, SwitchExperiment::Kind default_kind);
SpectrumConfig spectrum_from_json(const nlohmann::json& j);

}  // namespace hyperbh
