#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "builders.hpp"
#include "json.hpp"
#include "kernels.hpp"
#include "metrics.hpp"
#include "mp_law.hpp"
#include "samplers.hpp"

namespace ermat {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kReportSchemaVersion = 1;

struct ExperimentConfig {
  VectorFamily::Kind family = VectorFamily::Kind::Gaussian;
  nlohmann::ordered_json kernel_spec;
  double y = 1.0;                    // p = round(y * n)
  std::vector<std::size_t> n_list;   // strictly increasing
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  std::optional<double> epsilon;     // event threshold; default n^{-1/8}
  std::string out_dir;               // empty: no files written
  int threads = 0;                   // 0: hardware concurrency
  std::size_t hist_bins = 64;
};

ExperimentConfig experiment_config_from_json(const nlohmann::json& j);

struct InequalityRecord {
  std::string pair;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

struct TrialResult {
  std::size_t trial = 0;
  bool ok = false;
  std::string error;  // set when a solver/build failure was recorded

  EventEResult event;
  DistanceReport a_vs_law;
  DistanceReport a_vs_m;
  DistanceReport gram_vs_mp;
  bool chain_available = false;
  bool b_available = false;
  std::vector<std::pair<std::string, double>> chain_w2;
  std::vector<InequalityRecord> rank_checks;
  std::vector<InequalityRecord> hw_checks;
  double esd_mean_a = 0.0;
  double gram_esd_mean = 0.0;
  double gram_atom_mass = 0.0;

  std::vector<double> eigs_a;  // kept for CSV/pooling, not serialized
};

struct RunResult {
  std::size_t n = 0;
  std::size_t p = 0;
  double y_effective = 0.0;
  double epsilon = 0.0;
  std::vector<TrialResult> trials;
  std::vector<std::pair<std::string, double>> medians;
  std::vector<std::pair<std::string, double>> averaged;  // pooled-ESD distances
};

struct ExperimentReport {
  nlohmann::ordered_json config_echo;
  double law_shift = 0.0;
  double law_scale = 0.0;
  double law_y = 0.0;  // configured ratio
  std::vector<RunResult> runs;
  std::size_t violations = 0;      // inequality checks that failed
  std::size_t failed_trials = 0;   // trials with recorded errors

  nlohmann::ordered_json to_json() const;
};

// Distances and inequality checks for one data matrix against the
// prediction. Shared by the experiment sweep and by analyze_dataset, so a
// dataset written to CSV analyzes to the same numbers the sweep produced.
TrialResult evaluate_trial(const DataMatrix& x, const Kernel& kernel,
                           const LimitLaw& law, const LimitLaw& mp_law,
                           const SpectralDistribution& law_disc,
                           const SpectralDistribution& mp_disc, double epsilon);

ExperimentReport run_experiment(const ExperimentConfig& config);

// CSV rows are observations, columns are coordinates. With center == true
// every coordinate is centered and rescaled by 1/sqrt(p * variance);
// zero-variance coordinates are left alone and recorded as warnings.
ExperimentReport analyze_dataset(const std::string& csv_path,
                                 const nlohmann::json& kernel_spec, bool center,
                                 const std::string& out_dir);

// TSV rows (bin center, empirical density, predicted density). Bins span
// the ESD support united with the law support; empirical densities
// integrate to 1. Atoms contribute mass/binwidth to their bin's predicted
// column.
std::string histogram_tsv(const SpectralDistribution& esd, const LimitLaw& law,
                          std::size_t bins);

double default_event_epsilon(std::size_t n);  // n^{-1/8}

}  // namespace ermat
