#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qnash/env.hpp"

namespace qnash {

enum class RewardModelKind { uniform01, constant, from_env };

// Where a cell's relative reward draws come from. uniform01 and constant are
// the synthetic models; from_env replays actual training episodes and is
// labeled as an extension in every report it touches.
struct RewardModel {
  RewardModelKind kind = RewardModelKind::uniform01;
  double constant_value = 0.0;
  EnvSpec env;
  double collect_alpha = 0.5;  // learning rate while collecting from_env episodes
  double collect_gamma = 0.9;
  double collect_explore = 0.1;

  static RewardModel uniform01();
  static RewardModel constant(double c);
  static RewardModel from_env(EnvSpec spec);
};

struct SweepConfig {
  std::int64_t n_min = 1;
  std::int64_t n_max = 1000000;
  int n_samples = 40;
  int t_max = 5;  // episode lengths drawn uniformly from [1, t_max]
  RewardModel reward_model;
  std::uint64_t seed = 0;
  int threads = 0;  // 0 = hardware count; results are scheduling-independent
};

struct SweepCell {
  std::int64_t n = 0;
  int t_i = 0;  // representative episode length: lower median of drawn lengths
  double alpha = 0.0;
  double mean_rt = 0.0;
};

struct SweepSummary {
  SweepCell max;
  SweepCell min;
  SweepCell median;  // lower middle; all ties go to smaller n, then smaller t_i
};

struct ConvergenceReport {
  double small_spread = 0.0;  // max - min of mean_rt over the small-N cells
  double large_spread = 0.0;
  bool spread_shrinks = false;
  double large_alpha = 0.0;  // median cell alpha of the large-N range
  double band_center = 0.0;  // sqrt(1/2)
  double band_halfwidth = 0.0;
  bool alpha_within_band = false;
};

// log-spaced integer episode counts, rounded and deduplicated, ascending
std::vector<std::int64_t> log_spaced_counts(std::int64_t n_min, std::int64_t n_max,
                                            int n_samples);

// One cell per retained N: N episodes, each with its own drawn length, each
// step drawing one relative reward from the model; mean_rt is the mean of
// per-episode means and alpha = sqrt(mean_rt). Cell i uses the stream derived
// from (seed, i), so the output is identical however cells are scheduled.
std::vector<SweepCell> generate_sweep(const SweepConfig& config);

SweepSummary summarize(const std::vector<SweepCell>& cells);

ConvergenceReport convergence_report(const std::vector<SweepCell>& small_cells,
                                     const std::vector<SweepCell>& large_cells,
                                     double band_halfwidth);

// header n,t_i,alpha,mean_rt; 12 significant digits; byte-deterministic
void export_csv(const std::vector<SweepCell>& cells, const std::string& path);
std::vector<SweepCell> import_csv(const std::string& path);

// two-column (x y) plot data: alpha vs N and mean_rt vs N
void export_plot_data(const std::vector<SweepCell>& cells, const std::string& alpha_path,
                      const std::string& mean_rt_path);

}  // namespace qnash
