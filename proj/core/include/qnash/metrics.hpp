#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qnash/qlearn.hpp"

namespace qnash {

// Steps whose update target equals the prior estimate carry no rate
// information; below this absolute denominator the implied rate is skipped.
inline constexpr double kImpliedDenomFloor = 1e-9;
// Relative rewards divide by the current reward; at or below this it is
// treated as zero and the transition is skipped.
inline constexpr double kRewardFloor = 1e-12;

struct RelativeRewardSeries {
  std::vector<double> values;  // one per kept transition, each in [0, 1]
  std::int64_t skipped_count = 0;
  std::int64_t clamped_count = 0;
};

struct MetricReport {
  double n1 = 0.0;
  double n2 = 0.0;
  std::vector<double> implied_alphas;  // non-skipped, flattened in step order
  std::int64_t skipped_steps = 0;
  std::int64_t clamped_rewards = 0;
};

// (q_after - q_before) / (reward + gamma * max_next_q - q_before), or nullopt
// when the denominator is under the floor
std::optional<double> implied_alpha(const StepRecord& step, double gamma);

// Mean over episodes of the mean squared implied alpha over that episode's
// non-skipped steps. Episodes with no valid step drop out of the outer mean;
// all-skipped runs throw no_valid_steps_error.
double n1_metric(const RunTrace& run, double gamma);

// (r_t - r_{t-1}) / r_t for t >= 2, negatives clamped to 0, transitions with
// r_t at or below the floor skipped and counted
RelativeRewardSeries relative_rewards(const std::vector<double>& raw_rewards);

// Mean over episodes of each episode's mean relative reward. An episode with
// every transition skipped throws no_valid_steps_error.
double n2_metric(const std::vector<std::vector<double>>& episode_reward_seqs);

// Full report for a finished run, using the run's own gamma.
MetricReport compute_metrics(const RunTrace& run);

}  // namespace qnash
