#include "qnash/metrics.hpp"

#include <cmath>

#include "qnash/errors.hpp"
#include "qnash/format.hpp"

namespace qnash {

std::optional<double> implied_alpha(const StepRecord& step, double gamma) {
  if (!(gamma >= 0.0 && gamma < 1.0)) {
    throw domain_error("implied_alpha: gamma must lie in [0, 1), got " + format_double(gamma));
  }
  double denom = step.reward + gamma * step.max_next_q - step.q_before;
  if (std::fabs(denom) < kImpliedDenomFloor) return std::nullopt;
  return (step.q_after - step.q_before) / denom;
}

double n1_metric(const RunTrace& run, double gamma) {
  double episode_sum = 0.0;
  std::int64_t episode_count = 0;
  for (const EpisodeTrace& ep : run.episodes) {
    double sum_sq = 0.0;
    std::int64_t n = 0;
    for (const StepRecord& step : ep) {
      if (auto a = implied_alpha(step, gamma)) {
        sum_sq += *a * *a;
        ++n;
      }
    }
    if (n > 0) {
      episode_sum += sum_sq / double(n);
      ++episode_count;
    }
  }
  if (episode_count == 0) {
    throw no_valid_steps_error("n1_metric: every step was skipped");
  }
  return episode_sum / double(episode_count);
}

RelativeRewardSeries relative_rewards(const std::vector<double>& raw_rewards) {
  if (raw_rewards.size() < 2) {
    throw too_short_error("relative_rewards: need at least 2 rewards, got " +
                          format_int(std::int64_t(raw_rewards.size())));
  }
  RelativeRewardSeries out;
  out.values.reserve(raw_rewards.size() - 1);
  for (std::size_t t = 1; t < raw_rewards.size(); ++t) {
    double rt = raw_rewards[t];
    if (rt <= kRewardFloor) {
      ++out.skipped_count;
      continue;
    }
    double v = (rt - raw_rewards[t - 1]) / rt;
    if (v < 0.0) {
      v = 0.0;
      ++out.clamped_count;
    } else if (v > 1.0) {
      // only reachable with a negative previous reward; kept in range anyway
      v = 1.0;
      ++out.clamped_count;
    }
    out.values.push_back(v);
  }
  return out;
}

double n2_metric(const std::vector<std::vector<double>>& episode_reward_seqs) {
  if (episode_reward_seqs.empty()) throw empty_input_error("n2_metric: no episodes");
  double sum = 0.0;
  for (const std::vector<double>& rewards : episode_reward_seqs) {
    RelativeRewardSeries series = relative_rewards(rewards);
    if (series.values.empty()) {
      throw no_valid_steps_error("n2_metric: an episode had every transition skipped");
    }
    double ep_sum = 0.0;
    for (double v : series.values) ep_sum += v;
    sum += ep_sum / double(series.values.size());
  }
  return sum / double(episode_reward_seqs.size());
}

MetricReport compute_metrics(const RunTrace& run) {
  MetricReport report;

  double episode_sum = 0.0;
  std::int64_t episode_count = 0;
  for (const EpisodeTrace& ep : run.episodes) {
    double sum_sq = 0.0;
    std::int64_t n = 0;
    for (const StepRecord& step : ep) {
      if (auto a = implied_alpha(step, run.gamma)) {
        report.implied_alphas.push_back(*a);
        sum_sq += *a * *a;
        ++n;
      } else {
        ++report.skipped_steps;
      }
    }
    if (n > 0) {
      episode_sum += sum_sq / double(n);
      ++episode_count;
    }
  }
  if (episode_count == 0) {
    throw no_valid_steps_error("compute_metrics: every step was skipped");
  }
  report.n1 = episode_sum / double(episode_count);

  double n2_sum = 0.0;
  std::int64_t n2_count = 0;
  for (const EpisodeTrace& ep : run.episodes) {
    std::vector<double> rewards;
    rewards.reserve(ep.size());
    for (const StepRecord& step : ep) rewards.push_back(step.reward);
    RelativeRewardSeries series = relative_rewards(rewards);
    report.clamped_rewards += series.clamped_count;
    if (series.values.empty()) {
      throw no_valid_steps_error("compute_metrics: an episode had every transition skipped");
    }
    double ep_sum = 0.0;
    for (double v : series.values) ep_sum += v;
    n2_sum += ep_sum / double(series.values.size());
    ++n2_count;
  }
  report.n2 = n2_sum / double(n2_count);
  return report;
}

}  // namespace qnash
