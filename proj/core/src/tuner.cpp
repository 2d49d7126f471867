#include "qnash/tuner.hpp"

#include <algorithm>
#include <cmath>

#include "qnash/errors.hpp"
#include "qnash/format.hpp"
#include "qnash/metrics.hpp"

namespace qnash {

void validate_schedule(const AlphaSchedule& schedule) {
  if (!(schedule.alpha_min >= 0.0 && schedule.alpha_min <= schedule.alpha_max &&
        schedule.alpha_max <= 1.0)) {
    throw domain_error("alpha schedule: need 0 <= alpha_min <= alpha_max <= 1");
  }
  if (!(schedule.alpha_0 >= 0.0 && schedule.alpha_0 <= 1.0)) {
    throw domain_error("alpha schedule: alpha_0 must lie in [0, 1]");
  }
  if (schedule.window < 0) throw domain_error("alpha schedule: window must be >= 0");
}

double nash_alpha(double n2) {
  if (!(n2 >= 0.0 && n2 <= 1.0)) {
    throw domain_error("nash_alpha: n2 must lie in [0, 1], got " + format_double(n2));
  }
  return std::sqrt(n2);
}

double constant_reward_alpha(double rt) {
  if (!(rt >= 0.0 && rt <= 1.0)) {
    throw domain_error("constant_reward_alpha: rt must lie in [0, 1], got " + format_double(rt));
  }
  return std::sqrt(rt);
}

std::vector<double> make_alpha_grid(int subdivisions) {
  if (subdivisions < 1) throw domain_error("make_alpha_grid: subdivisions must be >= 1");
  std::vector<double> grid(std::size_t(subdivisions) + 1);
  for (int i = 0; i <= subdivisions; ++i) grid[std::size_t(i)] = double(i) / double(subdivisions);
  return grid;
}

NashEstimate epsilon_nash_search(const std::function<double(double)>& n1_fn,
                                 const std::function<double(double)>& n2_fn,
                                 const std::vector<double>& grid) {
  if (grid.empty()) throw empty_grid_error("epsilon_nash_search: empty grid");
  for (double a : grid) {
    if (!(a >= 0.0 && a <= 1.0)) {
      throw domain_error("epsilon_nash_search: grid value outside [0, 1]: " + format_double(a));
    }
  }
  // gather every gap before reducing; the winner is then independent of
  // evaluation order, and equal gaps resolve to the smaller alpha
  std::vector<double> n1s(grid.size());
  std::vector<double> n2s(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    n1s[i] = n1_fn(grid[i]);
    n2s[i] = n2_fn(grid[i]);
  }
  std::ptrdiff_t best = -1;
  double best_gap = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double gap = std::fabs(n1s[i] - n2s[i]);
    if (std::isnan(gap)) continue;
    if (best < 0 || gap < best_gap ||
        (gap == best_gap && grid[i] < grid[std::size_t(best)])) {
      best = std::ptrdiff_t(i);
      best_gap = gap;
    }
  }
  if (best < 0) throw domain_error("epsilon_nash_search: no finite gap on the grid");
  std::size_t b = std::size_t(best);
  return NashEstimate{grid[b], best_gap, n1s[b], n2s[b]};
}

double adaptive_alpha(const AlphaSchedule& schedule,
                      const std::vector<std::vector<double>>& history) {
  validate_schedule(schedule);
  std::size_t begin = 0;
  if (schedule.window > 0 && history.size() > std::size_t(schedule.window)) {
    begin = history.size() - std::size_t(schedule.window);
  }
  double sum = 0.0;
  std::int64_t count = 0;
  for (std::size_t i = begin; i < history.size(); ++i) {
    const std::vector<double>& rewards = history[i];
    if (rewards.size() < 2) continue;
    RelativeRewardSeries series = relative_rewards(rewards);
    if (series.values.empty()) continue;
    double ep_sum = 0.0;
    for (double v : series.values) ep_sum += v;
    sum += ep_sum / double(series.values.size());
    ++count;
  }
  double alpha = count == 0 ? schedule.alpha_0 : std::sqrt(sum / double(count));
  return std::clamp(alpha, schedule.alpha_min, schedule.alpha_max);
}

}  // namespace qnash
