#include "qnash/qlearn.hpp"

#include <cmath>

#include "qnash/errors.hpp"
#include "qnash/format.hpp"

namespace qnash {

QTable::QTable(int n_states, int n_actions)
    : n_states_(n_states),
      n_actions_(n_actions),
      values_(std::size_t(n_states) * std::size_t(n_actions), 0.0) {
  if (n_states < 1 || n_actions < 1) {
    throw domain_error("QTable: need at least one state and one action");
  }
}

std::size_t QTable::index(int state, int action) const {
  if (state < 0 || state >= n_states_ || action < 0 || action >= n_actions_) {
    throw out_of_range_error("QTable: (" + format_int(state) + ", " + format_int(action) +
                             ") out of range");
  }
  return std::size_t(state) * n_actions_ + action;
}

double QTable::max_over_actions(int state) const {
  double best = at(state, 0);
  for (int a = 1; a < n_actions_; ++a) best = std::max(best, at(state, a));
  return best;
}

int QTable::argmax_action(int state) const {
  int best = 0;
  double best_v = at(state, 0);
  for (int a = 1; a < n_actions_; ++a) {
    if (at(state, a) > best_v) {
      best = a;
      best_v = at(state, a);
    }
  }
  return best;
}

double q_update(double q_sa, double reward, double max_next_q, double alpha, double gamma) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw domain_error("q_update: alpha must lie in [0, 1], got " + format_double(alpha));
  }
  if (!(gamma >= 0.0 && gamma < 1.0)) {
    throw domain_error("q_update: gamma must lie in [0, 1), got " + format_double(gamma));
  }
  return (1.0 - alpha) * q_sa + alpha * (reward + gamma * max_next_q);
}

EpisodeTrace run_episode(const EnvSpec& spec, QTable& q, double alpha, double gamma,
                         double explore_rate, RngStream& rng) {
  EpisodeTrace trace;
  int state = env_reset(spec);
  for (int step = 0; step < spec.max_steps; ++step) {
    int action = 0;
    // the exploration draw happens unconditionally to keep streams aligned
    double u = rng.next_unit();
    if (u < explore_rate) {
      action = int(rng.next_int(0, spec.n_actions() - 1));
    } else {
      action = q.argmax_action(state);
    }
    StepOutcome out = env_step(spec, state, action);

    StepRecord rec;
    rec.state = state;
    rec.action = action;
    rec.reward = out.reward;
    rec.next_state = out.next_state;
    rec.q_before = q.at(state, action);
    rec.max_next_q = q.max_over_actions(out.next_state);
    rec.q_after = q_update(rec.q_before, out.reward, rec.max_next_q, alpha, gamma);
    q.at(state, action) = rec.q_after;
    trace.push_back(rec);

    state = out.next_state;
    if (out.done) break;
  }
  return trace;
}

RunTrace run_training(const EnvSpec& spec, int episodes, const AlphaSource& alpha_source,
                      double gamma, double explore_rate, std::uint64_t seed) {
  validate_spec(spec);
  if (episodes < 1) throw domain_error("run_training: episodes must be >= 1");
  if (!(gamma >= 0.0 && gamma < 1.0)) {
    throw domain_error("run_training: gamma must lie in [0, 1), got " + format_double(gamma));
  }
  if (!(explore_rate >= 0.0 && explore_rate <= 1.0)) {
    throw domain_error("run_training: explore_rate must lie in [0, 1], got " +
                       format_double(explore_rate));
  }
  if (const double* fixed = std::get_if<double>(&alpha_source)) {
    if (!(*fixed >= 0.0 && *fixed <= 1.0)) {
      throw domain_error("run_training: alpha must lie in [0, 1], got " + format_double(*fixed));
    }
  } else {
    validate_schedule(std::get<AlphaSchedule>(alpha_source));
  }

  QTable q(spec.n_states(), spec.n_actions());
  RngStream rng = derive_stream(seed, 0);
  RunTrace run;
  run.gamma = gamma;
  std::vector<std::vector<double>> history;
  for (int ep = 0; ep < episodes; ++ep) {
    double alpha = 0.0;
    if (const double* fixed = std::get_if<double>(&alpha_source)) {
      alpha = *fixed;
    } else {
      alpha = adaptive_alpha(std::get<AlphaSchedule>(alpha_source), history);
    }
    EpisodeTrace trace = run_episode(spec, q, alpha, gamma, explore_rate, rng);
    std::vector<double> rewards;
    rewards.reserve(trace.size());
    for (const StepRecord& rec : trace) rewards.push_back(rec.reward);
    history.push_back(std::move(rewards));
    run.alpha_used.push_back(alpha);
    run.episodes.push_back(std::move(trace));
  }
  return run;
}

std::vector<std::vector<double>> episode_rewards(const RunTrace& run) {
  std::vector<std::vector<double>> out;
  out.reserve(run.episodes.size());
  for (const EpisodeTrace& ep : run.episodes) {
    std::vector<double> rewards;
    rewards.reserve(ep.size());
    for (const StepRecord& rec : ep) rewards.push_back(rec.reward);
    out.push_back(std::move(rewards));
  }
  return out;
}

}  // namespace qnash
