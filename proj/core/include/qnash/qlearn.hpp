#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "qnash/env.hpp"
#include "qnash/rng.hpp"
#include "qnash/tuner.hpp"

namespace qnash {

// Dense (state, action) value table, zero-initialized.
class QTable {
 public:
  QTable(int n_states, int n_actions);

  double at(int state, int action) const { return values_[index(state, action)]; }
  double& at(int state, int action) { return values_[index(state, action)]; }
  int n_states() const { return n_states_; }
  int n_actions() const { return n_actions_; }

  double max_over_actions(int state) const;
  int argmax_action(int state) const;  // lowest action index wins ties

 private:
  std::size_t index(int state, int action) const;

  int n_states_ = 0;
  int n_actions_ = 0;
  std::vector<double> values_;
};

struct StepRecord {
  int state = 0;
  int action = 0;
  double reward = 0.0;
  int next_state = 0;
  double q_before = 0.0;
  double q_after = 0.0;
  double max_next_q = 0.0;  // max over next_state's actions, read before the update
};

// Step order chains: next_state of step t equals state of step t+1.
using EpisodeTrace = std::vector<StepRecord>;

struct RunTrace {
  std::vector<EpisodeTrace> episodes;
  double gamma = 0.9;
  std::vector<double> alpha_used;  // one entry per episode
};

// fixed rate or adaptive schedule
using AlphaSource = std::variant<double, AlphaSchedule>;

// (1 - alpha) * q_sa + alpha * (reward + gamma * max_next_q); alpha in [0, 1],
// gamma in [0, 1). alpha = 0 returns q_sa bit-identically.
double q_update(double q_sa, double reward, double max_next_q, double alpha, double gamma);

// Runs one epsilon-greedy episode, updating q in place. Throws
// stepped_terminal_error when the start state is already terminal, so a
// returned trace is never empty.
EpisodeTrace run_episode(const EnvSpec& spec, QTable& q, double alpha, double gamma,
                         double explore_rate, RngStream& rng);

RunTrace run_training(const EnvSpec& spec, int episodes, const AlphaSource& alpha_source,
                      double gamma, double explore_rate, std::uint64_t seed);

// raw reward sequences per episode, in step order
std::vector<std::vector<double>> episode_rewards(const RunTrace& run);

}  // namespace qnash
