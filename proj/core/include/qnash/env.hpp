#pragma once

#include <string>
#include <vector>

#include "qnash/config.hpp"

namespace qnash {

enum class EnvKind { chain, gridworld };

// Small deterministic MDP. States are flat indices, rewards are paid on
// arrival, so arrival_rewards[next_state] is the step reward. Gridworld
// states are row-major y * width + x.
struct EnvSpec {
  EnvKind kind = EnvKind::chain;
  int chain_length = 5;
  int grid_width = 3;
  int grid_height = 3;
  std::vector<double> arrival_rewards;
  std::vector<int> terminal_states;
  int start_state = 0;
  int max_steps = 1000;

  int n_states() const {
    return kind == EnvKind::chain ? chain_length : grid_width * grid_height;
  }
  // chain: 0 = forward, 1 = back; gridworld: 0 = right, 1 = down, 2 = left, 3 = up.
  // Forward-ish actions get the low indices so greedy tie-breaking from a zero
  // table walks toward the goal instead of bouncing on a wall.
  int n_actions() const { return kind == EnvKind::chain ? 2 : 4; }
  bool is_terminal(int state) const;
};

struct StepOutcome {
  int next_state = 0;
  double reward = 0.0;
  bool done = false;
};

void validate_spec(const EnvSpec& spec);
int env_reset(const EnvSpec& spec);
StepOutcome env_step(const EnvSpec& spec, int state, int action);

// Default rewards are small on purpose: the implied-alpha denominator floor
// is absolute (1e-9), so a modest Q scale keeps late near-converged steps
// from smearing rounding noise into the n1 recovery.
EnvSpec make_chain(int length, double r_step = 0.01, double r_goal = 0.1, int max_steps = 1000);
EnvSpec make_gridworld(int width, int height, double r_step = 0.01, double r_goal = 0.1,
                       int max_steps = 1000);
// Chain whose arrival rewards grow geometrically so every forward step has
// relative reward exactly rt.
EnvSpec make_constant_rt_chain(int length, double rt, double r0 = 0.01, int max_steps = 1000);

// Presets: chain5 | grid3 | chain:<length> | constrel:<rt>
EnvSpec env_from_preset(const std::string& name);
// [env] keys: kind, length, width, height, r_step, r_goal, rt, r0, max_steps
EnvSpec env_from_config(const ConfigFile& cfg);

}  // namespace qnash
