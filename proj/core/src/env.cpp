#include "qnash/env.hpp"

#include <algorithm>
#include <cmath>

#include "qnash/errors.hpp"
#include "qnash/format.hpp"

namespace qnash {

bool EnvSpec::is_terminal(int state) const {
  return std::find(terminal_states.begin(), terminal_states.end(), state) !=
         terminal_states.end();
}

void validate_spec(const EnvSpec& spec) {
  if (spec.kind == EnvKind::chain) {
    if (spec.chain_length < 1) throw config_error("env: chain length must be >= 1");
  } else {
    if (spec.grid_width < 1 || spec.grid_height < 1) {
      throw config_error("env: grid dimensions must be >= 1");
    }
  }
  int n = spec.n_states();
  if (int(spec.arrival_rewards.size()) != n) {
    throw config_error("env: arrival_rewards must have one entry per state");
  }
  for (double r : spec.arrival_rewards) {
    if (!std::isfinite(r)) throw config_error("env: rewards must be finite");
  }
  if (spec.terminal_states.empty()) throw config_error("env: need at least one terminal state");
  for (int t : spec.terminal_states) {
    if (t < 0 || t >= n) throw config_error("env: terminal state out of range");
  }
  if (spec.start_state < 0 || spec.start_state >= n) {
    throw config_error("env: start state out of range");
  }
  if (spec.max_steps < 1) throw config_error("env: max_steps must be >= 1");
}

int env_reset(const EnvSpec& spec) { return spec.start_state; }

StepOutcome env_step(const EnvSpec& spec, int state, int action) {
  int n = spec.n_states();
  if (state < 0 || state >= n) {
    throw out_of_range_error("env_step: state " + format_int(state) + " out of range");
  }
  if (action < 0 || action >= spec.n_actions()) {
    throw out_of_range_error("env_step: action " + format_int(action) + " out of range");
  }
  if (spec.is_terminal(state)) {
    throw stepped_terminal_error("env_step: stepping from terminal state " + format_int(state));
  }

  int next = state;
  if (spec.kind == EnvKind::chain) {
    next = action == 0 ? std::min(state + 1, spec.chain_length - 1) : std::max(state - 1, 0);
  } else {
    int x = state % spec.grid_width;
    int y = state / spec.grid_width;
    switch (action) {
      case 0: x = std::min(x + 1, spec.grid_width - 1); break;
      case 1: y = std::min(y + 1, spec.grid_height - 1); break;
      case 2: x = std::max(x - 1, 0); break;
      default: y = std::max(y - 1, 0); break;
    }
    next = y * spec.grid_width + x;
  }
  return StepOutcome{next, spec.arrival_rewards[next], spec.is_terminal(next)};
}

EnvSpec make_chain(int length, double r_step, double r_goal, int max_steps) {
  if (length < 1) throw config_error("make_chain: length must be >= 1");
  if (!(r_step > 0.0) || !(r_goal > 0.0)) {
    throw config_error("make_chain: rewards must be strictly positive");
  }
  EnvSpec spec;
  spec.kind = EnvKind::chain;
  spec.chain_length = length;
  spec.arrival_rewards.assign(length, r_step);
  spec.arrival_rewards.back() = r_goal;
  spec.terminal_states = {length - 1};
  spec.start_state = 0;
  spec.max_steps = max_steps;
  return spec;
}

EnvSpec make_gridworld(int width, int height, double r_step, double r_goal, int max_steps) {
  if (width < 1 || height < 1) throw config_error("make_gridworld: dimensions must be >= 1");
  if (!(r_step > 0.0) || !(r_goal > 0.0)) {
    throw config_error("make_gridworld: rewards must be strictly positive");
  }
  EnvSpec spec;
  spec.kind = EnvKind::gridworld;
  spec.grid_width = width;
  spec.grid_height = height;
  spec.arrival_rewards.assign(std::size_t(width) * height, r_step);
  spec.arrival_rewards.back() = r_goal;  // goal at (width-1, height-1)
  spec.terminal_states = {width * height - 1};
  spec.start_state = 0;
  spec.max_steps = max_steps;
  return spec;
}

EnvSpec make_constant_rt_chain(int length, double rt, double r0, int max_steps) {
  if (length < 2) throw config_error("make_constant_rt_chain: length must be >= 2");
  if (!(rt >= 0.0) || rt >= 1.0) {
    throw config_error("make_constant_rt_chain: rt must lie in [0, 1)");
  }
  if (!(r0 > 0.0)) throw config_error("make_constant_rt_chain: r0 must be strictly positive");
  EnvSpec spec;
  spec.kind = EnvKind::chain;
  spec.chain_length = length;
  spec.arrival_rewards.resize(length);
  // r_i = r0 / (1 - rt)^i, so (r_t - r_{t-1}) / r_t == rt on every forward step
  double r = r0;
  for (int i = 0; i < length; ++i) {
    spec.arrival_rewards[i] = r;
    r /= (1.0 - rt);
  }
  spec.terminal_states = {length - 1};
  spec.start_state = 0;
  spec.max_steps = max_steps;
  return spec;
}

EnvSpec env_from_preset(const std::string& name) {
  if (name == "chain5") return make_chain(5, 0.01, 0.1);
  if (name == "grid3") return make_gridworld(3, 3, 0.01, 0.1);
  if (name.rfind("chain:", 0) == 0) {
    return make_chain(int(parse_int(name.substr(6), "env preset chain length")), 0.01, 0.1);
  }
  if (name.rfind("constrel:", 0) == 0) {
    return make_constant_rt_chain(5, parse_double(name.substr(9), "env preset constrel rt"));
  }
  throw config_error("unknown env preset: '" + name +
                     "' (expected chain5, grid3, chain:<length> or constrel:<rt>)");
}

EnvSpec env_from_config(const ConfigFile& cfg) {
  std::string kind = cfg.get_string("env", "kind", "chain");
  int max_steps = int(cfg.get_int("env", "max_steps", 1000));
  double r_step = cfg.get_double("env", "r_step", 0.01);
  double r_goal = cfg.get_double("env", "r_goal", 0.1);
  if (kind == "chain") {
    int length = int(cfg.get_int("env", "length", 5));
    if (cfg.has("env", "rt")) {
      double rt = cfg.get_double("env", "rt", 0.25);
      double r0 = cfg.get_double("env", "r0", 0.01);
      return make_constant_rt_chain(length, rt, r0, max_steps);
    }
    return make_chain(length, r_step, r_goal, max_steps);
  }
  if (kind == "gridworld") {
    int width = int(cfg.get_int("env", "width", 3));
    int height = int(cfg.get_int("env", "height", 3));
    return make_gridworld(width, height, r_step, r_goal, max_steps);
  }
  throw config_error("env.kind: expected chain or gridworld, got '" + kind + "'");
}

}  // namespace qnash
