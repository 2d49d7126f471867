#include <doctest.h>

#include <cmath>
#include <vector>

#include "qnash/env.hpp"
#include "qnash/errors.hpp"
#include "qnash/qlearn.hpp"
#include "qnash/rng.hpp"

namespace {

bool same_step(const qnash::StepRecord& a, const qnash::StepRecord& b) {
  return a.state == b.state && a.action == b.action && a.reward == b.reward &&
         a.next_state == b.next_state && a.q_before == b.q_before && a.q_after == b.q_after &&
         a.max_next_q == b.max_next_q;
}

bool same_run(const qnash::RunTrace& a, const qnash::RunTrace& b) {
  if (a.episodes.size() != b.episodes.size() || a.alpha_used != b.alpha_used) return false;
  for (std::size_t e = 0; e < a.episodes.size(); ++e) {
    if (a.episodes[e].size() != b.episodes[e].size()) return false;
    for (std::size_t s = 0; s < a.episodes[e].size(); ++s) {
      if (!same_step(a.episodes[e][s], b.episodes[e][s])) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("q_update applies the one-step value blend") {
  CHECK(qnash::q_update(0.0, 1.0, 0.0, 0.5, 0.9) == 0.5);
  CHECK(qnash::q_update(2.0, 7.0, 3.0, 0.0, 0.9) == 2.0);  // alpha = 0 identity, bitwise
  CHECK(qnash::q_update(1.0, 1.0, 2.0, 1.0, 0.5) == 2.0);  // alpha = 1 replaces
}

TEST_CASE("q_update rejects rates outside their domains") {
  CHECK_THROWS_AS(qnash::q_update(0.0, 1.0, 0.0, -0.1, 0.9), qnash::domain_error);
  CHECK_THROWS_AS(qnash::q_update(0.0, 1.0, 0.0, 1.1, 0.9), qnash::domain_error);
  CHECK_THROWS_AS(qnash::q_update(0.0, 1.0, 0.0, 0.5, 1.0), qnash::domain_error);
  CHECK_THROWS_AS(qnash::q_update(0.0, 1.0, 0.0, 0.5, -0.1), qnash::domain_error);
}

TEST_CASE("q table starts at zero and breaks argmax ties toward the lowest action") {
  qnash::QTable q(3, 4);
  CHECK(q.max_over_actions(1) == 0.0);
  CHECK(q.argmax_action(1) == 0);
  q.at(1, 2) = 0.5;
  CHECK(q.argmax_action(1) == 2);
  CHECK(q.max_over_actions(1) == 0.5);
  q.at(1, 0) = 0.5;  // tie with action 2
  CHECK(q.argmax_action(1) == 0);
  CHECK_THROWS_AS(q.at(3, 0), qnash::out_of_range_error);
  CHECK_THROWS_AS(q.at(0, 4), qnash::out_of_range_error);
}

TEST_CASE("a greedy episode on a two-state chain takes exactly one step") {
  qnash::EnvSpec chain = qnash::make_chain(2);
  qnash::QTable q(chain.n_states(), chain.n_actions());
  qnash::RngStream rng = qnash::derive_stream(0, 0);
  qnash::EpisodeTrace trace = qnash::run_episode(chain, q, 0.5, 0.9, 0.0, rng);
  REQUIRE(trace.size() == 1);
  CHECK(trace[0].state == 0);
  CHECK(trace[0].next_state == 1);
  CHECK(trace[0].reward == 0.1);
}

TEST_CASE("greedy episodes replay identically from the same stream state") {
  qnash::EnvSpec grid = qnash::make_gridworld(3, 3);
  qnash::QTable q1(grid.n_states(), grid.n_actions());
  qnash::QTable q2(grid.n_states(), grid.n_actions());
  qnash::RngStream r1 = qnash::derive_stream(9, 1);
  qnash::RngStream r2 = qnash::derive_stream(9, 1);
  qnash::EpisodeTrace t1 = qnash::run_episode(grid, q1, 0.4, 0.9, 0.0, r1);
  qnash::EpisodeTrace t2 = qnash::run_episode(grid, q2, 0.4, 0.9, 0.0, r2);
  REQUIRE(t1.size() == t2.size());
  for (std::size_t i = 0; i < t1.size(); ++i) CHECK(same_step(t1[i], t2[i]));
}

TEST_CASE("the step cap bounds an episode that never reaches the goal") {
  qnash::EnvSpec chain = qnash::make_chain(5, 0.01, 0.1, 5);
  qnash::QTable q(chain.n_states(), chain.n_actions());
  q.at(0, 1) = 100.0;  // makes the greedy agent bounce on the left wall
  qnash::RngStream rng = qnash::derive_stream(0, 0);
  qnash::EpisodeTrace trace = qnash::run_episode(chain, q, 0.1, 0.9, 0.0, rng);
  CHECK(trace.size() == 5);
  for (const qnash::StepRecord& s : trace) CHECK(s.next_state == 0);
}

TEST_CASE("an episode started on a terminal state is an error, never an empty trace") {
  qnash::EnvSpec one = qnash::make_chain(1);
  qnash::QTable q(one.n_states(), one.n_actions());
  qnash::RngStream rng = qnash::derive_stream(0, 0);
  CHECK_THROWS_AS(qnash::run_episode(one, q, 0.5, 0.9, 0.0, rng),
                  qnash::stepped_terminal_error);
}

TEST_CASE("every recorded step satisfies the value blend at the recorded rate") {
  qnash::RunTrace run = qnash::run_training(qnash::make_chain(5), 50,
                                            qnash::AlphaSource{0.3}, 0.9, 0.1, 123);
  REQUIRE(run.episodes.size() == 50);
  for (std::size_t e = 0; e < run.episodes.size(); ++e) {
    double alpha = run.alpha_used[e];
    for (const qnash::StepRecord& s : run.episodes[e]) {
      double expected = (1.0 - alpha) * s.q_before + alpha * (s.reward + 0.9 * s.max_next_q);
      CHECK(std::fabs(s.q_after - expected) <= 1e-12);
    }
  }
}

TEST_CASE("steps chain within every episode") {
  qnash::RunTrace run = qnash::run_training(qnash::make_gridworld(3, 3), 30,
                                            qnash::AlphaSource{0.5}, 0.9, 0.2, 7);
  for (const qnash::EpisodeTrace& ep : run.episodes) {
    REQUIRE(!ep.empty());
    CHECK(ep.front().state == 0);
    for (std::size_t i = 1; i < ep.size(); ++i) CHECK(ep[i].state == ep[i - 1].next_state);
  }
}

TEST_CASE("training is bit-identical under an identical seed") {
  qnash::EnvSpec grid = qnash::make_gridworld(3, 3);
  qnash::RunTrace a = qnash::run_training(grid, 40, qnash::AlphaSource{0.5}, 0.9, 0.1, 77);
  qnash::RunTrace b = qnash::run_training(grid, 40, qnash::AlphaSource{0.5}, 0.9, 0.1, 77);
  qnash::RunTrace c = qnash::run_training(grid, 40, qnash::AlphaSource{0.5}, 0.9, 0.1, 78);
  CHECK(same_run(a, b));
  CHECK_FALSE(same_run(a, c));
}

TEST_CASE("training at rate zero leaves every estimate untouched") {
  qnash::RunTrace run = qnash::run_training(qnash::make_chain(4), 10,
                                            qnash::AlphaSource{0.0}, 0.9, 0.3, 5);
  for (const qnash::EpisodeTrace& ep : run.episodes) {
    for (const qnash::StepRecord& s : ep) {
      CHECK(s.q_before == 0.0);
      CHECK(s.q_after == 0.0);
    }
  }
}

TEST_CASE("rate one with no discount copies the immediate reward") {
  qnash::RunTrace run = qnash::run_training(qnash::make_chain(4), 10,
                                            qnash::AlphaSource{1.0}, 0.0, 0.3, 5);
  for (const qnash::EpisodeTrace& ep : run.episodes) {
    for (const qnash::StepRecord& s : ep) CHECK(s.q_after == s.reward);
  }
}

TEST_CASE("a single-episode run is allowed") {
  qnash::RunTrace run = qnash::run_training(qnash::make_chain(3), 1,
                                            qnash::AlphaSource{0.5}, 0.9, 0.0, 0);
  CHECK(run.episodes.size() == 1);
  CHECK(run.alpha_used.size() == 1);
}

TEST_CASE("run_training validates its inputs") {
  qnash::EnvSpec chain = qnash::make_chain(3);
  CHECK_THROWS_AS(qnash::run_training(chain, 0, qnash::AlphaSource{0.5}, 0.9, 0.1, 0),
                  qnash::domain_error);
  CHECK_THROWS_AS(qnash::run_training(chain, 5, qnash::AlphaSource{1.5}, 0.9, 0.1, 0),
                  qnash::domain_error);
  CHECK_THROWS_AS(qnash::run_training(chain, 5, qnash::AlphaSource{0.5}, 1.0, 0.1, 0),
                  qnash::domain_error);
  CHECK_THROWS_AS(qnash::run_training(chain, 5, qnash::AlphaSource{0.5}, 0.9, -0.1, 0),
                  qnash::domain_error);
}

TEST_CASE("an adaptive run starts at alpha_0 and stays inside its clamps") {
  qnash::AlphaSchedule schedule;
  schedule.alpha_0 = 0.6;
  schedule.alpha_min = 0.2;
  schedule.alpha_max = 0.8;
  qnash::RunTrace run = qnash::run_training(qnash::make_chain(5), 30,
                                            qnash::AlphaSource{schedule}, 0.9, 0.1, 3);
  REQUIRE(run.alpha_used.size() == 30);
  CHECK(run.alpha_used[0] == 0.6);
  bool moved = false;
  for (double a : run.alpha_used) {
    CHECK(a >= 0.2);
    CHECK(a <= 0.8);
    if (a != 0.6) moved = true;
  }
  CHECK(moved);
}

TEST_CASE("episode_rewards flattens the trace rewards in step order") {
  qnash::RunTrace run = qnash::run_training(qnash::make_chain(4), 3,
                                            qnash::AlphaSource{0.5}, 0.9, 0.0, 1);
  std::vector<std::vector<double>> rewards = qnash::episode_rewards(run);
  REQUIRE(rewards.size() == run.episodes.size());
  for (std::size_t e = 0; e < rewards.size(); ++e) {
    REQUIRE(rewards[e].size() == run.episodes[e].size());
    for (std::size_t i = 0; i < rewards[e].size(); ++i) {
      CHECK(rewards[e][i] == run.episodes[e][i].reward);
    }
  }
}
