#include <doctest.h>

#include <cmath>
#include <vector>

#include "qnash/env.hpp"
#include "qnash/errors.hpp"
#include "qnash/metrics.hpp"
#include "qnash/qlearn.hpp"
#include "qnash/rng.hpp"

namespace {

qnash::StepRecord make_step(double q_before, double q_after, double reward, double max_next_q) {
  qnash::StepRecord s;
  s.q_before = q_before;
  s.q_after = q_after;
  s.reward = reward;
  s.max_next_q = max_next_q;
  return s;
}

}  // namespace

TEST_CASE("implied_alpha inverts the value blend") {
  std::optional<double> a = qnash::implied_alpha(make_step(0.0, 0.5, 1.0, 0.0), 0.9);
  REQUIRE(a.has_value());
  CHECK(*a == 0.5);
}

TEST_CASE("implied_alpha skips when the update target equals the prior estimate") {
  CHECK_FALSE(qnash::implied_alpha(make_step(1.0, 1.0, 1.0, 0.0), 0.0).has_value());
  CHECK_FALSE(qnash::implied_alpha(make_step(1.0, 1.0, 1.0 + 5e-10, 0.0), 0.0).has_value());
  CHECK(qnash::implied_alpha(make_step(1.0, 1.0, 1.0 + 2e-9, 0.0), 0.0).has_value());
}

TEST_CASE("implied_alpha recovers the training rate step by step") {
  qnash::RunTrace run = qnash::run_training(qnash::make_chain(5), 40,
                                            qnash::AlphaSource{0.3}, 0.9, 0.1, 99);
  int valid = 0;
  for (const qnash::EpisodeTrace& ep : run.episodes) {
    for (const qnash::StepRecord& s : ep) {
      std::optional<double> a = qnash::implied_alpha(s, 0.9);
      if (!a) continue;
      CHECK(std::fabs(*a - 0.3) <= 1e-9);
      ++valid;
    }
  }
  CHECK(valid > 0);
}

TEST_CASE("n1 averages squared implied rates per episode, then across episodes") {
  qnash::RunTrace run = qnash::run_training(qnash::make_chain(5), 100,
                                            qnash::AlphaSource{0.3}, 0.9, 0.1, 0);
  CHECK(std::fabs(qnash::n1_metric(run, 0.9) - 0.09) <= 1e-9);
}

TEST_CASE("n1 is exactly one when training replaces values outright") {
  qnash::RunTrace run = qnash::run_training(qnash::make_chain(5), 20,
                                            qnash::AlphaSource{1.0}, 0.9, 0.1, 4);
  CHECK(qnash::n1_metric(run, 0.9) == 1.0);
}

TEST_CASE("n1 with every step skipped is an error") {
  qnash::RunTrace run;
  run.gamma = 0.0;
  run.alpha_used = {0.5};
  run.episodes = {{make_step(1.0, 1.0, 1.0, 0.0), make_step(1.0, 1.0, 1.0, 0.0)}};
  CHECK_THROWS_AS(qnash::n1_metric(run, 0.0), qnash::no_valid_steps_error);
}

TEST_CASE("relative rewards follow the ratio formula") {
  qnash::RelativeRewardSeries s = qnash::relative_rewards({1.0, 2.0, 4.0});
  REQUIRE(s.values.size() == 2);
  CHECK(s.values[0] == 0.5);
  CHECK(s.values[1] == 0.5);
  CHECK(s.skipped_count == 0);
  CHECK(s.clamped_count == 0);
}

TEST_CASE("constant rewards give zero relative reward") {
  qnash::RelativeRewardSeries s = qnash::relative_rewards({5.0, 5.0, 5.0});
  REQUIRE(s.values.size() == 2);
  CHECK(s.values[0] == 0.0);
  CHECK(s.values[1] == 0.0);
}

TEST_CASE("decreasing rewards clamp to zero and are counted") {
  qnash::RelativeRewardSeries s = qnash::relative_rewards({4.0, 2.0});
  REQUIRE(s.values.size() == 1);
  CHECK(s.values[0] == 0.0);
  CHECK(s.clamped_count == 1);
}

TEST_CASE("transitions onto a vanishing reward are skipped and counted") {
  qnash::RelativeRewardSeries s = qnash::relative_rewards({1.0, 1e-13, 2.0});
  REQUIRE(s.values.size() == 1);  // only the 1e-13 -> 2.0 transition survives
  CHECK(s.values[0] > 0.999);
  CHECK(s.skipped_count == 1);
}

TEST_CASE("fewer than two rewards cannot form a relative series") {
  CHECK_THROWS_AS(qnash::relative_rewards({1.0}), qnash::too_short_error);
  CHECK_THROWS_AS(qnash::relative_rewards({}), qnash::too_short_error);
}

TEST_CASE("skip accounting is exact") {
  std::vector<double> raw = {1.0, 0.0, 2.0, 1e-13, 3.0, 1.5, 6.0};
  qnash::RelativeRewardSeries s = qnash::relative_rewards(raw);
  CHECK(s.values.size() + std::size_t(s.skipped_count) == raw.size() - 1);
  for (double v : s.values) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("relative rewards are invariant under positive reward rescaling") {
  qnash::RngStream rng = qnash::derive_stream(21, 0);
  std::vector<double> raw;
  for (int i = 0; i < 50; ++i) raw.push_back(0.05 + rng.next_unit());
  qnash::RelativeRewardSeries base = qnash::relative_rewards(raw);
  std::vector<double> scaled = raw;
  for (double& r : scaled) r *= 3.7;
  qnash::RelativeRewardSeries s = qnash::relative_rewards(scaled);
  REQUIRE(s.values.size() == base.values.size());
  CHECK(s.skipped_count == base.skipped_count);
  CHECK(s.clamped_count == base.clamped_count);
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    CHECK(std::fabs(s.values[i] - base.values[i]) <= 1e-12);
  }
}

TEST_CASE("n2 averages episode means") {
  CHECK(qnash::n2_metric({{1.0, 2.0, 4.0}}) == 0.5);
  CHECK(qnash::n2_metric({{3.0, 3.0, 3.0, 3.0}}) == 0.0);
  CHECK(qnash::n2_metric({{1.0, 2.0, 4.0}, {5.0, 5.0, 5.0}}) == 0.25);
}

TEST_CASE("n2 error paths: no episodes, short episodes, fully skipped episodes") {
  CHECK_THROWS_AS(qnash::n2_metric({}), qnash::empty_input_error);
  CHECK_THROWS_AS(qnash::n2_metric({{1.0}}), qnash::too_short_error);
  CHECK_THROWS_AS(qnash::n2_metric({{1.0, 1e-13, 1e-14}}), qnash::no_valid_steps_error);
}

TEST_CASE("n2 stays inside the unit interval on arbitrary reward signs") {
  qnash::RngStream rng = qnash::derive_stream(33, 5);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::vector<double>> episodes;
    for (int e = 0; e < 4; ++e) {
      std::vector<double> raw;
      for (int i = 0; i < 12; ++i) raw.push_back(2.0 * rng.next_unit() - 0.5);
      raw[0] = 1.0;
      raw[5] = 0.7;  // keeps at least one valid transition per episode
      episodes.push_back(raw);
    }
    double n2 = qnash::n2_metric(episodes);
    CHECK(n2 >= 0.0);
    CHECK(n2 <= 1.0);
  }
}

TEST_CASE("compute_metrics agrees with the standalone metric calls") {
  qnash::RunTrace run = qnash::run_training(qnash::make_gridworld(3, 3), 60,
                                            qnash::AlphaSource{0.4}, 0.9, 0.15, 17);
  qnash::MetricReport report = qnash::compute_metrics(run);
  CHECK(report.n1 == qnash::n1_metric(run, run.gamma));
  CHECK(report.n2 == qnash::n2_metric(qnash::episode_rewards(run)));
  std::size_t steps = 0;
  for (const qnash::EpisodeTrace& ep : run.episodes) steps += ep.size();
  CHECK(report.implied_alphas.size() + std::size_t(report.skipped_steps) == steps);
  CHECK(report.n2 >= 0.0);
  CHECK(report.n2 <= 1.0);
}
