#include <doctest.h>

#include <cmath>
#include <set>

#include <json.hpp>

#include "qnash/format.hpp"
#include "qnash/metrics.hpp"
#include "qnash/rng.hpp"
#include "qnash/serialize.hpp"
#include "qnash/tuner.hpp"

TEST_CASE("format_double prints 12 significant digits with a period") {
  CHECK(qnash::format_double(0.0) == "0");
  CHECK(qnash::format_double(0.5) == "0.5");
  CHECK(qnash::format_double(0.1) == "0.1");
  CHECK(qnash::format_double(-2.0) == "-2");
  CHECK(qnash::format_double(1.0 / 3.0) == "0.333333333333");
  CHECK(qnash::format_double(0.75) == "0.75");
}

TEST_CASE("format and parse round-trip doubles at output precision") {
  for (double v : {0.0, 1.0, 0.3, 1.0 / 7.0, 123456.789, 1e-9, 0.7071067811865476}) {
    double back = qnash::parse_double(qnash::format_double(v), "test");
    CHECK(std::fabs(back - v) <= 1e-11 * std::max(1.0, std::fabs(v)));
  }
}

TEST_CASE("parse helpers reject junk with the caller's context") {
  CHECK_THROWS_AS(qnash::parse_double("abc", "alpha"), qnash::config_error);
  CHECK_THROWS_AS(qnash::parse_double("1.5x", "alpha"), qnash::config_error);
  CHECK_THROWS_AS(qnash::parse_int("2.5", "episodes"), qnash::config_error);
  try {
    qnash::parse_int("oops", "episodes");
    FAIL("expected config_error");
  } catch (const qnash::config_error& e) {
    CHECK(std::string(e.what()).find("episodes") != std::string::npos);
    CHECK(std::string(e.what()).find("oops") != std::string::npos);
  }
}

TEST_CASE("derived rng streams are deterministic per (seed, index)") {
  qnash::RngStream a = qnash::derive_stream(42, 3);
  qnash::RngStream b = qnash::derive_stream(42, 3);
  qnash::RngStream c = qnash::derive_stream(42, 4);
  bool diverged = false;
  for (int i = 0; i < 64; ++i) {
    std::uint64_t x = a.next_u64();
    CHECK(x == b.next_u64());
    if (x != c.next_u64()) diverged = true;
  }
  CHECK(diverged);
}

TEST_CASE("next_unit stays in [0, 1) and is roughly centered") {
  qnash::RngStream rng = qnash::derive_stream(7, 0);
  double sum = 0.0;
  for (int i = 0; i < 10000; ++i) {
    double u = rng.next_unit();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    sum += u;
  }
  CHECK(std::fabs(sum / 10000.0 - 0.5) < 0.02);
}

TEST_CASE("next_int covers its inclusive range and nothing else") {
  qnash::RngStream rng = qnash::derive_stream(11, 2);
  std::set<std::int64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    std::int64_t v = rng.next_int(1, 5);
    CHECK(v >= 1);
    CHECK(v <= 5);
    seen.insert(v);
  }
  CHECK(seen.size() == 5);
  CHECK(rng.next_int(3, 3) == 3);
}

TEST_CASE("metric report serializes under its contract field names") {
  qnash::MetricReport r;
  r.n1 = 0.09;
  r.n2 = 0.5;
  r.implied_alphas = {0.3, 0.3};
  r.skipped_steps = 2;
  r.clamped_rewards = 1;
  nlohmann::json j = r;
  CHECK(j.size() == 5);
  CHECK(j.at("n1").get<double>() == 0.09);
  CHECK(j.at("n2").get<double>() == 0.5);
  CHECK(j.at("implied_alpha_mean").get<double>() == 0.3);
  CHECK(j.at("skipped_steps").get<std::int64_t>() == 2);
  CHECK(j.at("clamped_rewards").get<std::int64_t>() == 1);
}

TEST_CASE("nash estimate serializes alpha_star, epsilon, n1, n2") {
  qnash::NashEstimate e;
  e.alpha_star = 0.7;
  e.epsilon = 0.0;
  e.n1_at_star = 0.49;
  e.n2_at_star = 0.49;
  nlohmann::json j = e;
  CHECK(j.size() == 4);
  CHECK(j.at("alpha_star").get<double>() == 0.7);
  CHECK(j.at("epsilon").get<double>() == 0.0);
  CHECK(j.at("n1").get<double>() == 0.49);
  CHECK(j.at("n2").get<double>() == 0.49);
}
