// qnash command line: train | tune | simulate | stability | report.
// Exit codes: 0 success, 2 config or validation problem, 3 I/O problem.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "manifest.hpp"
#include "qnash/config.hpp"
#include "qnash/env.hpp"
#include "qnash/errors.hpp"
#include "qnash/format.hpp"
#include "qnash/metrics.hpp"
#include "qnash/qlearn.hpp"
#include "qnash/serialize.hpp"
#include "qnash/stability.hpp"
#include "qnash/sweep.hpp"
#include "qnash/tuner.hpp"
#include "qnash/version.hpp"

namespace {

struct CommonOpts {
  std::uint64_t seed = 0;
  std::string config_path;
  std::string out_dir = ".";
  bool quiet = false;
  CLI::Option* o_seed = nullptr;
};

void add_common_flags(CLI::App* cmd, CommonOpts& c) {
  c.o_seed = cmd->add_option("--seed", c.seed, "master RNG seed");
  cmd->add_option("--config", c.config_path, "config file ([section] key = value)");
  cmd->add_option("--out", c.out_dir, "output directory");
  cmd->add_flag("--quiet", c.quiet, "suppress the stdout summary");
}

qnash::ConfigFile load_config(const CommonOpts& c) {
  if (c.config_path.empty()) return {};
  return qnash::parse_config_file(c.config_path);
}

// Flags win over config values, config values win over built-in defaults.
// An option that was never passed on the command line has count() == 0.
void merge_double(const qnash::ConfigFile& cfg, const std::string& section, const std::string& key,
                  const CLI::Option* opt, double& value) {
  if (opt->count() == 0 && cfg.has(section, key)) value = cfg.get_double(section, key, value);
}

void merge_int(const qnash::ConfigFile& cfg, const std::string& section, const std::string& key,
               const CLI::Option* opt, int& value) {
  if (opt->count() == 0 && cfg.has(section, key)) {
    value = static_cast<int>(cfg.get_int(section, key, value));
  }
}

void merge_i64(const qnash::ConfigFile& cfg, const std::string& section, const std::string& key,
               const CLI::Option* opt, std::int64_t& value) {
  if (opt->count() == 0 && cfg.has(section, key)) value = cfg.get_int(section, key, value);
}

void merge_u64(const qnash::ConfigFile& cfg, const std::string& section, const std::string& key,
               const CLI::Option* opt, std::uint64_t& value) {
  if (opt->count() == 0 && cfg.has(section, key)) {
    value = static_cast<std::uint64_t>(
        cfg.get_int(section, key, static_cast<std::int64_t>(value)));
  }
}

void merge_bool(const qnash::ConfigFile& cfg, const std::string& section, const std::string& key,
                const CLI::Option* opt, bool& value) {
  if (opt->count() == 0 && cfg.has(section, key)) {
    value = cfg.get_int(section, key, value ? 1 : 0) != 0;
  }
}

void merge_string(const qnash::ConfigFile& cfg, const std::string& section, const std::string& key,
                  const CLI::Option* opt, std::string& value) {
  if (opt->count() == 0 && cfg.has(section, key)) value = cfg.get_string(section, key, value);
}

void ensure_out_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw qnash::io_error("cannot create output directory '" + dir + "': " + ec.message());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw qnash::io_error("cannot open '" + path.string() + "' for writing");
  out << text;
  out.flush();
  if (!out) throw qnash::io_error("write to '" + path.string() + "' failed");
}

void write_json_file(const std::filesystem::path& path, const nlohmann::json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

// Written after every other artifact, so its presence marks a completed run.
void write_manifest(const CommonOpts& c, const std::string& command,
                    const std::vector<std::string>& args) {
  qnash::RunManifest m;
  m.command = command;
  m.config_path = c.config_path;
  m.seed = c.seed;
  m.output_dir = c.out_dir;
  m.timestamp = qnash::timestamp_utc_now();
  m.artifact_version = qnash::kArtifactVersion;
  m.args = args;
  write_json_file(std::filesystem::path(c.out_dir) / "manifest.json", nlohmann::json(m));
}

qnash::EnvSpec resolve_env(const std::string& preset, const CLI::Option* env_opt,
                           const qnash::ConfigFile& cfg) {
  if (env_opt->count() == 0 && cfg.sections.count("env") != 0) return qnash::env_from_config(cfg);
  return qnash::env_from_preset(preset);
}

std::optional<double> episode_mean_rt(const qnash::EpisodeTrace& episode) {
  if (episode.size() < 2) return std::nullopt;
  std::vector<double> rewards;
  rewards.reserve(episode.size());
  for (const qnash::StepRecord& step : episode) rewards.push_back(step.reward);
  qnash::RelativeRewardSeries series = qnash::relative_rewards(rewards);
  if (series.values.empty()) return std::nullopt;
  double sum = 0.0;
  for (double v : series.values) sum += v;
  return sum / static_cast<double>(series.values.size());
}

// ---------------------------------------------------------------- train

struct TrainOpts {
  std::string env_preset = "chain5";
  int episodes = 100;
  double alpha = 0.5;
  bool adaptive = false;
  double gamma = 0.9;
  double explore = 0.1;
  qnash::AlphaSchedule schedule;
  CLI::Option* o_env = nullptr;
  CLI::Option* o_episodes = nullptr;
  CLI::Option* o_alpha = nullptr;
  CLI::Option* o_adaptive = nullptr;
  CLI::Option* o_gamma = nullptr;
  CLI::Option* o_explore = nullptr;
  CLI::Option* o_alpha0 = nullptr;
  CLI::Option* o_alpha_min = nullptr;
  CLI::Option* o_alpha_max = nullptr;
  CLI::Option* o_window = nullptr;
};

CLI::App* add_train_command(CLI::App& app, TrainOpts& t, CommonOpts& c) {
  CLI::App* cmd = app.add_subcommand("train", "run tabular Q-learning and measure rate metrics");
  add_common_flags(cmd, c);
  t.o_env = cmd->add_option("--env", t.env_preset,
                            "environment: chain5 | grid3 | chain:<len> | constrel:<rt>");
  t.o_episodes =
      cmd->add_option("--episodes", t.episodes, "episode count")->check(CLI::PositiveNumber);
  t.o_alpha =
      cmd->add_option("--alpha", t.alpha, "fixed learning rate")->check(CLI::Range(0.0, 1.0));
  t.o_adaptive =
      cmd->add_flag("--adaptive", t.adaptive, "feedback schedule instead of a fixed rate");
  t.o_gamma = cmd->add_option("--gamma", t.gamma, "discount factor in [0, 1)");
  t.o_explore = cmd->add_option("--explore", t.explore, "epsilon-greedy exploration rate")
                    ->check(CLI::Range(0.0, 1.0));
  t.o_alpha0 = cmd->add_option("--alpha0", t.schedule.alpha_0, "schedule start rate")
                   ->check(CLI::Range(0.0, 1.0));
  t.o_alpha_min = cmd->add_option("--alpha-min", t.schedule.alpha_min, "schedule lower clamp")
                      ->check(CLI::Range(0.0, 1.0));
  t.o_alpha_max = cmd->add_option("--alpha-max", t.schedule.alpha_max, "schedule upper clamp")
                      ->check(CLI::Range(0.0, 1.0));
  t.o_window =
      cmd->add_option("--window", t.schedule.window, "trailing episodes used by the schedule, 0 = whole history")
          ->check(CLI::NonNegativeNumber);
  return cmd;
}

int run_train(CommonOpts common, TrainOpts t, const std::vector<std::string>& args) {
  qnash::ConfigFile cfg = load_config(common);
  const std::string sec = "train";
  merge_u64(cfg, sec, "seed", common.o_seed, common.seed);
  merge_int(cfg, sec, "episodes", t.o_episodes, t.episodes);
  merge_double(cfg, sec, "alpha", t.o_alpha, t.alpha);
  merge_bool(cfg, sec, "adaptive", t.o_adaptive, t.adaptive);
  merge_double(cfg, sec, "gamma", t.o_gamma, t.gamma);
  merge_double(cfg, sec, "explore", t.o_explore, t.explore);
  merge_double(cfg, sec, "alpha0", t.o_alpha0, t.schedule.alpha_0);
  merge_double(cfg, sec, "alpha_min", t.o_alpha_min, t.schedule.alpha_min);
  merge_double(cfg, sec, "alpha_max", t.o_alpha_max, t.schedule.alpha_max);
  merge_int(cfg, sec, "window", t.o_window, t.schedule.window);
  qnash::EnvSpec spec = resolve_env(t.env_preset, t.o_env, cfg);

  qnash::AlphaSource source =
      t.adaptive ? qnash::AlphaSource(t.schedule) : qnash::AlphaSource(t.alpha);
  qnash::RunTrace run =
      qnash::run_training(spec, t.episodes, source, t.gamma, t.explore, common.seed);
  qnash::MetricReport report = qnash::compute_metrics(run);
  double alpha_star = qnash::nash_alpha(report.n2);

  ensure_out_dir(common.out_dir);
  std::filesystem::path out(common.out_dir);

  std::string csv = "episode,T_i,mean_Rt,alpha_used\n";
  for (std::size_t i = 0; i < run.episodes.size(); ++i) {
    std::optional<double> mean_rt = episode_mean_rt(run.episodes[i]);
    csv += qnash::format_int(static_cast<std::int64_t>(i + 1));
    csv += ',';
    csv += qnash::format_int(static_cast<std::int64_t>(run.episodes[i].size()));
    csv += ',';
    csv += mean_rt ? qnash::format_double(*mean_rt) : std::string("nan");
    csv += ',';
    csv += qnash::format_double(run.alpha_used[i]);
    csv += '\n';
  }
  write_text_file(out / "episodes.csv", csv);

  nlohmann::json mj = report;
  mj["episodes"] = t.episodes;
  mj["gamma"] = t.gamma;
  mj["explore"] = t.explore;
  mj["alpha_mode"] = t.adaptive ? "adaptive" : "fixed";
  if (!t.adaptive) mj["alpha"] = t.alpha;
  mj["alpha_star_from_n2"] = alpha_star;
  write_json_file(out / "metrics.json", mj);

  write_manifest(common, "train", args);

  if (!common.quiet) {
    std::cout << "episodes " << t.episodes << "\n";
    std::cout << "n1 " << qnash::format_double(report.n1) << "\n";
    std::cout << "n2 " << qnash::format_double(report.n2) << "\n";
    std::cout << "alpha_star " << qnash::format_double(alpha_star) << "\n";
  }
  return 0;
}

// ----------------------------------------------------------------- tune

struct TuneOpts {
  std::string env_preset = "chain5";
  int episodes = 100;
  double grid_step = 0.005;
  double gamma = 0.9;
  double explore = 0.1;
  CLI::Option* o_env = nullptr;
  CLI::Option* o_episodes = nullptr;
  CLI::Option* o_grid_step = nullptr;
  CLI::Option* o_gamma = nullptr;
  CLI::Option* o_explore = nullptr;
};

CLI::App* add_tune_command(CLI::App& app, TuneOpts& t, CommonOpts& c) {
  CLI::App* cmd =
      app.add_subcommand("tune", "scan a rate grid for the epsilon-Nash equilibrium");
  add_common_flags(cmd, c);
  t.o_env = cmd->add_option("--env", t.env_preset,
                            "environment: chain5 | grid3 | chain:<len> | constrel:<rt>");
  t.o_episodes =
      cmd->add_option("--episodes", t.episodes, "episode count per grid point")
          ->check(CLI::PositiveNumber);
  t.o_grid_step = cmd->add_option("--grid-step", t.grid_step, "alpha grid spacing in (0, 1]");
  t.o_gamma = cmd->add_option("--gamma", t.gamma, "discount factor in [0, 1)");
  t.o_explore = cmd->add_option("--explore", t.explore, "epsilon-greedy exploration rate")
                    ->check(CLI::Range(0.0, 1.0));
  return cmd;
}

int run_tune(CommonOpts common, TuneOpts t, const std::vector<std::string>& args) {
  qnash::ConfigFile cfg = load_config(common);
  const std::string sec = "tune";
  merge_u64(cfg, sec, "seed", common.o_seed, common.seed);
  merge_int(cfg, sec, "episodes", t.o_episodes, t.episodes);
  merge_double(cfg, sec, "grid_step", t.o_grid_step, t.grid_step);
  merge_double(cfg, sec, "gamma", t.o_gamma, t.gamma);
  merge_double(cfg, sec, "explore", t.o_explore, t.explore);
  qnash::EnvSpec spec = resolve_env(t.env_preset, t.o_env, cfg);

  if (!(t.grid_step > 0.0) || t.grid_step > 1.0) {
    throw qnash::config_error("grid step must lie in (0, 1], got " +
                              qnash::format_double(t.grid_step));
  }
  int subdivisions = static_cast<int>(std::llround(1.0 / t.grid_step));
  if (subdivisions < 1) subdivisions = 1;
  std::vector<double> grid = qnash::make_alpha_grid(subdivisions);

  // Every grid rate replays the same seed: common random numbers keep the
  // gap curve smooth in alpha.
  std::map<double, double> n1_by_alpha;
  std::map<double, double> n2_by_alpha;
  for (double a : grid) {
    qnash::RunTrace run =
        qnash::run_training(spec, t.episodes, qnash::AlphaSource(a), t.gamma, t.explore,
                            common.seed);
    n1_by_alpha[a] = qnash::n1_metric(run, t.gamma);
    n2_by_alpha[a] = qnash::n2_metric(qnash::episode_rewards(run));
  }
  qnash::NashEstimate est = qnash::epsilon_nash_search(
      [&](double a) { return n1_by_alpha.at(a); }, [&](double a) { return n2_by_alpha.at(a); },
      grid);

  ensure_out_dir(common.out_dir);
  std::filesystem::path out(common.out_dir);

  std::string csv = "alpha,n1,n2,gap\n";
  for (double a : grid) {
    double n1 = n1_by_alpha.at(a);
    double n2 = n2_by_alpha.at(a);
    csv += qnash::format_double(a);
    csv += ',';
    csv += qnash::format_double(n1);
    csv += ',';
    csv += qnash::format_double(n2);
    csv += ',';
    csv += qnash::format_double(std::fabs(n1 - n2));
    csv += '\n';
  }
  write_text_file(out / "gaps.csv", csv);

  nlohmann::json nj = est;
  nj["grid_step"] = 1.0 / subdivisions;
  nj["episodes"] = t.episodes;
  nj["gamma"] = t.gamma;
  nj["explore"] = t.explore;
  write_json_file(out / "nash.json", nj);

  write_manifest(common, "tune", args);

  if (!common.quiet) {
    std::cout << "alpha_star " << qnash::format_double(est.alpha_star) << "\n";
    std::cout << "epsilon " << qnash::format_double(est.epsilon) << "\n";
    std::cout << "n1 " << qnash::format_double(est.n1_at_star) << " n2 "
              << qnash::format_double(est.n2_at_star) << "\n";
  }
  return 0;
}

// ------------------------------------------------------------- simulate

struct SimulateOpts {
  std::int64_t n_min = 1;
  std::int64_t n_max = 1000000;
  int n_samples = 40;
  int t_max = 5;
  std::string reward = "uniform01";
  double band = 0.01;
  int threads = 0;
  double collect_alpha = 0.5;
  double collect_gamma = 0.9;
  double collect_explore = 0.1;
  CLI::Option* o_n_min = nullptr;
  CLI::Option* o_n_max = nullptr;
  CLI::Option* o_n_samples = nullptr;
  CLI::Option* o_t_max = nullptr;
  CLI::Option* o_reward = nullptr;
  CLI::Option* o_band = nullptr;
  CLI::Option* o_threads = nullptr;
  CLI::Option* o_collect_alpha = nullptr;
  CLI::Option* o_collect_gamma = nullptr;
  CLI::Option* o_collect_explore = nullptr;
};

CLI::App* add_simulate_command(CLI::App& app, SimulateOpts& s, CommonOpts& c) {
  CLI::App* cmd =
      app.add_subcommand("simulate", "sweep episode counts and watch alpha converge");
  add_common_flags(cmd, c);
  s.o_n_min = cmd->add_option("--n-min", s.n_min, "smallest episode count")
                  ->check(CLI::PositiveNumber);
  s.o_n_max = cmd->add_option("--n-max", s.n_max, "largest episode count")
                  ->check(CLI::PositiveNumber);
  s.o_n_samples = cmd->add_option("--n-samples", s.n_samples, "log-spaced cells between them")
                      ->check(CLI::PositiveNumber);
  s.o_t_max = cmd->add_option("--t-max", s.t_max, "episode lengths drawn from [1, t_max]")
                  ->check(CLI::PositiveNumber);
  s.o_reward = cmd->add_option("--reward", s.reward,
                               "reward model: uniform01 | constant:<c> | env:<preset>");
  s.o_band = cmd->add_option("--band", s.band, "half-width of the band around sqrt(1/2)");
  s.o_threads = cmd->add_option("--threads", s.threads, "worker threads, 0 = hardware count")
                    ->check(CLI::NonNegativeNumber);
  s.o_collect_alpha =
      cmd->add_option("--collect-alpha", s.collect_alpha, "learning rate for env:<preset> runs")
          ->check(CLI::Range(0.0, 1.0));
  s.o_collect_gamma =
      cmd->add_option("--collect-gamma", s.collect_gamma, "discount for env:<preset> runs");
  s.o_collect_explore =
      cmd->add_option("--collect-explore", s.collect_explore, "exploration for env:<preset> runs")
          ->check(CLI::Range(0.0, 1.0));
  return cmd;
}

qnash::RewardModel parse_reward_model(const std::string& text, const qnash::ConfigFile& cfg,
                                      double collect_alpha, double collect_gamma,
                                      double collect_explore) {
  if (text == "uniform01") return qnash::RewardModel::uniform01();
  if (text.rfind("constant:", 0) == 0) {
    return qnash::RewardModel::constant(
        qnash::parse_double(std::string_view(text).substr(9), "reward model constant"));
  }
  if (text.rfind("env:", 0) == 0) {
    std::string preset = text.substr(4);
    qnash::EnvSpec spec =
        (preset == "config") ? qnash::env_from_config(cfg) : qnash::env_from_preset(preset);
    qnash::RewardModel model = qnash::RewardModel::from_env(spec);
    model.collect_alpha = collect_alpha;
    model.collect_gamma = collect_gamma;
    model.collect_explore = collect_explore;
    return model;
  }
  throw qnash::config_error("unknown reward model '" + text +
                            "' (expected uniform01, constant:<c>, or env:<preset>)");
}

// First half of the cells is the small-N range, second half the large-N
// range; a single cell compares against itself.
void split_ranges(const std::vector<qnash::SweepCell>& cells,
                  std::vector<qnash::SweepCell>& small_cells,
                  std::vector<qnash::SweepCell>& large_cells) {
  if (cells.size() < 2) {
    small_cells = cells;
    large_cells = cells;
    return;
  }
  std::size_t half = cells.size() / 2;
  small_cells.assign(cells.begin(), cells.begin() + static_cast<std::ptrdiff_t>(half));
  large_cells.assign(cells.begin() + static_cast<std::ptrdiff_t>(half), cells.end());
}

void print_sweep_summary(const qnash::SweepSummary& summary, const qnash::ConvergenceReport& conv,
                         std::size_t n_cells) {
  std::cout << "cells " << n_cells << "\n";
  std::cout << "median alpha " << qnash::format_double(summary.median.alpha) << " at n "
            << qnash::format_int(summary.median.n) << "\n";
  std::cout << "spread small " << qnash::format_double(conv.small_spread) << " large "
            << qnash::format_double(conv.large_spread)
            << (conv.spread_shrinks ? " (shrinks)" : " (does not shrink)") << "\n";
  std::cout << "large-n alpha " << qnash::format_double(conv.large_alpha)
            << (conv.alpha_within_band ? " inside" : " outside") << " band "
            << qnash::format_double(conv.band_center) << " +/- "
            << qnash::format_double(conv.band_halfwidth) << "\n";
}

int run_simulate(CommonOpts common, SimulateOpts s, const std::vector<std::string>& args) {
  qnash::ConfigFile cfg = load_config(common);
  const std::string sec = "simulate";
  merge_u64(cfg, sec, "seed", common.o_seed, common.seed);
  merge_i64(cfg, sec, "n_min", s.o_n_min, s.n_min);
  merge_i64(cfg, sec, "n_max", s.o_n_max, s.n_max);
  merge_int(cfg, sec, "n_samples", s.o_n_samples, s.n_samples);
  merge_int(cfg, sec, "t_max", s.o_t_max, s.t_max);
  merge_string(cfg, sec, "reward", s.o_reward, s.reward);
  merge_double(cfg, sec, "band", s.o_band, s.band);
  merge_int(cfg, sec, "threads", s.o_threads, s.threads);
  merge_double(cfg, sec, "collect_alpha", s.o_collect_alpha, s.collect_alpha);
  merge_double(cfg, sec, "collect_gamma", s.o_collect_gamma, s.collect_gamma);
  merge_double(cfg, sec, "collect_explore", s.o_collect_explore, s.collect_explore);

  if (!(s.band > 0.0)) {
    throw qnash::config_error("band half-width must be positive, got " +
                              qnash::format_double(s.band));
  }

  qnash::SweepConfig sc;
  sc.n_min = s.n_min;
  sc.n_max = s.n_max;
  sc.n_samples = s.n_samples;
  sc.t_max = s.t_max;
  sc.reward_model =
      parse_reward_model(s.reward, cfg, s.collect_alpha, s.collect_gamma, s.collect_explore);
  sc.seed = common.seed;
  sc.threads = s.threads;

  std::vector<qnash::SweepCell> cells = qnash::generate_sweep(sc);
  qnash::SweepSummary summary = qnash::summarize(cells);
  std::vector<qnash::SweepCell> small_cells;
  std::vector<qnash::SweepCell> large_cells;
  split_ranges(cells, small_cells, large_cells);
  qnash::ConvergenceReport conv = qnash::convergence_report(small_cells, large_cells, s.band);

  ensure_out_dir(common.out_dir);
  std::filesystem::path out(common.out_dir);
  qnash::export_csv(cells, (out / "cells.csv").string());
  qnash::export_plot_data(cells, (out / "alpha_vs_n.dat").string(),
                          (out / "mean_rt_vs_n.dat").string());

  nlohmann::json sj;
  sj["reward_model"] = s.reward;
  sj["env_driven"] = sc.reward_model.kind == qnash::RewardModelKind::from_env;
  sj["n_cells"] = cells.size();
  sj["summary"] = summary;
  sj["convergence"] = conv;
  write_json_file(out / "summary.json", sj);

  write_manifest(common, "simulate", args);

  if (!common.quiet) print_sweep_summary(summary, conv, cells.size());
  return 0;
}

// ------------------------------------------------------------ stability

struct StabilityOpts {
  double x_min = 0.0;
  double x_max = 7.0;
  int samples = 701;
  std::vector<double> extra_x;
  CLI::Option* o_x_min = nullptr;
  CLI::Option* o_x_max = nullptr;
  CLI::Option* o_samples = nullptr;
};

CLI::App* add_stability_command(CLI::App& app, StabilityOpts& st, CommonOpts& c) {
  CLI::App* cmd =
      app.add_subcommand("stability", "tabulate the squared-cosine stability ratio");
  add_common_flags(cmd, c);
  st.o_x_min = cmd->add_option("--x-min", st.x_min, "left end of the sample range");
  st.o_x_max = cmd->add_option("--x-max", st.x_max, "right end of the sample range");
  st.o_samples = cmd->add_option("--samples", st.samples, "sample count across the range");
  cmd->add_option("--x", st.extra_x, "extra x values appended to ratio.csv (repeatable)");
  return cmd;
}

int run_stability(CommonOpts common, StabilityOpts st, const std::vector<std::string>& args) {
  qnash::ConfigFile cfg = load_config(common);
  const std::string sec = "stability";
  merge_u64(cfg, sec, "seed", common.o_seed, common.seed);
  merge_double(cfg, sec, "x_min", st.o_x_min, st.x_min);
  merge_double(cfg, sec, "x_max", st.o_x_max, st.x_max);
  merge_int(cfg, sec, "samples", st.o_samples, st.samples);

  qnash::StabilityReport rep = qnash::make_stability_report(st.x_min, st.x_max, st.samples);

  ensure_out_dir(common.out_dir);
  std::filesystem::path out(common.out_dir);

  std::string csv = "x,ratio\n";
  for (const qnash::RatioSample& sample : rep.samples) {
    csv += qnash::format_double(sample.x);
    csv += ',';
    csv += qnash::format_double(sample.ratio);
    csv += '\n';
  }
  for (double x : st.extra_x) {
    csv += qnash::format_double(x);
    csv += ',';
    csv += qnash::format_double(qnash::lhs_ratio(x));
    csv += '\n';
  }
  write_text_file(out / "ratio.csv", csv);

  nlohmann::json sj = rep;
  sj["x_min"] = st.x_min;
  sj["x_max"] = st.x_max;
  write_json_file(out / "stability.json", sj);

  write_manifest(common, "stability", args);

  if (!common.quiet) {
    for (const qnash::CriticalPoint& cp : rep.critical_points) {
      std::cout << "critical x " << qnash::format_double(cp.x) << " ratio "
                << qnash::format_double(cp.ratio) << "\n";
    }
    for (const qnash::StabilityInterval& iv : rep.stable_intervals) {
      std::cout << "stable (" << qnash::format_double(iv.lo) << ", "
                << qnash::format_double(iv.hi) << ")"
                << (iv.within_unit_premise ? "" : " [outside the unit premise]") << "\n";
    }
    std::cout << "alpha band [" << qnash::format_double(rep.alpha_lo) << ", "
              << qnash::format_double(rep.alpha_hi) << "]\n";
  }
  return 0;
}

// -------------------------------------------------------------- report

struct ReportOpts {
  std::string cells_path;
  double band = 0.01;
  CLI::Option* o_band = nullptr;
};

CLI::App* add_report_command(CLI::App& app, ReportOpts& r, CommonOpts& c) {
  CLI::App* cmd = app.add_subcommand("report", "recompute summaries from an exported sweep");
  add_common_flags(cmd, c);
  cmd->add_option("--cells", r.cells_path, "cells.csv produced by simulate")->required();
  r.o_band = cmd->add_option("--band", r.band, "half-width of the band around sqrt(1/2)");
  return cmd;
}

int run_report(CommonOpts common, ReportOpts r, const std::vector<std::string>& args) {
  qnash::ConfigFile cfg = load_config(common);
  merge_double(cfg, "report", "band", r.o_band, r.band);
  if (!(r.band > 0.0)) {
    throw qnash::config_error("band half-width must be positive, got " +
                              qnash::format_double(r.band));
  }

  std::vector<qnash::SweepCell> cells = qnash::import_csv(r.cells_path);
  qnash::SweepSummary summary = qnash::summarize(cells);
  std::vector<qnash::SweepCell> small_cells;
  std::vector<qnash::SweepCell> large_cells;
  split_ranges(cells, small_cells, large_cells);
  qnash::ConvergenceReport conv = qnash::convergence_report(small_cells, large_cells, r.band);

  ensure_out_dir(common.out_dir);
  std::filesystem::path out(common.out_dir);
  nlohmann::json rj;
  rj["source"] = r.cells_path;
  rj["n_cells"] = cells.size();
  rj["summary"] = summary;
  rj["convergence"] = conv;
  write_json_file(out / "report.json", rj);

  write_manifest(common, "report", args);

  if (!common.quiet) print_sweep_summary(summary, conv, cells.size());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);

  CLI::App app{"geometric Nash tuning for the Q-learning rate"};
  app.set_version_flag("--version", qnash::kArtifactVersion);
  app.require_subcommand(1);

  TrainOpts train_opts;
  CommonOpts train_common;
  CLI::App* train_cmd = add_train_command(app, train_opts, train_common);

  TuneOpts tune_opts;
  CommonOpts tune_common;
  CLI::App* tune_cmd = add_tune_command(app, tune_opts, tune_common);

  SimulateOpts simulate_opts;
  CommonOpts simulate_common;
  CLI::App* simulate_cmd = add_simulate_command(app, simulate_opts, simulate_common);

  StabilityOpts stability_opts;
  CommonOpts stability_common;
  CLI::App* stability_cmd = add_stability_command(app, stability_opts, stability_common);

  ReportOpts report_opts;
  CommonOpts report_common;
  CLI::App* report_cmd = add_report_command(app, report_opts, report_common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (train_cmd->parsed()) return run_train(train_common, train_opts, args);
    if (tune_cmd->parsed()) return run_tune(tune_common, tune_opts, args);
    if (simulate_cmd->parsed()) return run_simulate(simulate_common, simulate_opts, args);
    if (stability_cmd->parsed()) return run_stability(stability_common, stability_opts, args);
    if (report_cmd->parsed()) return run_report(report_common, report_opts, args);
  } catch (const qnash::io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const qnash::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
