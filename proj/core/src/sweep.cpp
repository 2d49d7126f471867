#include "qnash/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>
#include <tuple>

#include "qnash/errors.hpp"
#include "qnash/format.hpp"
#include "qnash/metrics.hpp"
#include "qnash/qlearn.hpp"
#include "qnash/rng.hpp"

namespace qnash {

RewardModel RewardModel::uniform01() { return RewardModel{}; }

RewardModel RewardModel::constant(double c) {
  RewardModel m;
  m.kind = RewardModelKind::constant;
  m.constant_value = c;
  return m;
}

RewardModel RewardModel::from_env(EnvSpec spec) {
  RewardModel m;
  m.kind = RewardModelKind::from_env;
  m.env = std::move(spec);
  return m;
}

std::vector<std::int64_t> log_spaced_counts(std::int64_t n_min, std::int64_t n_max,
                                            int n_samples) {
  if (n_min < 1) throw config_error("sweep: n_min must be >= 1");
  if (n_max < n_min) throw config_error("sweep: n_max must be >= n_min");
  if (n_samples < 1) throw config_error("sweep: n_samples must be >= 1");
  if (n_samples == 1 || n_min == n_max) return {n_min};
  std::vector<std::int64_t> counts;
  counts.reserve(std::size_t(n_samples));
  double lo = std::log10(double(n_min));
  double hi = std::log10(double(n_max));
  for (int i = 0; i < n_samples; ++i) {
    double e = lo + (hi - lo) * double(i) / double(n_samples - 1);
    std::int64_t n = std::llround(std::pow(10.0, e));
    n = std::clamp(n, n_min, n_max);
    if (counts.empty() || counts.back() != n) counts.push_back(n);
  }
  return counts;
}

namespace {

int lower_median(std::vector<int>& lengths) {
  std::sort(lengths.begin(), lengths.end());
  return lengths[(lengths.size() - 1) / 2];
}

SweepCell run_cell(const SweepConfig& config, std::int64_t n, std::uint64_t cell_index) {
  std::vector<int> lengths;
  double episode_sum = 0.0;
  std::int64_t episode_count = 0;

  if (config.reward_model.kind == RewardModelKind::from_env) {
    RunTrace run = run_training(config.reward_model.env, int(n),
                                AlphaSource{config.reward_model.collect_alpha},
                                config.reward_model.collect_gamma,
                                config.reward_model.collect_explore,
                                mix_seed(config.seed, cell_index));
    lengths.reserve(run.episodes.size());
    for (const EpisodeTrace& ep : run.episodes) {
      lengths.push_back(int(ep.size()));
      if (ep.size() < 2) continue;
      std::vector<double> rewards;
      rewards.reserve(ep.size());
      for (const StepRecord& rec : ep) rewards.push_back(rec.reward);
      RelativeRewardSeries series = relative_rewards(rewards);
      if (series.values.empty()) continue;
      double ep_sum = 0.0;
      for (double v : series.values) ep_sum += v;
      episode_sum += ep_sum / double(series.values.size());
      ++episode_count;
    }
  } else {
    RngStream rng = derive_stream(config.seed, cell_index);
    lengths.reserve(std::size_t(n));
    for (std::int64_t i = 0; i < n; ++i) {
      int t = int(rng.next_int(1, config.t_max));
      double sum = 0.0;
      for (int j = 0; j < t; ++j) {
        sum += config.reward_model.kind == RewardModelKind::constant
                   ? config.reward_model.constant_value
                   : rng.next_unit();
      }
      episode_sum += sum / double(t);
      ++episode_count;
      lengths.push_back(t);
    }
  }

  if (episode_count == 0) {
    throw no_valid_steps_error("sweep: no episode produced a relative reward at n = " +
                               format_int(n));
  }
  double mean_rt = episode_sum / double(episode_count);
  SweepCell cell;
  cell.n = n;
  cell.t_i = lower_median(lengths);
  cell.mean_rt = mean_rt;
  cell.alpha = std::sqrt(mean_rt);
  return cell;
}

void validate_config(const SweepConfig& config) {
  if (config.reward_model.kind == RewardModelKind::from_env) {
    validate_spec(config.reward_model.env);
    const RewardModel& m = config.reward_model;
    if (!(m.collect_alpha >= 0.0 && m.collect_alpha <= 1.0)) {
      throw config_error("sweep: collect_alpha must lie in [0, 1]");
    }
    if (!(m.collect_gamma >= 0.0 && m.collect_gamma < 1.0)) {
      throw config_error("sweep: collect_gamma must lie in [0, 1)");
    }
    if (!(m.collect_explore >= 0.0 && m.collect_explore <= 1.0)) {
      throw config_error("sweep: collect_explore must lie in [0, 1]");
    }
  } else {
    if (config.t_max < 1) throw config_error("sweep: t_max must be >= 1");
  }
  if (config.reward_model.kind == RewardModelKind::constant) {
    double c = config.reward_model.constant_value;
    if (!(c >= 0.0 && c <= 1.0)) {
      throw config_error("sweep: constant reward must lie in [0, 1], got " + format_double(c));
    }
  }
  if (config.threads < 0) throw config_error("sweep: threads must be >= 0");
}

}  // namespace

std::vector<SweepCell> generate_sweep(const SweepConfig& config) {
  validate_config(config);
  std::vector<std::int64_t> counts = log_spaced_counts(config.n_min, config.n_max,
                                                       config.n_samples);
  std::vector<SweepCell> cells(counts.size());

  unsigned hw = std::thread::hardware_concurrency();
  std::size_t workers = config.threads > 0 ? std::size_t(config.threads)
                                           : std::size_t(hw > 0 ? hw : 1);
  workers = std::min(workers, counts.size());

  if (workers <= 1) {
    for (std::size_t i = 0; i < counts.size(); ++i) {
      cells[i] = run_cell(config, counts[i], std::uint64_t(i));
    }
    return cells;
  }

  // cells[i] depends only on (config, counts[i], i), so any scheduling yields
  // the same bytes; the pool only divides the work
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto work = [&]() {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= counts.size()) return;
      try {
        cells[i] = run_cell(config, counts[i], std::uint64_t(i));
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
  return cells;
}

namespace {

// total order used by every summary pick: mean_rt first, ties to smaller n,
// then smaller t_i
bool cell_less(const SweepCell& a, const SweepCell& b) {
  return std::tuple(a.mean_rt, a.n, a.t_i) < std::tuple(b.mean_rt, b.n, b.t_i);
}

}  // namespace

SweepSummary summarize(const std::vector<SweepCell>& cells) {
  if (cells.empty()) throw empty_input_error("summarize: no cells");
  SweepSummary s;
  s.min = *std::min_element(cells.begin(), cells.end(), cell_less);
  // max by mean_rt alone, ties still to the smaller (n, t_i)
  s.max = cells.front();
  for (const SweepCell& c : cells) {
    if (c.mean_rt > s.max.mean_rt ||
        (c.mean_rt == s.max.mean_rt && std::tuple(c.n, c.t_i) < std::tuple(s.max.n, s.max.t_i))) {
      s.max = c;
    }
  }
  std::vector<SweepCell> sorted = cells;
  std::sort(sorted.begin(), sorted.end(), cell_less);
  s.median = sorted[(sorted.size() - 1) / 2];  // lower middle
  return s;
}

ConvergenceReport convergence_report(const std::vector<SweepCell>& small_cells,
                                     const std::vector<SweepCell>& large_cells,
                                     double band_halfwidth) {
  if (small_cells.empty() || large_cells.empty()) {
    throw empty_input_error("convergence_report: empty cell set");
  }
  if (!(band_halfwidth > 0.0)) {
    throw domain_error("convergence_report: band halfwidth must be positive");
  }
  auto spread = [](const std::vector<SweepCell>& cells) {
    double lo = cells.front().mean_rt;
    double hi = lo;
    for (const SweepCell& c : cells) {
      lo = std::min(lo, c.mean_rt);
      hi = std::max(hi, c.mean_rt);
    }
    return hi - lo;
  };
  ConvergenceReport r;
  r.small_spread = spread(small_cells);
  r.large_spread = spread(large_cells);
  r.spread_shrinks = r.large_spread < r.small_spread;
  r.large_alpha = summarize(large_cells).median.alpha;
  r.band_center = std::sqrt(0.5);
  r.band_halfwidth = band_halfwidth;
  r.alpha_within_band = std::fabs(r.large_alpha - r.band_center) <= band_halfwidth;
  return r;
}

void export_csv(const std::vector<SweepCell>& cells, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw io_error("cannot open for writing: " + path);
  f << "n,t_i,alpha,mean_rt\n";
  for (const SweepCell& c : cells) {
    f << format_int(c.n) << ',' << format_int(c.t_i) << ',' << format_double(c.alpha) << ','
      << format_double(c.mean_rt) << '\n';
  }
  f.flush();
  if (!f) throw io_error("write failed: " + path);
}

std::vector<SweepCell> import_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw io_error("cannot open for reading: " + path);
  std::string line;
  if (!std::getline(f, line) || (line != "n,t_i,alpha,mean_rt" && line != "n,t_i,alpha,mean_rt\r")) {
    throw io_error("bad sweep CSV header in " + path);
  }
  std::vector<SweepCell> cells;
  int lineno = 1;
  while (std::getline(f, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::size_t p1 = line.find(',');
    std::size_t p2 = p1 == std::string::npos ? p1 : line.find(',', p1 + 1);
    std::size_t p3 = p2 == std::string::npos ? p2 : line.find(',', p2 + 1);
    if (p3 == std::string::npos) {
      throw io_error(path + " line " + std::to_string(lineno) + ": expected 4 columns");
    }
    std::string where = path + " line " + std::to_string(lineno);
    SweepCell c;
    try {
      c.n = parse_int(line.substr(0, p1), where);
      c.t_i = int(parse_int(line.substr(p1 + 1, p2 - p1 - 1), where));
      c.alpha = parse_double(line.substr(p2 + 1, p3 - p2 - 1), where);
      c.mean_rt = parse_double(line.substr(p3 + 1), where);
    } catch (const config_error& e) {
      // a data file that does not parse is an I/O problem, not a config one
      throw io_error(e.what());
    }
    cells.push_back(c);
  }
  return cells;
}

void export_plot_data(const std::vector<SweepCell>& cells, const std::string& alpha_path,
                      const std::string& mean_rt_path) {
  std::ofstream fa(alpha_path);
  if (!fa) throw io_error("cannot open for writing: " + alpha_path);
  std::ofstream fm(mean_rt_path);
  if (!fm) throw io_error("cannot open for writing: " + mean_rt_path);
  for (const SweepCell& c : cells) {
    fa << format_int(c.n) << ' ' << format_double(c.alpha) << '\n';
    fm << format_int(c.n) << ' ' << format_double(c.mean_rt) << '\n';
  }
  fa.flush();
  fm.flush();
  if (!fa) throw io_error("write failed: " + alpha_path);
  if (!fm) throw io_error("write failed: " + mean_rt_path);
}

}  // namespace qnash
