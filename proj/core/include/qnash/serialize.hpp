#pragma once

#include <json.hpp>

#include "qnash/geometry.hpp"
#include "qnash/metrics.hpp"
#include "qnash/stability.hpp"
#include "qnash/sweep.hpp"
#include "qnash/tuner.hpp"

// JSON views of the report types. Field names are part of the output contract,
// do not rename them casually.
namespace qnash {

inline void to_json(nlohmann::json& j, const MetricReport& r) {
  double mean = 0.0;
  if (!r.implied_alphas.empty()) {
    double sum = 0.0;
    for (double a : r.implied_alphas) sum += a;
    mean = sum / double(r.implied_alphas.size());
  }
  j = nlohmann::json{{"n1", r.n1},
                     {"n2", r.n2},
                     {"implied_alpha_mean", mean},
                     {"skipped_steps", r.skipped_steps},
                     {"clamped_rewards", r.clamped_rewards}};
}

inline void to_json(nlohmann::json& j, const NashEstimate& e) {
  j = nlohmann::json{
      {"alpha_star", e.alpha_star}, {"epsilon", e.epsilon}, {"n1", e.n1_at_star},
      {"n2", e.n2_at_star}};
}

inline void to_json(nlohmann::json& j, const SweepCell& c) {
  j = nlohmann::json{{"n", c.n}, {"t_i", c.t_i}, {"alpha", c.alpha}, {"mean_rt", c.mean_rt}};
}

inline void to_json(nlohmann::json& j, const SweepSummary& s) {
  j = nlohmann::json{{"max", s.max}, {"min", s.min}, {"median", s.median}};
}

inline void to_json(nlohmann::json& j, const ConvergenceReport& r) {
  j = nlohmann::json{{"small_spread", r.small_spread},
                     {"large_spread", r.large_spread},
                     {"spread_shrinks", r.spread_shrinks},
                     {"large_alpha", r.large_alpha},
                     {"band_center", r.band_center},
                     {"band_halfwidth", r.band_halfwidth},
                     {"alpha_within_band", r.alpha_within_band}};
}

inline void to_json(nlohmann::json& j, const CriticalPoint& p) {
  j = nlohmann::json{{"x", p.x}, {"ratio", p.ratio}};
}

inline void to_json(nlohmann::json& j, const StabilityInterval& iv) {
  j = nlohmann::json{
      {"lo", iv.lo}, {"hi", iv.hi}, {"within_unit_premise", iv.within_unit_premise}};
}

// The sample curve stays in the CSV; JSON carries the analytic summary.
inline void to_json(nlohmann::json& j, const StabilityReport& r) {
  j = nlohmann::json{{"critical_points", r.critical_points},
                     {"stable_intervals", r.stable_intervals},
                     {"alpha_bounds", {{"lo", r.alpha_lo}, {"hi", r.alpha_hi}}},
                     {"n_samples", r.samples.size()}};
}

inline void to_json(nlohmann::json& j, const BisectorGeometry& g) {
  j = nlohmann::json{
      {"t_vec", g.t_vec}, {"r_vec", g.r_vec}, {"m_vec", g.m_vec}, {"cos_sq", g.cos_sq}};
}

}  // namespace qnash
