#pragma once

#include <vector>

namespace qnash {

struct CriticalPoint {
  double x = 0.0;
  double ratio = 0.0;
};

// within_unit_premise marks whether the interval stays inside [0, 1], the
// domain where |f_N(t) - x| <= 1 actually holds; the upper interval is
// reported but violates that premise.
struct StabilityInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool within_unit_premise = false;
};

struct RatioSample {
  double x = 0.0;
  double ratio = 0.0;
};

struct StabilityReport {
  std::vector<RatioSample> samples;
  std::vector<CriticalPoint> critical_points;
  std::vector<StabilityInterval> stable_intervals;
  double alpha_lo = 0.0;  // sqrt(1/2), rate at the lower ratio bound
  double alpha_hi = 0.0;  // sqrt(3/4), rate at the upper ratio bound
};

struct RatioAlpha {
  double alpha = 0.0;
  double theta = 0.0;  // radians
};

// (3/4) * (1 - 4x + 4x^2) / (1 + 3x + 3x^2); the denominator has no real roots
double lhs_ratio(double x);

// roots of the derivative numerator 24x^2 + 2x - 7 with their ratio values,
// sorted by x
std::vector<CriticalPoint> critical_points();

// solutions of 1/2 < lhs_ratio(x) < 3/4 in closed form:
// (0, (9 - 5*sqrt(3))/6) and ((9 + 5*sqrt(3))/6, 7)
std::vector<StabilityInterval> stable_intervals();

// (sum v)^2 / (n * sum v^2); at most 1, equal exactly when all entries match
double cauchy_schwarz_ratio(const std::vector<double>& v);

// rate and angle for a squared-cosine ratio: (sqrt(ratio), arccos(sqrt(ratio)))
RatioAlpha ratio_to_alpha(double ratio);

StabilityReport make_stability_report(double x_min, double x_max, int n_samples);

}  // namespace qnash
