#include "qnash/stability.hpp"

#include <cmath>

#include "qnash/errors.hpp"
#include "qnash/format.hpp"

namespace qnash {

double lhs_ratio(double x) {
  // 1 + 3x + 3x^2 has no real roots (minimum 1/4 at x = -1/2)
  double num = 1.0 - 4.0 * x + 4.0 * x * x;
  double den = 1.0 + 3.0 * x + 3.0 * x * x;
  return 0.75 * (num / den);
}

std::vector<CriticalPoint> critical_points() {
  // derivative numerator 24x^2 + 2x - 7; discriminant 4 + 672 = 676 = 26^2
  double s = std::sqrt(676.0);
  double x1 = (-2.0 - s) / 48.0;
  double x2 = (-2.0 + s) / 48.0;
  return {{x1, lhs_ratio(x1)}, {x2, lhs_ratio(x2)}};
}

std::vector<StabilityInterval> stable_intervals() {
  // ratio = 3/4 at x(x - 7) = 0; ratio = 1/2 at 6x^2 - 18x + 1 = 0
  double s3 = std::sqrt(3.0);
  double inner = (9.0 - 5.0 * s3) / 6.0;
  double outer = (9.0 + 5.0 * s3) / 6.0;
  std::vector<StabilityInterval> out;
  out.push_back({0.0, inner, inner >= 0.0 && inner <= 1.0});
  out.push_back({outer, 7.0, false});
  return out;
}

double cauchy_schwarz_ratio(const std::vector<double>& v) {
  if (v.empty()) throw empty_vector_error("cauchy_schwarz_ratio: empty vector");
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double x : v) {
    sum += x;
    sum_sq += x * x;
  }
  if (sum_sq == 0.0) throw domain_error("cauchy_schwarz_ratio: all-zero vector");
  return (sum * sum) / (double(v.size()) * sum_sq);
}

RatioAlpha ratio_to_alpha(double ratio) {
  if (!(ratio >= 0.0 && ratio <= 1.0)) {
    throw domain_error("ratio_to_alpha: ratio must lie in [0, 1], got " + format_double(ratio));
  }
  double alpha = std::sqrt(ratio);
  return RatioAlpha{alpha, std::acos(alpha)};
}

StabilityReport make_stability_report(double x_min, double x_max, int n_samples) {
  if (!(x_max > x_min)) {
    throw domain_error("stability report: need x_max > x_min");
  }
  if (n_samples < 2) throw domain_error("stability report: need at least 2 samples");
  StabilityReport report;
  report.samples.reserve(std::size_t(n_samples));
  for (int i = 0; i < n_samples; ++i) {
    double x = x_min + (x_max - x_min) * double(i) / double(n_samples - 1);
    report.samples.push_back({x, lhs_ratio(x)});
  }
  report.critical_points = critical_points();
  report.stable_intervals = stable_intervals();
  report.alpha_lo = std::sqrt(0.5);
  report.alpha_hi = std::sqrt(0.75);
  return report;
}

}  // namespace qnash
