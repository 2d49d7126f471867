#include "qnash/geometry.hpp"

#include <cmath>
#include <numbers>

#include "qnash/errors.hpp"
#include "qnash/format.hpp"

namespace qnash {

namespace {

double norm(const std::vector<double>& v) {
  double sum = 0.0;
  for (double x : v) sum += x * x;
  return std::sqrt(sum);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

void check_pair(const std::vector<double>& a, const std::vector<double>& b, const char* who) {
  if (a.empty() || b.empty()) {
    throw zero_vector_error(std::string(who) + ": empty vector");
  }
  if (a.size() != b.size()) {
    throw domain_error(std::string(who) + ": dimension mismatch, " +
                       format_int(std::int64_t(a.size())) + " vs " +
                       format_int(std::int64_t(b.size())));
  }
}

}  // namespace

NormalizedTimes normalize_times(const std::vector<double>& times) {
  if (times.size() < 2) {
    throw too_short_error("normalize_times: need at least 2 times");
  }
  double lo = times.front();
  double hi = times.back();
  // equal endpoints are reported as degenerate even when also unsorted
  if (hi == lo) throw degenerate_range_error("normalize_times: first and last times are equal");
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) {
      throw not_sorted_error("normalize_times: times must be strictly increasing");
    }
  }
  double range = hi - lo;
  NormalizedTimes out;
  out.source_min = lo;
  out.source_max = hi;
  out.values.reserve(times.size());
  for (double t : times) out.values.push_back((t - lo) / range);
  return out;
}

double density_gap(const NormalizedTimes& times) {
  if (times.values.size() < 2) {
    throw too_short_error("density_gap: need at least 2 normalized times");
  }
  double max_gap = 0.0;
  for (std::size_t i = 1; i < times.values.size(); ++i) {
    max_gap = std::max(max_gap, times.values[i] - times.values[i - 1]);
  }
  return max_gap;
}

std::vector<double> angular_bisector(const std::vector<double>& t_vec,
                                     const std::vector<double>& r_vec) {
  check_pair(t_vec, r_vec, "angular_bisector");
  double nt = norm(t_vec);
  double nr = norm(r_vec);
  if (nt == 0.0 || nr == 0.0) {
    throw zero_vector_error("angular_bisector: zero input vector");
  }
  std::vector<double> m(t_vec.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = t_vec[i] / nt + r_vec[i] / nr;
  double nm = norm(m);
  if (nm == 0.0) {
    throw zero_vector_error("angular_bisector: inputs are exactly opposed");
  }
  for (double& x : m) x /= nm;
  return m;
}

double cos_sq_theta(const std::vector<double>& t_vec, const std::vector<double>& m_vec) {
  check_pair(t_vec, m_vec, "cos_sq_theta");
  double tt = dot(t_vec, t_vec);
  double mm = dot(m_vec, m_vec);
  if (tt == 0.0 || mm == 0.0) {
    throw zero_vector_error("cos_sq_theta: zero input vector");
  }
  double d = dot(t_vec, m_vec);
  double c = (d * d) / (tt * mm);
  // Cauchy-Schwarz bounds the true value by 1; trim rounding overshoot
  return c > 1.0 ? 1.0 : c;
}

double alpha_to_theta(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw domain_error("alpha_to_theta: alpha must lie in [0, 1], got " + format_double(alpha));
  }
  return std::acos(alpha);
}

double theta_to_alpha(double theta) {
  constexpr double half_pi = std::numbers::pi / 2.0;
  if (!(theta >= 0.0 && theta <= half_pi)) {
    throw domain_error("theta_to_alpha: theta must lie in [0, pi/2], got " +
                       format_double(theta));
  }
  return std::cos(theta);
}

BisectorGeometry bisector_geometry(const std::vector<double>& t_vec,
                                   const std::vector<double>& r_vec) {
  BisectorGeometry g;
  g.t_vec = t_vec;
  g.r_vec = r_vec;
  g.m_vec = angular_bisector(t_vec, r_vec);
  g.cos_sq = cos_sq_theta(t_vec, g.m_vec);
  return g;
}

}  // namespace qnash
