#pragma once

#include <vector>

namespace qnash {

// Affinely rescaled times: first element exactly 0, last exactly 1, strictly
// increasing in between. source_min and source_max keep the original range.
struct NormalizedTimes {
  std::vector<double> values;
  double source_min = 0.0;
  double source_max = 0.0;
};

struct BisectorGeometry {
  std::vector<double> t_vec;
  std::vector<double> r_vec;
  std::vector<double> m_vec;  // unit angular bisector of t_vec and r_vec
  double cos_sq = 0.0;        // cos^2 of the angle between t_vec and m_vec
};

// (t_i - t_1) / (t_N - t_1). Equal endpoints are degenerate; anything not
// strictly increasing is rejected.
NormalizedTimes normalize_times(const std::vector<double>& times);

// largest gap between consecutive normalized values; 1/(n-1) for uniform input
double density_gap(const NormalizedTimes& times);

// normalize(t/|t| + r/|r|), the direction subtending equal angles to both
std::vector<double> angular_bisector(const std::vector<double>& t_vec,
                                     const std::vector<double>& r_vec);

// (t . m)^2 / ((t . t)(m . m)), clamped into [0, 1] against rounding
double cos_sq_theta(const std::vector<double>& t_vec, const std::vector<double>& m_vec);

// arccos : [0, 1] -> [0, pi/2], radians; inverse below. Degrees exist only at
// the CLI surface.
double alpha_to_theta(double alpha);
double theta_to_alpha(double theta);

BisectorGeometry bisector_geometry(const std::vector<double>& t_vec,
                                   const std::vector<double>& r_vec);

}  // namespace qnash
