#pragma once

#include <functional>
#include <vector>

namespace qnash {

struct NashEstimate {
  double alpha_star = 0.0;
  double epsilon = 0.0;  // |n1 - n2| at alpha_star
  double n1_at_star = 0.0;
  double n2_at_star = 0.0;
};

// window is a trailing episode count; 0 accumulates over the whole history.
struct AlphaSchedule {
  double alpha_0 = 0.5;
  double alpha_min = 0.0;
  double alpha_max = 1.0;
  int window = 0;
};

void validate_schedule(const AlphaSchedule& schedule);

// alpha = sqrt(n2), the Nash equilibrium rate; domain [0, 1]
double nash_alpha(double n2);
// same mapping, spelled for the constant relative reward special case
double constant_reward_alpha(double rt);

// {i / subdivisions : i = 0..subdivisions}; halving the step refines to a
// pointwise superset, which keeps the search epsilon monotone under refinement
std::vector<double> make_alpha_grid(int subdivisions);

// Scans the diagonal n1(a) = n2(a) for the smallest gap |n1 - n2| over the
// grid. All gaps are gathered before reducing so the result is independent of
// evaluation order; ties go to the smaller alpha.
NashEstimate epsilon_nash_search(const std::function<double(double)>& n1_fn,
                                 const std::function<double(double)>& n2_fn,
                                 const std::vector<double>& grid);

// Clamped sqrt of trailing-window n2 over completed-episode reward history;
// alpha_0 while no episode has produced a relative reward yet. Never throws
// on degenerate episodes, they simply contribute nothing.
double adaptive_alpha(const AlphaSchedule& schedule,
                      const std::vector<std::vector<double>>& history);

}  // namespace qnash
