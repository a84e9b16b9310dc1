#pragma once

#include <vector>

#include "parking/intensity.hpp"
#include "parking/rng.hpp"

namespace parking {

// One stopped observation: every free-lot position seen while driving, up to and
// including the stop (the first accepted jump strictly after the threshold).
struct PathObservation {
  std::vector<double> jump_positions;  // strictly increasing; last element is the stop
  double stop_position = 0.0;
  double threshold = 0.0;
};

// Exact simulation by thinning: candidate gaps are Exponential(L) from a dominating
// homogeneous process, each accepted with probability lambda(candidate)/L. Requires a
// validated model (lambda <= L everywhere), otherwise acceptance probabilities are
// not probabilities. Terminates almost surely; a defensive candidate cap converts
// logic bugs into loud failures.
PathObservation sample_path(const IntensityModel& model, double threshold, RngStream& rng);

// First free lot strictly after the target; distributed with survival function
// P(tau_0 > t) = exp(-A(t)).
double sample_tau0(const IntensityModel& model, RngStream& rng);

}  // namespace parking
