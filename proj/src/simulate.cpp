#include "parking/simulate.hpp"

#include <stdexcept>

namespace parking {

namespace {
constexpr long kMaxCandidates = 10'000'000;
}

PathObservation sample_path(const IntensityModel& model, double threshold, RngStream& rng) {
  if (!(threshold >= model.env().street_start() && threshold <= 0.0)) {
    throw std::domain_error("threshold must lie in [S, 0]");
  }
  const double dominating_rate = model.env().class_bound();
  PathObservation obs;
  obs.threshold = threshold;

  double position = model.env().street_start();
  for (long candidates = 0; candidates < kMaxCandidates; ++candidates) {
    position += rng.exponential(dominating_rate);
    const double accept = rng.uniform01();
    if (accept * dominating_rate < model.evaluate(position)) {
      obs.jump_positions.push_back(position);
      if (position > threshold) {
        obs.stop_position = position;
        return obs;
      }
    }
  }
  throw std::runtime_error("thinning candidate cap exceeded; simulation is misconfigured");
}

double sample_tau0(const IntensityModel& model, RngStream& rng) {
  return sample_path(model, 0.0, rng).stop_position;
}

}  // namespace parking
