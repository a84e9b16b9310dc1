#include "parking/ilu.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace parking {

double solve_indifference_threshold(std::span<const double> pooled_ascending,
                                    int record_count, double phi, double street_start) {
  if (record_count < 1) {
    throw std::invalid_argument("empty record set");
  }
  const double m = static_cast<double>(record_count);
  double right = 0.0;   // right end of the current segment
  double mass = 0.0;    // integral accumulated on [right, 0]
  long level_index = 0; // pooled jumps strictly above the current segment

  // Walk segments leftward from 0; breakpoints are the pooled jumps in descending
  // order. Ties produce zero-width segments and contribute nothing.
  for (auto it = pooled_ascending.rbegin(); it != pooled_ascending.rend(); ++it) {
    const double left = *it;
    const double level = std::exp(static_cast<double>(level_index) / m);
    const double segment = (right - left) * level;
    if (mass + segment >= phi) {
      return right - (phi - mass) / level;
    }
    mass += segment;
    right = left;
    ++level_index;
  }
  const double level = std::exp(static_cast<double>(level_index) / m);
  const double segment = (right - street_start) * level;
  if (mass + segment >= phi) {
    return right - (phi - mass) / level;
  }
  return street_start;  // no solution in [S, 0]
}

double empirical_balance_integral(std::span<const double> pooled_ascending,
                                  int record_count, double b) {
  if (record_count < 1) {
    throw std::invalid_argument("empty record set");
  }
  if (!(b <= 0.0)) {
    throw std::domain_error("balance integral is evaluated on [S, 0]");
  }
  const double m = static_cast<double>(record_count);
  double right = 0.0;
  double mass = 0.0;
  long level_index = 0;
  for (auto it = pooled_ascending.rbegin(); it != pooled_ascending.rend(); ++it) {
    const double left = *it;
    const double level = std::exp(static_cast<double>(level_index) / m);
    if (left <= b) {
      return mass + (right - b) * level;
    }
    mass += (right - left) * level;
    right = left;
    ++level_index;
  }
  return mass + (right - b) * std::exp(static_cast<double>(level_index) / m);
}

void IluState::require_records() const {
  if (records_.empty()) {
    throw std::logic_error("learner has no full-information records yet");
  }
}

double IluState::gamma_hat(double y) const {
  require_records();
  const auto above = pooled_.end() - std::upper_bound(pooled_.begin(), pooled_.end(), y);
  return static_cast<double>(above) / static_cast<double>(records_.size());
}

double IluState::phi_hat() const {
  require_records();
  return tau0_sum_ / static_cast<double>(records_.size());
}

double IluState::solve_threshold(double street_start) const {
  require_records();
  if (cache_valid_ && cached_street_start_ == street_start) {
    return cached_threshold_;
  }
  cached_threshold_ = solve_indifference_threshold(
      pooled_, static_cast<int>(records_.size()), phi_hat(), street_start);
  cached_street_start_ = street_start;
  cache_valid_ = true;
  return cached_threshold_;
}

double IluState::next_threshold(double street_start) const {
  return round_ == 0 ? 0.0 : solve_threshold(street_start);
}

IluState::StepResult IluState::step(const IntensityModel& model, RngStream& rng) {
  return step_at(model, rng, next_threshold(model.env().street_start()));
}

IluState::StepResult IluState::step_at(const IntensityModel& model, RngStream& rng,
                                       double threshold) {
  StepResult result;
  result.threshold = threshold;
  result.observation = sample_path(model, threshold, rng);
  result.full_information = result.observation.stop_position > 0.0;
  if (result.full_information) {
    append_record(make_full_info_record(result.observation));
  }
  ++round_;
  last_threshold_ = threshold;
  return result;
}

void IluState::append_record(FullInfoRecord record) {
  if (!(record.tau0 > 0.0)) {
    throw std::invalid_argument("full-information record requires tau0 > 0");
  }
  const auto old_size = pooled_.size();
  pooled_.insert(pooled_.end(), record.jumps_in_window.begin(),
                 record.jumps_in_window.end());
  std::inplace_merge(pooled_.begin(), pooled_.begin() + static_cast<long>(old_size),
                     pooled_.end());
  tau0_sum_ += record.tau0;
  records_.push_back(std::move(record));
  cache_valid_ = false;
}

double full_info_threshold(std::span<const FullInfoRecord> records, double street_start) {
  if (records.empty()) {
    return 0.0;
  }
  std::vector<double> pooled;
  double tau0_sum = 0.0;
  for (const auto& rec : records) {
    pooled.insert(pooled.end(), rec.jumps_in_window.begin(), rec.jumps_in_window.end());
    tau0_sum += rec.tau0;
  }
  std::sort(pooled.begin(), pooled.end());
  const int n = static_cast<int>(records.size());
  return solve_indifference_threshold(pooled, n, tau0_sum / n, street_start);
}

FullInfoRecord make_full_info_record(const PathObservation& obs) {
  if (!(obs.stop_position > 0.0)) {
    throw std::invalid_argument("observation did not stop after the target");
  }
  FullInfoRecord record;
  record.tau0 = obs.stop_position;
  for (double jump : obs.jump_positions) {
    if (jump <= 0.0) {
      record.jumps_in_window.push_back(jump);
    }
  }
  return record;
}

double cutoff_clamp(double threshold, const EnvironmentParams& env) {
  return std::min(threshold, -std::log(2.0) / env.class_bound());
}

}  // namespace parking
