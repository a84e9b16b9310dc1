#pragma once

#include <span>
#include <vector>

#include "parking/simulate.hpp"

namespace parking {

// Data from one full-information round: the round stopped strictly after the
// target, so the whole street window and the first lot after the target were seen.
struct FullInfoRecord {
  std::vector<double> jumps_in_window;  // strictly increasing, in (S, 0]
  double tau0 = 0.0;                    // > 0
};

// Exact inversion of the empirical balance equation
//   int_b^0 exp(gamma_hat(y)) dy = phi.
// gamma_hat is a step function with levels k/m between pooled order statistics, so
// the integral is piecewise linear in b and the root solves in closed form inside
// its segment. Returns street_start when the accumulated mass cannot reach phi.
double solve_indifference_threshold(std::span<const double> pooled_ascending,
                                    int record_count, double phi, double street_start);

// int_b^0 exp(gamma_hat(y)) dy for the pooled step estimate; diagnostic companion
// to the solver above.
double empirical_balance_integral(std::span<const double> pooled_ascending,
                                  int record_count, double b);

// The learner's accumulated full-information rounds. Single-owner mutable; queries
// are read-only snapshots.
class IluState {
 public:
  // Mean count of recorded jumps in (y, 0]; nonincreasing and right-continuous in y
  // with gamma_hat(0) = 0. Requires at least one record.
  double gamma_hat(double y) const;

  // Mean recorded first-jump position after the target; strictly positive.
  // Requires at least one record.
  double phi_hat() const;

  // Empirical indifference threshold in [street_start, 0].
  double solve_threshold(double street_start) const;

  // Threshold the learner plays next: 0 in round 0, the solved threshold afterwards.
  double next_threshold(double street_start) const;

  struct StepResult {
    double threshold = 0.0;
    PathObservation observation;
    bool full_information = false;
  };

  // One learning round: choose the threshold, sample a path at it, and append the
  // round's window and tau0 to the records when the stop fell after the target.
  StepResult step(const IntensityModel& model, RngStream& rng);

  // Same, but plays an externally chosen threshold (used by clamped policies).
  StepResult step_at(const IntensityModel& model, RngStream& rng, double threshold);

  void append_record(FullInfoRecord record);

  const std::vector<FullInfoRecord>& records() const { return records_; }
  std::span<const double> pooled_jumps() const { return pooled_; }
  int round() const { return round_; }
  double last_threshold() const { return last_threshold_; }

 private:
  void require_records() const;

  std::vector<FullInfoRecord> records_;
  std::vector<double> pooled_;  // all recorded window jumps, ascending
  double tau0_sum_ = 0.0;
  int round_ = 0;
  double last_threshold_ = 0.0;
  mutable double cached_threshold_ = 0.0;
  mutable double cached_street_start_ = 1.0;  // invalid sentinel (S < 0 always)
  mutable bool cache_valid_ = false;
};

// The always-full-information estimator sequence: threshold from n complete
// records, with the round-0 convention of threshold 0 for an empty list.
double full_info_threshold(std::span<const FullInfoRecord> records, double street_start);

// Builds a record from an observation that stopped after the target.
FullInfoRecord make_full_info_record(const PathObservation& obs);

// Cut-off clamp x -> min(x, -ln(2)/L); exposed for policy diagnostics.
double cutoff_clamp(double threshold, const EnvironmentParams& env);

}  // namespace parking
