#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "parking/bounds.hpp"
#include "parking/ilu.hpp"
#include "parking/oracle.hpp"

namespace parking {

enum class PolicyKind {
  kIlu,        // online learner; updates only on rounds that stop after the target
  kFullInfo,   // estimator sequence fed a complete window every round
  kFixed,      // constant threshold
  kCutoffIlu,  // learner threshold clamped to min(x, -ln(2)/L)
};

struct PolicySpec {
  PolicyKind kind = PolicyKind::kIlu;
  double fixed_threshold = 0.0;  // only for kFixed
};

struct ExperimentConfig {
  IntensityModel model;
  PolicySpec policy;
  int horizon = 100;        // rounds 0..horizon inclusive
  int replications = 10;
  std::uint64_t master_seed = 1;
  Tolerances tol;
  int jobs = 0;             // 0 -> hardware concurrency
};

// Per-round expected optimality gaps, averaged over replications, plus their
// cumulative sums (the regret curve).
struct RegretCurve {
  std::vector<double> mean_gap;
  std::vector<double> se;
  std::vector<double> cumulative;
};

struct FullInfoDiagnostics {
  std::vector<double> mean_records;    // mean |I_n| per round
  std::vector<double> waiting_times;   // pooled sigma(j+1) - sigma(j) samples, >= 1
};

struct ExperimentResult {
  RegretCurve curve;
  FullInfoDiagnostics diagnostics;
};

// Runs the policy for horizon+1 rounds per replication. Each round's realized
// threshold is scored with the exact optimality-gap oracle before the round's path
// is sampled, so the curve estimates E[Delta(pi_n)] with variance only from the
// policy's own randomness. Deterministic given the master seed, independent of the
// worker count.
ExperimentResult run_experiment(const ExperimentConfig& config);

struct LogFit {
  double intercept = 0.0;
  double slope = 0.0;
  double r_squared = 0.0;
  int window_lo = 0;
  int window_hi = 0;
};

// Least squares of cumulative(T') on ln(T'+1) over T' in [T/10, T].
LogFit fit_log_growth(const RegretCurve& curve);

struct MseRow {
  int n = 0;
  std::string quantity;
  double empirical = 0.0;
  double theory = 0.0;  // exact value for the unbiased estimators, bound otherwise
  double ratio = 0.0;
};

// Empirical MSE of the integrated-intensity estimator at S, the tail-mean
// estimator, the sup-norm error, and the estimated threshold, against their
// theoretical rates, over synthetic full-information record sets.
std::vector<MseRow> estimator_mse_sweep(const IntensityModel& model,
                                        std::span<const int> n_values, int replications,
                                        std::uint64_t master_seed,
                                        const Tolerances& tol = {}, int jobs = 0);

struct BruteForcePoint {
  double threshold = 0.0;
  double mean_cost = 0.0;
  double se = 0.0;
};

struct BruteForceResult {
  BruteForcePoint best;
  double ci_halfwidth = 0.0;  // 3 standard errors at the argmin
  std::vector<BruteForcePoint> grid;
};

// Independent of the quadrature oracle: estimates E|tau_b| by Monte Carlo on a
// grid over [S, 0] and returns the argmin.
BruteForceResult brute_force_threshold(const IntensityModel& model, double grid_step,
                                       int paths_per_point, std::uint64_t master_seed,
                                       int jobs = 0);

struct WaitingTimeCheck {
  double empirical_mean = 0.0;
  double ci_halfwidth = 0.0;  // 3 standard errors
  double bound = 0.0;         // e^{L |S|}
  bool pass = false;
  std::size_t samples = 0;
};

// Compares the mean waiting time between full-information rounds against the
// theoretical bound; the bound is loose, so a failure indicates a simulation bug.
WaitingTimeCheck waiting_time_check(const FullInfoDiagnostics& diagnostics,
                                    const EnvironmentParams& env);

}  // namespace parking
