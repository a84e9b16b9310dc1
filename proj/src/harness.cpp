#include "parking/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace parking {

namespace {

int resolve_jobs(int jobs) {
  if (jobs > 0) return jobs;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Index-parallel loop; work items write only to their own slots, so scheduling
// order never affects results.
void parallel_for(int count, int jobs, const std::function<void(int)>& body) {
  jobs = std::min(resolve_jobs(jobs), count);
  if (jobs <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(jobs));
  for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

struct ReplicationTrace {
  std::vector<double> gaps;
  std::vector<int> info_counts;
  std::vector<int> waits;
};

ReplicationTrace run_replication(const ExperimentConfig& cfg, const GapOracle& oracle,
                                 int replication) {
  const double street_start = cfg.model.env().street_start();
  const int rounds = cfg.horizon + 1;
  ReplicationTrace trace;
  trace.gaps.resize(static_cast<std::size_t>(rounds));
  trace.info_counts.resize(static_cast<std::size_t>(rounds));

  IluState state;
  int full_rounds = 0;
  int last_full = -1;
  for (int n = 0; n < rounds; ++n) {
    double threshold = 0.0;
    switch (cfg.policy.kind) {
      case PolicyKind::kIlu:
        threshold = state.next_threshold(street_start);
        break;
      case PolicyKind::kCutoffIlu:
        threshold = cutoff_clamp(state.next_threshold(street_start), cfg.model.env());
        break;
      case PolicyKind::kFullInfo:
        threshold = full_rounds == 0 ? 0.0 : state.solve_threshold(street_start);
        break;
      case PolicyKind::kFixed:
        threshold = cfg.policy.fixed_threshold;
        break;
    }
    trace.info_counts[static_cast<std::size_t>(n)] =
        cfg.policy.kind == PolicyKind::kFixed ? full_rounds
                                              : static_cast<int>(state.records().size());
    trace.gaps[static_cast<std::size_t>(n)] = oracle.gap(threshold);

    RngStream rng(cfg.master_seed, static_cast<std::uint64_t>(replication),
                  static_cast<std::uint64_t>(n));
    bool full_information = false;
    switch (cfg.policy.kind) {
      case PolicyKind::kIlu:
      case PolicyKind::kCutoffIlu:
        full_information = state.step_at(cfg.model, rng, threshold).full_information;
        break;
      case PolicyKind::kFullInfo:
        // The full-information protocol observes the window up to the first jump
        // after the target every round, whatever threshold was scored.
        full_information = state.step_at(cfg.model, rng, 0.0).full_information;
        break;
      case PolicyKind::kFixed:
        full_information = sample_path(cfg.model, threshold, rng).stop_position > 0.0;
        break;
    }
    if (full_information) {
      ++full_rounds;
      if (last_full >= 0) trace.waits.push_back(n - last_full);
      last_full = n;
    }
  }
  return trace;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  if (cfg.horizon < 1) throw std::invalid_argument("experiment horizon must be >= 1");
  if (cfg.replications < 1) throw std::invalid_argument("replication count must be >= 1");
  if (cfg.policy.kind == PolicyKind::kFixed) {
    const double b = cfg.policy.fixed_threshold;
    if (!(b >= cfg.model.env().street_start() && b <= 0.0)) {
      throw std::invalid_argument("fixed policy threshold must lie in [S, 0]");
    }
  }
  const auto report = validate_class(cfg.model);
  if (!report.pass) {
    throw std::invalid_argument("intensity model is not a class member: " +
                                report.violated_property);
  }

  const GapOracle oracle(cfg.model, cfg.tol);
  const int reps = cfg.replications;
  const int rounds = cfg.horizon + 1;
  std::vector<ReplicationTrace> traces(static_cast<std::size_t>(reps));
  parallel_for(reps, cfg.jobs, [&](int rep) {
    traces[static_cast<std::size_t>(rep)] = run_replication(cfg, oracle, rep);
  });

  ExperimentResult result;
  result.curve.mean_gap.resize(static_cast<std::size_t>(rounds));
  result.curve.se.resize(static_cast<std::size_t>(rounds));
  result.curve.cumulative.resize(static_cast<std::size_t>(rounds));
  result.diagnostics.mean_records.resize(static_cast<std::size_t>(rounds));

  double running = 0.0;
  for (int n = 0; n < rounds; ++n) {
    const auto idx = static_cast<std::size_t>(n);
    double sum = 0.0;
    double count_sum = 0.0;
    for (const auto& trace : traces) {
      sum += trace.gaps[idx];
      count_sum += trace.info_counts[idx];
    }
    const double mean = sum / reps;
    double sq = 0.0;
    for (const auto& trace : traces) {
      const double d = trace.gaps[idx] - mean;
      sq += d * d;
    }
    result.curve.mean_gap[idx] = mean;
    result.curve.se[idx] =
        reps > 1 ? std::sqrt(sq / (static_cast<double>(reps) * (reps - 1))) : 0.0;
    running += mean;
    result.curve.cumulative[idx] = running;
    result.diagnostics.mean_records[idx] = count_sum / reps;
  }
  for (const auto& trace : traces) {
    for (int w : trace.waits) {
      result.diagnostics.waiting_times.push_back(static_cast<double>(w));
    }
  }
  return result;
}

LogFit fit_log_growth(const RegretCurve& curve) {
  const int horizon = static_cast<int>(curve.cumulative.size()) - 1;
  if (horizon < 100) {
    throw std::invalid_argument("log-growth fit needs a horizon of at least 100 rounds");
  }
  LogFit fit;
  fit.window_lo = std::max(1, horizon / 10);
  fit.window_hi = horizon;

  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
  const double count = fit.window_hi - fit.window_lo + 1;
  for (int n = fit.window_lo; n <= fit.window_hi; ++n) {
    const double x = std::log(static_cast<double>(n) + 1.0);
    const double y = curve.cumulative[static_cast<std::size_t>(n)];
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
  }
  const double var_x = sxx - sx * sx / count;
  const double var_y = syy - sy * sy / count;
  const double cov = sxy - sx * sy / count;
  if (var_y <= 0.0) {
    fit.slope = 0.0;
    fit.intercept = sy / count;
    fit.r_squared = 1.0;  // a constant curve is fit exactly by beta = 0
    return fit;
  }
  fit.slope = cov / var_x;
  fit.intercept = (sy - fit.slope * sx) / count;
  const double ss_res = var_y - fit.slope * cov;
  fit.r_squared = 1.0 - ss_res / var_y;
  return fit;
}

namespace {

struct SweepAccumulator {
  double lambda_sq = 0.0;
  double tau_sq = 0.0;
  double sup_sq = 0.0;
  double bhat_sq = 0.0;
};

// sup over [S, 0] of (Lambda_hat - Lambda)^2 for the pooled step estimate: on each
// step segment the continuous Lambda is monotone, so the extremes sit at segment ends.
double sup_error_squared(const IntensityModel& model, std::span<const double> pooled,
                         int n) {
  const double s = model.env().street_start();
  double right = 0.0;
  double sup_sq = 0.0;
  long level = 0;
  auto consider = [&](double value, double y) {
    const double d = value - model.integrated_to_target(y);
    sup_sq = std::max(sup_sq, d * d);
  };
  for (auto it = pooled.rbegin(); it != pooled.rend(); ++it) {
    const double v = static_cast<double>(level) / n;
    consider(v, right);
    consider(v, *it);
    right = *it;
    ++level;
  }
  const double v = static_cast<double>(level) / n;
  consider(v, right);
  consider(v, s);
  return sup_sq;
}

}  // namespace

std::vector<MseRow> estimator_mse_sweep(const IntensityModel& model,
                                        std::span<const int> n_values, int replications,
                                        std::uint64_t master_seed, const Tolerances& tol,
                                        int jobs) {
  if (n_values.empty()) throw std::invalid_argument("no record-set sizes given");
  if (!std::is_sorted(n_values.begin(), n_values.end())) {
    throw std::invalid_argument("record-set sizes must be ascending");
  }
  if (n_values.front() < 1) throw std::invalid_argument("record-set sizes must be >= 1");
  if (replications < 2) throw std::invalid_argument("sweep needs >= 2 replications");

  const double s = model.env().street_start();
  const double lambda_s = model.integrated_to_target(s);
  const double variance = var_tau0(model, tol);
  const double bound_k = mse_bound_coefficient(model, tol);
  const auto solution = optimal_threshold(model, tol);

  std::vector<MseRow> rows;
  for (std::size_t ni = 0; ni < n_values.size(); ++ni) {
    const int n = n_values[ni];
    std::vector<SweepAccumulator> accumulators(static_cast<std::size_t>(replications));
    parallel_for(replications, jobs, [&](int set) {
      const std::uint64_t stream_rep =
          static_cast<std::uint64_t>(ni) * static_cast<std::uint64_t>(replications) +
          static_cast<std::uint64_t>(set);
      std::vector<double> pooled;
      double tau_sum = 0.0;
      for (int w = 0; w < n; ++w) {
        RngStream rng(master_seed, stream_rep, static_cast<std::uint64_t>(w));
        const auto record = make_full_info_record(sample_path(model, 0.0, rng));
        pooled.insert(pooled.end(), record.jumps_in_window.begin(),
                      record.jumps_in_window.end());
        tau_sum += record.tau0;
      }
      std::sort(pooled.begin(), pooled.end());
      const double lambda_hat_s = static_cast<double>(pooled.size()) / n;
      const double tau_hat = tau_sum / n;
      const double b_hat = solve_indifference_threshold(pooled, n, tau_hat, s);

      auto& acc = accumulators[static_cast<std::size_t>(set)];
      const double dl = lambda_hat_s - lambda_s;
      const double dt = tau_hat - solution.tail_mean;
      const double db = b_hat - solution.threshold;
      acc.lambda_sq = dl * dl;
      acc.tau_sq = dt * dt;
      acc.sup_sq = sup_error_squared(model, pooled, n);
      acc.bhat_sq = db * db;
    });

    SweepAccumulator total;
    for (const auto& acc : accumulators) {
      total.lambda_sq += acc.lambda_sq;
      total.tau_sq += acc.tau_sq;
      total.sup_sq += acc.sup_sq;
      total.bhat_sq += acc.bhat_sq;
    }
    const double r = replications;
    const double nn = n;
    rows.push_back({n, "lambda_hat_S", total.lambda_sq / r, lambda_s / nn,
                    (total.lambda_sq / r) / (lambda_s / nn)});
    rows.push_back({n, "tau0_hat", total.tau_sq / r, variance / nn,
                    (total.tau_sq / r) / (variance / nn)});
    rows.push_back({n, "sup_error", total.sup_sq / r, 4.0 * lambda_s / nn,
                    (total.sup_sq / r) / (4.0 * lambda_s / nn)});
    rows.push_back({n, "b_hat", total.bhat_sq / r, bound_k / nn,
                    (total.bhat_sq / r) / (bound_k / nn)});
  }
  return rows;
}

BruteForceResult brute_force_threshold(const IntensityModel& model, double grid_step,
                                       int paths_per_point, std::uint64_t master_seed,
                                       int jobs) {
  if (!(grid_step > 0.0)) throw std::invalid_argument("grid step must be positive");
  if (paths_per_point < 2) throw std::invalid_argument("need >= 2 paths per grid point");

  const double s = model.env().street_start();
  std::vector<double> grid;
  for (double b = s; b < -0.5 * grid_step; b += grid_step) grid.push_back(b);
  grid.push_back(0.0);

  BruteForceResult result;
  result.grid.resize(grid.size());
  parallel_for(static_cast<int>(grid.size()), jobs, [&](int i) {
    const double b = grid[static_cast<std::size_t>(i)];
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int p = 0; p < paths_per_point; ++p) {
      // Streams are keyed by path only, so every grid point scores the same
      // underlying point-process realizations; the argmin then depends on true
      // cost differences rather than per-point sampling noise.
      RngStream rng(master_seed, static_cast<std::uint64_t>(p), 0);
      const double cost = std::abs(sample_path(model, b, rng).stop_position);
      sum += cost;
      sum_sq += cost * cost;
    }
    const double mean = sum / paths_per_point;
    const double var =
        std::max(0.0, (sum_sq - sum * sum / paths_per_point) / (paths_per_point - 1));
    result.grid[static_cast<std::size_t>(i)] = {b, mean,
                                                std::sqrt(var / paths_per_point)};
  });

  std::size_t best = 0;
  for (std::size_t i = 1; i < result.grid.size(); ++i) {
    if (result.grid[i].mean_cost < result.grid[best].mean_cost) best = i;
  }
  result.best = result.grid[best];
  result.ci_halfwidth = 3.0 * result.best.se;
  return result;
}

WaitingTimeCheck waiting_time_check(const FullInfoDiagnostics& diagnostics,
                                    const EnvironmentParams& env) {
  const auto& samples = diagnostics.waiting_times;
  if (samples.size() < 100) {
    throw std::invalid_argument("waiting-time check needs at least 100 samples");
  }
  double sum = 0.0;
  for (double w : samples) sum += w;
  const double mean = sum / static_cast<double>(samples.size());
  double sq = 0.0;
  for (double w : samples) sq += (w - mean) * (w - mean);
  const double se =
      std::sqrt(sq / (static_cast<double>(samples.size()) *
                      (static_cast<double>(samples.size()) - 1.0)));

  WaitingTimeCheck check;
  check.empirical_mean = mean;
  check.ci_halfwidth = 3.0 * se;
  check.bound = std::exp(env.class_bound() * env.abs_street_start());
  check.samples = samples.size();
  check.pass = mean <= check.bound + check.ci_halfwidth;
  return check;
}

}  // namespace parking
