#pragma once

#include <optional>

#include "parking/intensity.hpp"

namespace parking {

struct Tolerances {
  double quad_tol = 1e-10;          // absolute quadrature tolerance
  double root_tol = 1e-10;          // balance-equation residual tolerance
  double tail_tol = 1e-12;          // truncation bound for integrals to infinity
  double indifference_tol = 1e-6;   // |b*| vs E|tau_{b*}| agreement
};

struct OracleResult {
  double threshold = 0.0;      // b*, the optimal threshold in (S, 0)
  double expected_cost = 0.0;  // E|tau_{b*}|
  double tail_mean = 0.0;      // E(tau_0), expected first jump after the target
  double residual = 0.0;       // balance-equation residual at the returned root
};

// E(tau_0) = int_0^inf exp(-A(y)) dy. The horizon is doubled until the analytic
// tail bound exp(-L_low Y)/L_low drops below tail_tol.
double tail_mean(const IntensityModel& model, const Tolerances& tol = {});

// E|tau_b| = -int_b^0 y lambda(y) e^{-(A(y)-A(b))} dy + int_0^inf y lambda(y)
// e^{-(A(y)-A(b))} dy, with the same horizon-doubling truncation policy.
double expected_cost(const IntensityModel& model, double threshold,
                     const Tolerances& tol = {});

// Solves int_{b}^0 e^{Lambda(y)} dy = E(tau_0) by bisection; the left side is
// strictly decreasing in b, so the root is unique. A missing interior root means
// the model violates the class contract and raises an error rather than clamping.
OracleResult optimal_threshold(const IntensityModel& model, const Tolerances& tol = {});

// Optimality-gap oracle with the solved threshold cached; gap evaluations for
// constant intensities use the closed form (1/l)(2 e^{l b} - 1) - b - ln(2)/l.
class GapOracle {
 public:
  explicit GapOracle(const IntensityModel& model, Tolerances tol = {});

  // Delta(b) >= 0; values within 2(root_tol + quad_tol) of zero are clamped to 0
  // so regret sums cannot accumulate negative noise.
  double gap(double threshold) const;

  // Delta''(b) assembled from the two-bracket identity
  //   Delta''(b) = lambda'(b) [b + E|tau_b|] + lambda(b) [1 + lambda(b)(b + E|tau_b|)],
  // where the brackets' integrals are the expected-cost quadratures.
  double gap_second_derivative(double threshold) const;

  // sup over a dense grid (step 1e-3 |S|) of Delta'' on [S, 0].
  double sup_gap_second_derivative() const;

  const OracleResult& solution() const { return solution_; }
  const IntensityModel& model() const { return model_; }
  const Tolerances& tolerances() const { return tol_; }

 private:
  IntensityModel model_;
  Tolerances tol_;
  OracleResult solution_;
  std::optional<double> constant_level_;
};

double optimality_gap(const IntensityModel& model, double threshold,
                      const Tolerances& tol = {});
double gap_second_derivative(const IntensityModel& model, double threshold,
                             const Tolerances& tol = {});
double sup_gap_second_derivative(const IntensityModel& model, const Tolerances& tol = {});

// Certified upper bound on sup over the whole class M(L) of sup_b Delta''(b),
// obtained by maximizing the two brackets term by term with lambda, |lambda'| <= L
// and the integrals bounded through L and |S|. An over-estimate by construction.
double class_second_derivative_bound(const EnvironmentParams& env);

// Smallest optimal threshold over the class, -ln(2)/L_low.
double min_optimal_threshold(const EnvironmentParams& env);

}  // namespace parking
