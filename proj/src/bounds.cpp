#include "parking/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "parking/quadrature.hpp"

namespace parking {

double var_tau0(const IntensityModel& model, const Tolerances& tol) {
  const double l_low = model.env().lower_intensity();
  // Second moment E(tau_0^2) = 2 int_0^inf u e^{-A(u)} du; tail of the truncated
  // integrand is below 2 e^{-L_low Y} (Y/L_low + 1/L_low^2).
  double horizon = 8.0 / l_low;
  while (2.0 * std::exp(-l_low * horizon) * (horizon / l_low + 1.0 / (l_low * l_low)) >=
         tol.tail_tol) {
    horizon *= 2.0;
  }
  const double second_moment = adaptive_simpson(
      [&model](double u) { return 2.0 * u * std::exp(-model.cumulative(u)); }, 0.0,
      horizon, tol.quad_tol);
  const double mean = tail_mean(model, tol);
  return second_moment - mean * mean;
}

int proposition_grid_count(const EnvironmentParams& env) {
  const double s = env.street_start();
  const double half_step = 1.0 / (2.0 * env.class_bound());
  int m = 0;
  while (s + m * half_step < 0.0) ++m;
  return m;
}

double proposition_epsilon(const IntensityModel& model, const OracleResult& solution) {
  const double mean = solution.tail_mean;
  const double spread = (solution.threshold - model.env().street_start()) /
                        (3.0 + 2.0 * mean);
  return 0.5 * std::min({mean, 1.0, spread});
}

double mse_bound_coefficient(const IntensityModel& model, const Tolerances& tol) {
  const auto solution = optimal_threshold(model, tol);
  const double s = model.env().street_start();
  const double s2 = s * s;
  const double abs_s = model.env().abs_street_start();
  const double lambda_s = model.integrated_to_target(s);
  const double variance = var_tau0(model, tol);
  const double eps = proposition_epsilon(model, solution);
  const int m = proposition_grid_count(model.env());
  const double exp_integral = adaptive_simpson(
      [&model](double y) {
        const double big_lambda = model.integrated_to_target(y);
        return std::exp(2.0 * big_lambda) * big_lambda;
      },
      s, 0.0, tol.quad_tol);
  return s2 * (4.0 * lambda_s + variance) / (eps * eps) +
         s2 * 4.0 * lambda_s * (m + 1) + 2.0 * variance + 8.0 * abs_s * exp_integral;
}

double class_gap_constant_D(const EnvironmentParams& env) {
  const double l = env.class_bound();
  const double l_low = env.lower_intensity();
  const double abs_s = env.abs_street_start();
  const double s2 = abs_s * abs_s;
  // Class-uniform replacements: Lambda(S) <= L|S|, Var(tau_0) <= 2/L_low^2,
  // E(tau_0) >= 1/L, b* - S >= |S| - ln(2)/L_low, M + 1 <= 2|S|L + 2, and
  // int_S^0 e^{2 Lambda} Lambda dy <= |S| L |S| e^{2 L |S|}.
  const double var_bound = 2.0 / (l_low * l_low);
  const double eps = std::min(1.0 / l, (abs_s - std::log(2.0) / l_low) /
                                           (3.0 + 2.0 / l_low));
  return s2 * (4.0 * l * abs_s + var_bound) / (eps * eps) +
         2.0 * var_bound + 8.0 * s2 * abs_s * l * std::exp(2.0 * abs_s * l) +
         s2 * abs_s * 4.0 * l * (2.0 * abs_s * l + 2.0);
}

double upper_bound_constant(const EnvironmentParams& env) {
  const double l_low = env.lower_intensity();
  const double wait_bound = std::exp(env.class_bound() * env.abs_street_start());
  return 1.0 / (l_low * std::log(2.0)) +
         wait_bound * 0.5 * class_second_derivative_bound(env) * class_gap_constant_D(env);
}

double regret_upper_bound(const EnvironmentParams& env, int rounds) {
  return upper_bound_constant(env) * std::log(static_cast<double>(rounds) + 1.0);
}

LowerBoundConstants lower_bound_constants(const EnvironmentParams& env) {
  const double s = env.street_start();
  const double a0 = env.lower_intensity();
  const double b0 = env.class_bound();
  if (!(a0 < b0)) {
    throw std::invalid_argument("constant-intensity class is empty");
  }
  // inf over lambda in [a0, b0], x in [S, 0] of 2 lambda e^{lambda x}: the inner inf
  // sits at x = S; over lambda the map is unimodal with an interior maximum at
  // lambda = 1/|S|, so the infimum is at an endpoint.
  double c = std::min(2.0 * a0 * std::exp(a0 * s), 2.0 * b0 * std::exp(b0 * s));
  const double stationary = 1.0 / env.abs_street_start();
  if (stationary > a0 && stationary < b0) {
    c = std::min(c, 2.0 * stationary * std::exp(stationary * s));
  }

  LowerBoundConstants out;
  out.c = c;
  out.c_tilde = c * std::log(2.0) / (b0 * b0);
  // Van Trees step in rescaled units: the per-round sufficient statistic is
  // Poisson(lambda |S|), so the prior lives on [|S| a0, |S| b0].
  out.a = env.abs_street_start() * a0;
  out.b = env.abs_street_start() * b0;
  out.I_q = 40.0 / ((out.b - out.a) * (out.b - out.a));
  out.fisher_unit = 1.0 / out.a;
  out.C_prime = 1.0 / (out.I_q + out.fisher_unit);
  out.C_lower = out.c_tilde * out.C_prime / (s * s);
  return out;
}

double minimax_lower_bound(const EnvironmentParams& env, int rounds) {
  return lower_bound_constants(env).C_lower * std::log(static_cast<double>(rounds));
}

double beta_prior_density(double x, double a, double b) {
  if (x < a || x > b) return 0.0;
  const double w = b - a;
  return 30.0 * (x - a) * (x - a) * (b - x) * (b - x) / (w * w * w * w * w);
}

double beta_prior_derivative(double x, double a, double b) {
  if (x < a || x > b) return 0.0;
  const double w = b - a;
  return 60.0 * (x - a) * (b - x) * (a + b - 2.0 * x) / (w * w * w * w * w);
}

double prior_information(double a, double b, double quad_tol) {
  if (!(a < b)) throw std::invalid_argument("prior interval must be nondegenerate");
  const double w = b - a;
  const auto integrand = [a, b, w](double x) {
    const double q = beta_prior_density(x, a, b);
    if (q <= 0.0) {
      // q'(x)^2/q(x) extends continuously to 120 (a+b-2x)^2 / (b-a)^5 at the endpoints.
      const double d = a + b - 2.0 * x;
      return 120.0 * d * d / (w * w * w * w * w);
    }
    const double dq = beta_prior_derivative(x, a, b);
    return dq * dq / q;
  };
  return adaptive_simpson(integrand, a, b, quad_tol);
}

double van_trees_partial_sum(double a, double b, int rounds) {
  const double info = 40.0 / ((b - a) * (b - a));
  double sum = 0.0;
  for (int n = 1; n <= rounds; ++n) {
    sum += 1.0 / (info + static_cast<double>(n) / a);
  }
  return sum;
}

BoundReport bound_report(const IntensityModel& model, const Tolerances& tol) {
  const auto& env = model.env();
  const auto solution = optimal_threshold(model, tol);
  const auto lower = lower_bound_constants(env);

  BoundReport report;
  report.L_low = env.lower_intensity();
  report.c_upper = class_second_derivative_bound(env);
  report.D = class_gap_constant_D(env);
  report.C_upper = upper_bound_constant(env);
  report.epsilon = proposition_epsilon(model, solution);
  report.M_grid = proposition_grid_count(env);
  report.var_tau0 = var_tau0(model, tol);
  report.a = lower.a;
  report.b = lower.b;
  report.fisher_unit = lower.fisher_unit;
  report.I_q = lower.I_q;
  report.C_prime = lower.C_prime;
  report.c_tilde = lower.c_tilde;
  report.C_lower = lower.C_lower;
  return report;
}

}  // namespace parking
