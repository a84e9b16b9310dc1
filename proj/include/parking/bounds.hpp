#pragma once

#include "parking/intensity.hpp"
#include "parking/oracle.hpp"

namespace parking {

// Every explicit theoretical constant from the regret analysis, evaluated for one
// environment/model pair. `a`, `b` are the endpoints of the (rescaled) constant-
// intensity parameter interval used by the Bayesian lower bound; they equal the
// class endpoints [L_low, L] when |S| = 1.
struct BoundReport {
  double L_low = 0.0;
  double c_upper = 0.0;   // certified class bound on sup Delta''
  double D = 0.0;         // aggregated per-round MSE constant
  double C_upper = 0.0;   // regret upper bound: C_upper * ln(T+1)
  double epsilon = 0.0;   // radius used in the estimated-threshold MSE bound
  int M_grid = 0;         // min{m : S + m/(2L) >= 0}
  double var_tau0 = 0.0;
  double a = 0.0;
  double b = 0.0;
  double fisher_unit = 0.0;  // per-round Fisher information bound, 1/a
  double I_q = 0.0;          // prior information of the Beta(3,3) prior on [a, b]
  double C_prime = 0.0;      // 1 / (I_q + fisher_unit)
  double c_tilde = 0.0;
  double C_lower = 0.0;      // minimax bound: C_lower * ln(T)
};

// Var(tau_0) = 2 int_0^inf u e^{-A(u)} du - E(tau_0)^2; always <= 2/L_low^2.
double var_tau0(const IntensityModel& model, const Tolerances& tol = {});

// min{m in N_0 : S + m/(2L) >= 0}.
int proposition_grid_count(const EnvironmentParams& env);

// Half of min{E(tau_0), 1, (b* - S)/(3 + 2 E(tau_0))}, the radius used when
// bounding the probability that the estimated threshold escapes to the boundary.
double proposition_epsilon(const IntensityModel& model, const OracleResult& solution);

// Coefficient K with MSE(b_hat_n) <= K/n:
//   K = S^2 (4 Lambda(S) + Var(tau_0)) / eps^2
//     + S^2 4 Lambda(S) (M+1) + 2 Var(tau_0) + 8|S| int_S^0 e^{2 Lambda(y)} Lambda(y) dy.
double mse_bound_coefficient(const IntensityModel& model, const Tolerances& tol = {});

// Worst-case-over-class version of the coefficient above, with the intensity band
// substituted for the model-specific quantities.
double class_gap_constant_D(const EnvironmentParams& env);

// C with sup-regret <= C ln(T+1): C = L_low^{-1}/ln(2) + e^{L|S|} (1/2) c D,
// where c is the certified class bound on sup Delta''.
double upper_bound_constant(const EnvironmentParams& env);
double regret_upper_bound(const EnvironmentParams& env, int rounds);

struct LowerBoundConstants {
  double a = 0.0;        // rescaled interval endpoints (|S| lambda units)
  double b = 0.0;
  double c = 0.0;        // inf over constants and positions of Delta''
  double c_tilde = 0.0;  // c ln(2) / L^2
  double I_q = 0.0;
  double fisher_unit = 0.0;
  double C_prime = 0.0;
  double C_lower = 0.0;
};

LowerBoundConstants lower_bound_constants(const EnvironmentParams& env);
double minimax_lower_bound(const EnvironmentParams& env, int rounds);

// Beta(3,3) prior rescaled to [a, b]: q(x) = 30 (x-a)^2 (b-x)^2 / (b-a)^5.
double beta_prior_density(double x, double a, double b);
double beta_prior_derivative(double x, double a, double b);

// I_q = int_a^b q'(x)^2 / q(x) dx by quadrature; equals 40/(b-a)^2.
double prior_information(double a, double b, double quad_tol = 1e-10);

// sum_{n=1}^T 1/(40/(b-a)^2 + n/a), the partial sum the lower bound compares
// against C' ln(T).
double van_trees_partial_sum(double a, double b, int rounds);

BoundReport bound_report(const IntensityModel& model, const Tolerances& tol = {});

}  // namespace parking
