#include "parking/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "parking/quadrature.hpp"

namespace parking {

namespace {

void require_threshold(const IntensityModel& model, double b) {
  if (!(b >= model.env().street_start() && b <= 0.0)) {
    throw std::domain_error("threshold must lie in [S, 0]");
  }
}

// Horizon Y such that the geometric tail bound `bound(Y)` is below tail_tol,
// found by doubling from 8/L_low.
template <class Bound>
double truncation_horizon(const EnvironmentParams& env, double tail_tol, Bound bound) {
  double y = 8.0 / env.lower_intensity();
  while (bound(y) >= tail_tol) {
    y *= 2.0;
    if (y > 1e9) throw std::runtime_error("tail truncation horizon failed to converge");
  }
  return y;
}

}  // namespace

double tail_mean(const IntensityModel& model, const Tolerances& tol) {
  const double l_low = model.env().lower_intensity();
  const double horizon = truncation_horizon(model.env(), tol.tail_tol, [l_low](double y) {
    return std::exp(-l_low * y) / l_low;
  });
  return adaptive_simpson([&model](double y) { return std::exp(-model.cumulative(y)); },
                          0.0, horizon, tol.quad_tol);
}

double expected_cost(const IntensityModel& model, double threshold, const Tolerances& tol) {
  require_threshold(model, threshold);
  const double a_b = model.cumulative(threshold);
  const auto integrand = [&model, a_b](double y) {
    return y * model.evaluate(y) * std::exp(a_b - model.cumulative(y));
  };
  const double l = model.env().class_bound();
  const double l_low = model.env().lower_intensity();
  // int_Y^inf y L e^{-L_low (y - b)} dy = L e^{L_low b} e^{-L_low Y} (Y/L_low + 1/L_low^2).
  const double horizon =
      truncation_horizon(model.env(), tol.tail_tol, [l, l_low, threshold](double y) {
        return l * std::exp(l_low * threshold) * std::exp(-l_low * y) *
               (y / l_low + 1.0 / (l_low * l_low));
      });
  const double before_target =
      threshold == 0.0 ? 0.0 : adaptive_simpson(integrand, threshold, 0.0, tol.quad_tol);
  const double after_target = adaptive_simpson(integrand, 0.0, horizon, tol.quad_tol);
  return -before_target + after_target;
}

OracleResult optimal_threshold(const IntensityModel& model, const Tolerances& tol) {
  const double s = model.env().street_start();
  const double target = tail_mean(model, tol);
  // Resolve the quadrature below the bisection's comparison scale.
  const double quad_tol = std::min(tol.quad_tol, 0.1 * tol.root_tol);
  const auto balance = [&model, target, quad_tol](double b) {
    const double lhs = adaptive_simpson(
        [&model](double y) { return std::exp(model.integrated_to_target(y)); }, b, 0.0,
        quad_tol);
    return lhs - target;
  };

  // F is strictly decreasing in b with F(0) = -E(tau_0) < 0; a class member always
  // has F(S) > 0 (the interior root exists and is unique).
  if (balance(s) < 0.0) {
    throw std::runtime_error(
        "class-consistency failure: no interior optimal threshold (is the model in M(L)?)");
  }

  constexpr double kWidthTol = 1e-12;
  double lo = s;
  double hi = 0.0;
  double mid = 0.5 * (lo + hi);
  double f_mid = balance(mid);
  for (int iter = 0; iter < 200; ++iter) {
    if (hi - lo <= kWidthTol && std::abs(f_mid) <= tol.root_tol) break;
    if (f_mid > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    const double next = 0.5 * (lo + hi);
    if (next == mid || next == lo || next == hi) break;  // float resolution reached
    mid = next;
    f_mid = balance(mid);
  }
  if (std::abs(f_mid) > tol.root_tol) {
    throw std::runtime_error("optimal-threshold bisection failed to meet root tolerance");
  }

  OracleResult result;
  result.threshold = mid;
  result.tail_mean = target;
  result.residual = f_mid;
  result.expected_cost = expected_cost(model, mid, tol);
  return result;
}

GapOracle::GapOracle(const IntensityModel& model, Tolerances tol)
    : model_(model), tol_(tol), solution_(optimal_threshold(model, tol)) {
  if (const auto* c = std::get_if<ConstantIntensity>(&model_.params())) {
    constant_level_ = c->level;
  }
}

double GapOracle::gap(double threshold) const {
  require_threshold(model_, threshold);
  double delta;
  if (constant_level_) {
    const double l = *constant_level_;
    delta = (2.0 * std::exp(l * threshold) - 1.0) / l - threshold - std::log(2.0) / l;
  } else {
    delta = expected_cost(model_, threshold, tol_) - solution_.expected_cost;
  }
  const double clamp_band = 2.0 * (tol_.root_tol + tol_.quad_tol);
  if (delta < clamp_band) {
    if (delta < -clamp_band) {
      throw std::runtime_error("optimality gap fell below the numerical noise band");
    }
    return 0.0;
  }
  return delta;
}

double GapOracle::gap_second_derivative(double threshold) const {
  require_threshold(model_, threshold);
  const double cost = expected_cost(model_, threshold, tol_);
  const double bracket = threshold + cost;
  const double lam = model_.evaluate(threshold);
  return model_.derivative(threshold) * bracket + lam * (1.0 + lam * bracket);
}

double GapOracle::sup_gap_second_derivative() const {
  const double s = model_.env().street_start();
  const double step = 1e-3 * model_.env().abs_street_start();
  double sup = gap_second_derivative(0.0);
  for (double b = s; b < 0.0; b += step) {
    sup = std::max(sup, gap_second_derivative(b));
  }
  return sup;
}

double optimality_gap(const IntensityModel& model, double threshold, const Tolerances& tol) {
  return GapOracle(model, tol).gap(threshold);
}

double gap_second_derivative(const IntensityModel& model, double threshold,
                             const Tolerances& tol) {
  GapOracle oracle(model, tol);
  return oracle.gap_second_derivative(threshold);
}

double sup_gap_second_derivative(const IntensityModel& model, const Tolerances& tol) {
  return GapOracle(model, tol).sup_gap_second_derivative();
}

double class_second_derivative_bound(const EnvironmentParams& env) {
  const double l = env.class_bound();
  const double l_low = env.lower_intensity();
  const double abs_s = env.abs_street_start();
  // |int_b^0 y lambda e^{-int} dy| <= S^2 L and int_0^inf y lambda e^{-int} dy
  // <= L / L_low^2, so |b + E|tau_b|| <= |S| + S^2 L + L / L_low^2.
  const double bracket = abs_s + l * abs_s * abs_s + l / (l_low * l_low);
  return l * bracket + l * (1.0 + l * bracket);
}

double min_optimal_threshold(const EnvironmentParams& env) {
  return -std::log(2.0) / env.lower_intensity();
}

}  // namespace parking
