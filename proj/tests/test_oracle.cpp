#include <doctest.h>

#include <cmath>

#include "parking/oracle.hpp"

using namespace parking;

namespace {

const EnvironmentParams kEnv{-2.0, 2.0};
const double kLn2 = std::log(2.0);

// Closed-form expected cost for a constant intensity, E|tau_b| = (2e^{lb}-1)/l - b.
double constant_cost(double level, double b) {
  return (2.0 * std::exp(level * b) - 1.0) / level - b;
}

}  // namespace

TEST_CASE("tail mean: exponential closed forms and the class sandwich") {
  CHECK(tail_mean(IntensityModel::constant(1.0, kEnv)) ==
        doctest::Approx(1.0).epsilon(1e-9));
  CHECK(tail_mean(IntensityModel::constant(2.0, kEnv)) ==
        doctest::Approx(0.5).epsilon(1e-9));

  const IntensityModel models[] = {
      IntensityModel::sinusoidal(1.5, 0.3, 1.0, kEnv),
      IntensityModel::tanh_ramp(1.3, 0.2, 0.5, kEnv),
      IntensityModel::constant(1.0, kEnv),
  };
  for (const auto& model : models) {
    const double mean = tail_mean(model);
    CHECK(mean >= 1.0 / kEnv.class_bound() - 1e-12);
    CHECK(mean <= 1.0 / kEnv.lower_intensity() + 1e-12);
  }
}

TEST_CASE("optimal threshold for constant intensities is -ln(2)/lambda") {
  const EnvironmentParams env{-2.0, 2.5};
  for (double level : {0.9, 1.0, 1.5, 2.0}) {
    const auto result = optimal_threshold(IntensityModel::constant(level, env));
    CHECK(std::abs(result.threshold - (-kLn2 / level)) <= 1e-8);
    CHECK(std::abs(result.residual) <= 1e-10);
    CHECK(result.threshold > env.street_start());
    CHECK(result.threshold < 0.0);
    // Class-wide floor on the threshold.
    CHECK(result.threshold >= min_optimal_threshold(env) - 1e-12);
  }
}

TEST_CASE("nonconstant models: frozen solutions and interior placement") {
  // Values pinned from this oracle after cross-validation against the Monte Carlo
  // grid search (acceptance re-runs that comparison at full scale).
  const auto sine = optimal_threshold(IntensityModel::sinusoidal(1.5, 0.3, 1.0, kEnv));
  CHECK(sine.threshold == doctest::Approx(-0.438213641).epsilon(1e-6));
  const auto ramp = optimal_threshold(IntensityModel::tanh_ramp(1.3, 0.2, 0.5, kEnv));
  CHECK(ramp.threshold == doctest::Approx(-0.517762434).epsilon(1e-6));
}

TEST_CASE("expected cost: quadrature against closed forms") {
  const auto one = IntensityModel::constant(1.0, kEnv);
  CHECK(expected_cost(one, -kLn2) == doctest::Approx(kLn2).epsilon(1e-8));
  CHECK(expected_cost(one, 0.0) == doctest::Approx(1.0).epsilon(1e-8));

  const EnvironmentParams env{-2.0, 2.5};
  for (double level : {0.9, 1.0, 1.5, 2.0}) {
    const auto model = IntensityModel::constant(level, env);
    for (double b : {-1.8, -1.0, -0.5, -0.1, 0.0}) {
      CHECK(expected_cost(model, b) ==
            doctest::Approx(constant_cost(level, b)).epsilon(1e-8));
    }
  }
  CHECK_THROWS_AS(expected_cost(one, 0.5), std::domain_error);
  CHECK_THROWS_AS(expected_cost(one, -2.5), std::domain_error);
}

TEST_CASE("indifference: |b*| equals the cost at b*") {
  const EnvironmentParams wide{-2.0, 2.5};
  const IntensityModel models[] = {
      IntensityModel::constant(0.9, wide),  IntensityModel::constant(1.0, wide),
      IntensityModel::constant(1.5, wide),  IntensityModel::constant(2.0, wide),
      IntensityModel::sinusoidal(1.5, 0.3, 1.0, kEnv),
      IntensityModel::tanh_ramp(1.3, 0.2, 0.5, kEnv),
  };
  for (const auto& model : models) {
    const auto result = optimal_threshold(model);
    CHECK(std::abs(std::abs(result.threshold) - result.expected_cost) <= 1e-6);
    // First-order condition via central differences.
    const double h = 1e-5;
    const double slope = (expected_cost(model, result.threshold + h) -
                          expected_cost(model, result.threshold - h)) /
                         (2.0 * h);
    CHECK(std::abs(slope) <= 1e-4);
  }
}

TEST_CASE("optimality gap: closed form, nonnegativity, clamping") {
  const auto one = IntensityModel::constant(1.0, kEnv);
  const GapOracle oracle(one);
  CHECK(oracle.gap(oracle.solution().threshold) == 0.0);
  CHECK(oracle.gap(-kLn2) == 0.0);
  CHECK(oracle.gap(0.0) == doctest::Approx(1.0 - kLn2).epsilon(1e-9));

  // Corollary closed form at lambda = 2, b = -1.
  const auto two = IntensityModel::constant(2.0, kEnv);
  CHECK(optimality_gap(two, -1.0) ==
        doctest::Approx(0.5 * (2.0 * std::exp(-2.0) - 1.0) + 1.0 - kLn2 / 2.0)
            .epsilon(1e-8));
  CHECK(optimality_gap(two, -1.0) == doctest::Approx(0.28876169).epsilon(1e-6));

  // Gap stays nonnegative across the street for a nonconstant model too.
  const GapOracle sine(IntensityModel::sinusoidal(1.5, 0.3, 1.0, kEnv));
  for (double b = -2.0; b <= 0.0; b += 1e-2) {
    CHECK(sine.gap(b) >= 0.0);
  }
  CHECK(sine.gap(sine.solution().threshold) <= 1e-9);
}

TEST_CASE("gap second derivative: constant cross-check and finite differences") {
  const auto one = IntensityModel::constant(1.0, kEnv);
  const GapOracle oracle(one);
  CHECK(oracle.gap_second_derivative(0.0) == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(oracle.gap_second_derivative(-kLn2) == doctest::Approx(1.0).epsilon(1e-6));
  for (double b : {-1.5, -0.9, -0.3}) {
    CHECK(oracle.gap_second_derivative(b) ==
          doctest::Approx(2.0 * std::exp(b)).epsilon(1e-6));
  }

  const GapOracle sine(IntensityModel::sinusoidal(1.5, 0.3, 1.0, kEnv));
  const double h = 1e-4;
  for (double b : {-1.2, -0.7, -0.3}) {
    const double second =
        (sine.gap(b + h) - 2.0 * sine.gap(b) + sine.gap(b - h)) / (h * h);
    CHECK(std::abs(sine.gap_second_derivative(b) - second) <= 1e-3);
  }
}

TEST_CASE("curvature suprema: per-model grid and the certified class bound") {
  const GapOracle one(IntensityModel::constant(1.0, kEnv));
  // 2 lambda e^{lambda b} increases in b, so the per-model sup sits at b = 0.
  CHECK(one.sup_gap_second_derivative() == doctest::Approx(2.0).epsilon(1e-6));

  const double class_bound = class_second_derivative_bound(kEnv);
  CHECK(class_bound >= 8.0);
  CHECK(class_bound >= one.sup_gap_second_derivative());
  const GapOracle sine(IntensityModel::sinusoidal(1.5, 0.3, 1.0, kEnv));
  CHECK(class_bound >= sine.sup_gap_second_derivative());
}

TEST_CASE("degenerate guard: a class violator fails loudly instead of clamping") {
  // Constant(0.2) on S = -1 has tail mean 5 but at most (e^{0.2}-1)/0.2 of balance
  // mass: no interior root. Construction succeeds; the oracle must refuse.
  const EnvironmentParams env{-1.0, 2.0};
  const auto outlaw = IntensityModel::constant(0.2, env);
  CHECK_FALSE(validate_class(outlaw).pass);
  CHECK_THROWS_AS(optimal_threshold(outlaw), std::runtime_error);
}

TEST_CASE("threshold floor matches the class formula") {
  CHECK(min_optimal_threshold(kEnv) ==
        doctest::Approx(-kLn2 / kEnv.lower_intensity()).epsilon(1e-15));
  CHECK(min_optimal_threshold(kEnv) == doctest::Approx(-0.8188).epsilon(1e-4));
}
