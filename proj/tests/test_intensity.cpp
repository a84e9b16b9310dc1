#include <doctest.h>

#include <cmath>
#include <limits>

#include "parking/intensity.hpp"
#include "parking/quadrature.hpp"

using namespace parking;

namespace {
const EnvironmentParams kEnv{-2.0, 2.0};
}

TEST_CASE("environment parameters validate their invariants") {
  CHECK(kEnv.lower_intensity() ==
        doctest::Approx(std::log(2.0) / 2.0 + 0.5).epsilon(1e-15));
  CHECK(EnvironmentParams(-2.0, 2.5).lower_intensity() ==
        doctest::Approx(std::log(2.0) / 2.0 + 0.4).epsilon(1e-15));

  CHECK_THROWS_AS(EnvironmentParams(0.0, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(EnvironmentParams(1.0, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(EnvironmentParams(-2.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(EnvironmentParams(-2.0, 0.5), std::invalid_argument);
  // ln(2)/0.3 + 1/1.5 > 1.5: the band is empty.
  CHECK_THROWS_AS(EnvironmentParams(-0.3, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(EnvironmentParams(std::numeric_limits<double>::quiet_NaN(), 2.0),
                  std::invalid_argument);
}

TEST_CASE("evaluate matches the family formulas") {
  const auto constant = IntensityModel::constant(1.0, kEnv);
  CHECK(constant.evaluate(3.7) == 1.0);

  const auto sine = IntensityModel::sinusoidal(1.5, 0.3, 1.0, kEnv);
  CHECK(sine.evaluate(0.0) == doctest::Approx(1.5));
  CHECK(sine.evaluate(M_PI / 2.0) == doctest::Approx(1.8));

  const auto ramp = IntensityModel::tanh_ramp(1.3, 0.2, 0.5, kEnv);
  CHECK(ramp.evaluate(0.0) == doctest::Approx(1.3));

  CHECK_THROWS_AS(constant.evaluate(-2.0000001), std::domain_error);
  CHECK_THROWS_AS(IntensityModel::constant(std::numeric_limits<double>::infinity(), kEnv),
                  std::invalid_argument);
}

TEST_CASE("derivative is analytic and matches central differences") {
  const auto constant = IntensityModel::constant(1.0, kEnv);
  CHECK(constant.derivative(-1.0) == 0.0);
  CHECK(constant.derivative(5.0) == 0.0);

  const auto sine = IntensityModel::sinusoidal(1.5, 0.3, 1.0, kEnv);
  CHECK(sine.derivative(0.0) == doctest::Approx(0.3).epsilon(1e-14));

  const IntensityModel models[] = {
      constant, sine, IntensityModel::tanh_ramp(1.3, 0.2, 0.5, kEnv)};
  const double h = 1e-5;
  for (const auto& model : models) {
    for (double u = -2.0 + h; u <= 8.0; u += 0.25) {
      const double central = (model.evaluate(u + h) - model.evaluate(u - h)) / (2.0 * h);
      CHECK(std::abs(model.derivative(u) - central) <= 10.0 * h * h + 1e-9);
    }
  }
  CHECK_THROWS_AS(sine.derivative(-3.0), std::domain_error);
}

TEST_CASE("cumulative integral: closed forms, anchoring, monotonicity") {
  const auto two = IntensityModel::constant(2.0, kEnv);
  CHECK(two.integrated_to_target(-1.0) == doctest::Approx(2.0));

  const IntensityModel models[] = {
      IntensityModel::constant(1.0, kEnv),
      IntensityModel::sinusoidal(1.5, 0.3, 1.0, kEnv),
      IntensityModel::tanh_ramp(1.3, 0.2, 0.5, kEnv),
  };
  for (const auto& model : models) {
    CHECK(model.cumulative(0.0) == 0.0);
    // Closed form against quadrature.
    for (double y : {-2.0, -1.3, -0.4, 0.7, 3.1}) {
      const double quad = adaptive_simpson(
          [&model](double u) { return model.evaluate(u); }, 0.0, y, 1e-12);
      CHECK(model.cumulative(y) == doctest::Approx(quad).epsilon(1e-10));
    }
    // Strictly increasing.
    double prev = model.cumulative(-2.0);
    for (double y = -1.9; y <= 4.0; y += 0.1) {
      const double cur = model.cumulative(y);
      CHECK(cur > prev);
      prev = cur;
    }
    // Band L_low |y| <= Lambda(y) <= L |y| on [S, 0] for class members.
    for (double y = -2.0; y <= 0.0; y += 0.05) {
      const double big_lambda = model.integrated_to_target(y);
      CHECK(big_lambda >= kEnv.lower_intensity() * std::abs(y) - 1e-12);
      CHECK(big_lambda <= kEnv.class_bound() * std::abs(y) + 1e-12);
    }
  }
  CHECK_THROWS_AS(models[0].cumulative(-2.5), std::domain_error);
  CHECK_THROWS_AS(models[0].integrated_to_target(0.5), std::domain_error);
}

TEST_CASE("class validation: analytic verdicts") {
  const auto pass = validate_class(IntensityModel::constant(1.0, kEnv));
  CHECK(pass.pass);
  CHECK(pass.method == "analytic");

  // 0.5 < ln(2)/2 + 1/2: lower-bound violation.
  const auto low = validate_class(IntensityModel::constant(0.5, kEnv));
  CHECK_FALSE(low.pass);
  CHECK(low.violated_property.find("lower bound") != std::string::npos);

  CHECK(validate_class(IntensityModel::sinusoidal(1.5, 0.3, 1.0, kEnv)).pass);
  CHECK(validate_class(IntensityModel::tanh_ramp(1.3, 0.2, 0.5, kEnv)).pass);

  // 1.5 - 0.8 = 0.7 dips under the band.
  CHECK_FALSE(validate_class(IntensityModel::sinusoidal(1.5, 0.8, 1.0, kEnv)).pass);
  // 1.9 + 0.3 = 2.2 exceeds L.
  const auto high = validate_class(IntensityModel::sinusoidal(1.9, 0.3, 1.0, kEnv));
  CHECK_FALSE(high.pass);
  CHECK(high.violated_property.find("upper bound") != std::string::npos);
  // |amplitude * frequency| = 3 exceeds the slope bound.
  const auto steep = validate_class(IntensityModel::sinusoidal(1.5, 0.3, 10.0, kEnv));
  CHECK_FALSE(steep.pass);
  CHECK(steep.violated_property.find("slope") != std::string::npos);
}

TEST_CASE("grid fallback agrees with the analytic verdicts") {
  const IntensityModel models[] = {
      IntensityModel::constant(1.0, kEnv),
      IntensityModel::constant(0.5, kEnv),
      IntensityModel::sinusoidal(1.5, 0.3, 1.0, kEnv),
      IntensityModel::sinusoidal(1.5, 0.8, 1.0, kEnv),
      IntensityModel::tanh_ramp(1.3, 0.2, 0.5, kEnv),
      IntensityModel::tanh_ramp(1.0, 0.5, 0.5, kEnv),  // dips to 0.5 for u << 0
  };
  for (const auto& model : models) {
    const auto analytic = validate_class(model);
    const auto grid = validate_class_grid(model);
    CHECK(grid.method == "grid-verified");
    CHECK(grid.pass == analytic.pass);
    if (!grid.pass) {
      CHECK(grid.violated_property == analytic.violated_property);
      // The witness must actually exhibit the violation (or sit at the tail limit).
      if (grid.violated_property.find("lower") != std::string::npos) {
        CHECK(model.evaluate(grid.witness) < kEnv.lower_intensity() + 1e-6);
      }
    }
  }
}

TEST_CASE("family names and descriptions") {
  CHECK(IntensityModel::constant(1.0, kEnv).describe() == "constant(1)");
  CHECK(IntensityModel::sinusoidal(1.5, 0.3, 1.0, kEnv).family_name() == "sinusoidal");
  CHECK(IntensityModel::constant(1.0, kEnv).is_constant());
  CHECK_FALSE(IntensityModel::tanh_ramp(1.3, 0.2, 0.5, kEnv).is_constant());
}
