#include <doctest.h>

#include <cmath>

#include "parking/quadrature.hpp"

using parking::adaptive_simpson;

TEST_CASE("polynomials and transcendentals integrate to tolerance") {
  CHECK(adaptive_simpson([](double x) { return x * x; }, 0.0, 1.0, 1e-12) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(adaptive_simpson([](double x) { return std::sin(x); }, 0.0, M_PI, 1e-12) ==
        doctest::Approx(2.0).epsilon(1e-11));
  CHECK(adaptive_simpson([](double x) { return std::exp(-x); }, 0.0, 40.0, 1e-12) ==
        doctest::Approx(1.0).epsilon(1e-11));
}

TEST_CASE("adaptivity resolves a sharp feature") {
  // Narrow Gaussian bump away from the interval midpoint.
  const double value = adaptive_simpson(
      [](double x) { return std::exp(-1e4 * (x - 0.137) * (x - 0.137)); }, 0.0, 1.0,
      1e-12);
  CHECK(value == doctest::Approx(std::sqrt(M_PI) / 100.0).epsilon(1e-8));
}

TEST_CASE("degenerate interval is zero") {
  CHECK(adaptive_simpson([](double x) { return x; }, 2.0, 2.0, 1e-12) == 0.0);
}

TEST_CASE("invalid inputs are rejected") {
  CHECK_THROWS_AS(adaptive_simpson([](double x) { return x; }, 0.0, 1.0, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      adaptive_simpson([](double x) { return x; }, 0.0,
                       std::numeric_limits<double>::infinity(), 1e-10),
      std::invalid_argument);
}
