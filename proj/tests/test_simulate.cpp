#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "parking/oracle.hpp"
#include "parking/simulate.hpp"

using namespace parking;

namespace {

const EnvironmentParams kEnv{-2.0, 2.0};

int count_in_window(const PathObservation& obs, double lo, double hi) {
  int count = 0;
  for (double j : obs.jump_positions) {
    if (j > lo && j <= hi) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("observations satisfy their structural invariants") {
  const auto model = IntensityModel::sinusoidal(1.5, 0.3, 1.0, kEnv);
  for (int p = 0; p < 2000; ++p) {
    RngStream rng(7, p, 0);
    const auto obs = sample_path(model, -0.8, rng);
    REQUIRE_FALSE(obs.jump_positions.empty());
    CHECK(obs.stop_position == obs.jump_positions.back());
    CHECK(obs.stop_position > obs.threshold);
    for (std::size_t i = 0; i < obs.jump_positions.size(); ++i) {
      CHECK(obs.jump_positions[i] > kEnv.street_start());
      if (i) CHECK(obs.jump_positions[i] > obs.jump_positions[i - 1]);
      CHECK(obs.jump_positions[i] <= obs.stop_position);
    }
  }
  RngStream rng(7, 0, 1);
  CHECK(sample_tau0(model, rng) > 0.0);
  CHECK_THROWS_AS(sample_path(model, 0.5, rng), std::domain_error);
}

TEST_CASE("identical stream keys reproduce bit-identical paths") {
  const auto model = IntensityModel::sinusoidal(1.5, 0.3, 1.0, kEnv);
  RngStream a(123, 4, 5);
  RngStream b(123, 4, 5);
  const auto pa = sample_path(model, -0.4, a);
  const auto pb = sample_path(model, -0.4, b);
  CHECK(pa.jump_positions == pb.jump_positions);
  CHECK(pa.stop_position == pb.stop_position);

  RngStream c(123, 4, 6);  // different round
  const auto pc = sample_path(model, -0.4, c);
  CHECK(pa.jump_positions != pc.jump_positions);
}

TEST_CASE("counts on the window are Poisson with the integrated intensity") {
  const auto model = IntensityModel::constant(1.0, kEnv);
  const int paths = 30000;
  double count_sum = 0.0, count_sq = 0.0;
  double left_sum = 0.0, right_sum = 0.0, cross_sum = 0.0;
  double left_sq = 0.0, right_sq = 0.0;
  for (int p = 0; p < paths; ++p) {
    RngStream rng(11, p, 0);
    const auto obs = sample_path(model, 0.0, rng);
    const int window = count_in_window(obs, -2.0, 0.0);
    count_sum += window;
    count_sq += static_cast<double>(window) * window;
    const int left = count_in_window(obs, -2.0, -1.0);
    const int right = count_in_window(obs, -1.0, 0.0);
    left_sum += left;
    right_sum += right;
    left_sq += static_cast<double>(left) * left;
    right_sq += static_cast<double>(right) * right;
    cross_sum += static_cast<double>(left) * right;
  }
  const double mean = count_sum / paths;
  const double var = count_sq / paths - mean * mean;
  // Lambda(S) = 2: mean and variance within 3 standard errors.
  CHECK(std::abs(mean - 2.0) <= 3.0 * std::sqrt(2.0 / paths));
  CHECK(std::abs(var - 2.0) <= 3.0 * std::sqrt(10.0 / paths));

  // Disjoint increments are uncorrelated.
  const double left_mean = left_sum / paths;
  const double right_mean = right_sum / paths;
  const double cov = cross_sum / paths - left_mean * right_mean;
  const double left_var = left_sq / paths - left_mean * left_mean;
  const double right_var = right_sq / paths - right_mean * right_mean;
  CHECK(std::abs(cov) <= 3.0 * std::sqrt(left_var * right_var / paths));
}

TEST_CASE("stop at the target has the tail-mean distribution") {
  const auto model = IntensityModel::constant(1.0, kEnv);
  const int paths = 30000;
  double sum = 0.0;
  for (int p = 0; p < paths; ++p) {
    RngStream rng(13, p, 0);
    sum += sample_tau0(model, rng);
  }
  // E(tau_0) = 1, Var(tau_0) = 1.
  CHECK(std::abs(sum / paths - 1.0) <= 3.0 * std::sqrt(1.0 / paths));

  const auto two = IntensityModel::constant(2.0, kEnv);
  double sum2 = 0.0, sq2 = 0.0;
  for (int p = 0; p < paths; ++p) {
    RngStream rng(17, p, 0);
    const double tau = sample_tau0(two, rng);
    sum2 += tau;
    sq2 += tau * tau;
  }
  const double mean2 = sum2 / paths;
  CHECK(std::abs(mean2 - 0.5) <= 3.0 * std::sqrt(0.25 / paths));
  CHECK(std::abs(sq2 / paths - mean2 * mean2 - 0.25) <= 3.0 * 0.25 * std::sqrt(9.0 / paths));
}

TEST_CASE("survival law for a nonconstant intensity") {
  const auto model = IntensityModel::sinusoidal(1.5, 0.3, 1.0, kEnv);
  const int paths = 30000;
  int above[3] = {0, 0, 0};
  const double ts[3] = {0.5, 1.0, 2.0};
  for (int p = 0; p < paths; ++p) {
    RngStream rng(19, p, 0);
    const double tau = sample_tau0(model, rng);
    for (int k = 0; k < 3; ++k) {
      if (tau > ts[k]) ++above[k];
    }
  }
  for (int k = 0; k < 3; ++k) {
    const double expected = std::exp(-model.cumulative(ts[k]));
    const double观 = 0.0;
    (void)观;
    const double observed = static_cast<double>(above[k]) / paths;
    CHECK(std::abs(observed - expected) <=
          3.0 * std::sqrt(expected * (1.0 - expected) / paths));
  }
}

TEST_CASE("mean stop matches the oracle tail mean for the sinusoidal model") {
  const auto model = IntensityModel::sinusoidal(1.5, 0.3, 1.0, kEnv);
  const double expected = tail_mean(model);
  const int paths = 30000;
  double sum = 0.0, sq = 0.0;
  for (int p = 0; p < paths; ++p) {
    RngStream rng(23, p, 0);
    const double tau = sample_tau0(model, rng);
    sum += tau;
    sq += tau * tau;
  }
  const double mean = sum / paths;
  const double sd = std::sqrt(std::max(0.0, sq / paths - mean * mean));
  CHECK(std::abs(mean - expected) <= 3.0 * sd / std::sqrt(static_cast<double>(paths)));
}

TEST_CASE("uniform draws stay inside the open unit interval") {
  RngStream rng(29, 0, 0);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform01();
    CHECK(u > 0.0);
    CHECK(u < 1.0);
  }
}
