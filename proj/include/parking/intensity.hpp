#pragma once

#include <string>
#include <variant>

#include "parking/env.hpp"

namespace parking {

// lambda(u) = level
struct ConstantIntensity {
  double level;
};

// lambda(u) = offset + amplitude * sin(frequency * u)
struct SinusoidalIntensity {
  double offset;
  double amplitude;
  double frequency;
};

// lambda(u) = offset + amplitude * tanh(rate * u)
struct TanhRampIntensity {
  double offset;
  double amplitude;
  double rate;
};

// An intensity function lambda on [S, inf) together with its derivative and signed
// cumulative integral A(y) = int_0^y lambda(u) du. All families are closed form, so
// no quadrature error enters downstream baselines. Immutable after construction.
class IntensityModel {
 public:
  using Params = std::variant<ConstantIntensity, SinusoidalIntensity, TanhRampIntensity>;

  IntensityModel(Params params, EnvironmentParams env);

  static IntensityModel constant(double level, EnvironmentParams env) {
    return IntensityModel(ConstantIntensity{level}, env);
  }
  static IntensityModel sinusoidal(double offset, double amplitude, double frequency,
                                   EnvironmentParams env) {
    return IntensityModel(SinusoidalIntensity{offset, amplitude, frequency}, env);
  }
  static IntensityModel tanh_ramp(double offset, double amplitude, double rate,
                                  EnvironmentParams env) {
    return IntensityModel(TanhRampIntensity{offset, amplitude, rate}, env);
  }

  // lambda(u); requires u >= S.
  double evaluate(double u) const;
  // lambda'(u); requires u >= S.
  double derivative(double u) const;
  // A(y) = int_0^y lambda(u) du (signed, A(0) = 0); requires y >= S.
  double cumulative(double y) const;
  // Lambda(y) = int_y^0 lambda(u) du = -A(y); requires S <= y <= 0.
  double integrated_to_target(double y) const;

  const EnvironmentParams& env() const { return env_; }
  const Params& params() const { return params_; }
  bool is_constant() const;
  std::string family_name() const;
  std::string describe() const;

 private:
  void require_in_domain(double u) const;

  Params params_;
  EnvironmentParams env_;
};

// Outcome of the class-membership check.
struct ValidationReport {
  bool pass = false;
  std::string violated_property;  // empty on pass
  double witness = 0.0;           // a position exhibiting the violation
  std::string method;             // "analytic" or "grid-verified"
};

// Checks the three class properties: lambda continuously differentiable (by family
// construction), lambda >= L_low on [S, inf), and lambda <= L, |lambda'| <= L on
// [S, inf). Families shipped here all admit analytic envelopes; the grid fallback
// below exists for families that do not.
ValidationReport validate_class(const IntensityModel& model);

// Dense-grid fallback check on [S, S + span_scale*|S|] with step step_scale*|S|,
// plus a tail certificate from the family's monotone/periodic structure.
ValidationReport validate_class_grid(const IntensityModel& model, double step_scale = 1e-3,
                                     double span_scale = 50.0);

}  // namespace parking
