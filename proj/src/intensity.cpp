#include "parking/intensity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace parking {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// log(cosh(x)) without overflow for large |x|.
double log_cosh(double x) {
  const double ax = std::abs(x);
  return ax + std::log1p(std::exp(-2.0 * ax)) - std::log(2.0);
}

bool all_finite(const IntensityModel::Params& params) {
  return std::visit(
      overloaded{
          [](const ConstantIntensity& p) { return std::isfinite(p.level); },
          [](const SinusoidalIntensity& p) {
            return std::isfinite(p.offset) && std::isfinite(p.amplitude) &&
                   std::isfinite(p.frequency);
          },
          [](const TanhRampIntensity& p) {
            return std::isfinite(p.offset) && std::isfinite(p.amplitude) &&
                   std::isfinite(p.rate);
          },
      },
      params);
}

std::string format_params(const char* name, const double* vals, int n) {
  char buf[160];
  int off = std::snprintf(buf, sizeof(buf), "%s(", name);
  for (int i = 0; i < n; ++i) {
    off += std::snprintf(buf + off, sizeof(buf) - off, i ? ", %g" : "%g", vals[i]);
  }
  std::snprintf(buf + off, sizeof(buf) - off, ")");
  return buf;
}

}  // namespace

IntensityModel::IntensityModel(Params params, EnvironmentParams env)
    : params_(std::move(params)), env_(env) {
  if (!all_finite(params_)) {
    throw std::invalid_argument("intensity parameters must be finite");
  }
}

void IntensityModel::require_in_domain(double u) const {
  if (!(u >= env_.street_start())) {
    throw std::domain_error("position lies before the street start");
  }
}

double IntensityModel::evaluate(double u) const {
  require_in_domain(u);
  return std::visit(
      overloaded{
          [](const ConstantIntensity& p) { return p.level; },
          [u](const SinusoidalIntensity& p) {
            return p.offset + p.amplitude * std::sin(p.frequency * u);
          },
          [u](const TanhRampIntensity& p) {
            return p.offset + p.amplitude * std::tanh(p.rate * u);
          },
      },
      params_);
}

double IntensityModel::derivative(double u) const {
  require_in_domain(u);
  return std::visit(
      overloaded{
          [](const ConstantIntensity&) { return 0.0; },
          [u](const SinusoidalIntensity& p) {
            return p.amplitude * p.frequency * std::cos(p.frequency * u);
          },
          [u](const TanhRampIntensity& p) {
            const double t = std::tanh(p.rate * u);
            return p.amplitude * p.rate * (1.0 - t * t);
          },
      },
      params_);
}

double IntensityModel::cumulative(double y) const {
  require_in_domain(y);
  return std::visit(
      overloaded{
          [y](const ConstantIntensity& p) { return p.level * y; },
          [y](const SinusoidalIntensity& p) {
            if (p.frequency == 0.0) return p.offset * y;
            return p.offset * y +
                   p.amplitude / p.frequency * (1.0 - std::cos(p.frequency * y));
          },
          [y](const TanhRampIntensity& p) {
            if (p.rate == 0.0) return p.offset * y;
            return p.offset * y + p.amplitude / p.rate * log_cosh(p.rate * y);
          },
      },
      params_);
}

double IntensityModel::integrated_to_target(double y) const {
  if (!(y >= env_.street_start() && y <= 0.0)) {
    throw std::domain_error("integrated intensity is defined on [S, 0]");
  }
  return -cumulative(y);
}

bool IntensityModel::is_constant() const {
  return std::holds_alternative<ConstantIntensity>(params_);
}

std::string IntensityModel::family_name() const {
  return std::visit(overloaded{
                        [](const ConstantIntensity&) { return std::string("constant"); },
                        [](const SinusoidalIntensity&) { return std::string("sinusoidal"); },
                        [](const TanhRampIntensity&) { return std::string("tanh_ramp"); },
                    },
                    params_);
}

std::string IntensityModel::describe() const {
  return std::visit(
      overloaded{
          [](const ConstantIntensity& p) {
            const double v[] = {p.level};
            return format_params("constant", v, 1);
          },
          [](const SinusoidalIntensity& p) {
            const double v[] = {p.offset, p.amplitude, p.frequency};
            return format_params("sinusoidal", v, 3);
          },
          [](const TanhRampIntensity& p) {
            const double v[] = {p.offset, p.amplitude, p.rate};
            return format_params("tanh_ramp", v, 3);
          },
      },
      params_);
}

namespace {

struct RangeEnvelope {
  double lower;      // inf of lambda on [S, inf)
  double upper;      // sup of lambda on [S, inf)
  double slope_max;  // sup of |lambda'| on [S, inf)
  double lower_at;   // a position where the infimum is (nearly) attained
  double upper_at;
  double slope_at;
};

// Closed-form envelopes over [S, inf) for each family.
RangeEnvelope analytic_envelope(const IntensityModel& model) {
  const double s = model.env().street_start();
  return std::visit(
      overloaded{
          [s](const ConstantIntensity& p) {
            return RangeEnvelope{p.level, p.level, 0.0, s, s, s};
          },
          [s](const SinusoidalIntensity& p) {
            // sin sweeps [-1, 1] on [S, inf) for any nonzero frequency.
            const double a = std::abs(p.amplitude);
            double lower_at = s;
            double upper_at = s;
            if (p.frequency != 0.0) {
              const double period = 2.0 * M_PI / std::abs(p.frequency);
              // First trough / crest at or after S.
              const double sign = p.amplitude >= 0.0 ? 1.0 : -1.0;
              const double crest = 0.5 * M_PI / p.frequency;
              const double trough = -0.5 * M_PI / p.frequency;
              upper_at = sign > 0 ? crest : trough;
              lower_at = sign > 0 ? trough : crest;
              upper_at += period * std::ceil((s - upper_at) / period);
              lower_at += period * std::ceil((s - lower_at) / period);
            }
            return RangeEnvelope{p.offset - a, p.offset + a,
                                 std::abs(p.amplitude * p.frequency), lower_at, upper_at,
                                 0.0};
          },
          [s](const TanhRampIntensity& p) {
            // tanh(rate * u) is monotone in u, so the range endpoints sit at u = S
            // and in the u -> inf limit.
            const double at_s = p.amplitude * std::tanh(p.rate * s);
            const double at_inf = p.rate == 0.0 ? 0.0
                                  : p.rate > 0.0 ? p.amplitude
                                                 : -p.amplitude;
            const double lo = std::min(at_s, at_inf);
            const double hi = std::max(at_s, at_inf);
            return RangeEnvelope{p.offset + lo, p.offset + hi, std::abs(p.amplitude * p.rate),
                                 at_s <= at_inf ? s : 0.0, at_s <= at_inf ? 0.0 : s, 0.0};
          },
      },
      model.params());
}

ValidationReport check_envelope(const IntensityModel& model, const RangeEnvelope& env,
                                std::string method) {
  const double l_low = model.env().lower_intensity();
  const double l = model.env().class_bound();
  ValidationReport report;
  report.method = std::move(method);
  if (env.lower < l_low) {
    report.pass = false;
    report.violated_property = "lower bound: lambda must stay at or above ln(2)/|S| + 1/L";
    report.witness = env.lower_at;
    return report;
  }
  if (env.upper > l) {
    report.pass = false;
    report.violated_property = "upper bound: lambda must stay at or below L";
    report.witness = env.upper_at;
    return report;
  }
  if (env.slope_max > l) {
    report.pass = false;
    report.violated_property = "slope bound: |lambda'| must stay at or below L";
    report.witness = env.slope_at;
    return report;
  }
  report.pass = true;
  return report;
}

}  // namespace

ValidationReport validate_class(const IntensityModel& model) {
  return check_envelope(model, analytic_envelope(model), "analytic");
}

ValidationReport validate_class_grid(const IntensityModel& model, double step_scale,
                                     double span_scale) {
  if (!(step_scale > 0.0) || !(span_scale > 0.0)) {
    throw std::invalid_argument("grid validation scales must be positive");
  }
  const double s = model.env().street_start();
  const double abs_s = model.env().abs_street_start();
  const double step = step_scale * abs_s;
  const double end = s + span_scale * abs_s;
  const double l_low = model.env().lower_intensity();
  const double l = model.env().class_bound();

  RangeEnvelope seen{model.evaluate(s), model.evaluate(s), std::abs(model.derivative(s)),
                     s, s, s};
  for (double u = s; u <= end; u += step) {
    const double v = model.evaluate(u);
    const double d = std::abs(model.derivative(u));
    if (v < seen.lower) {
      seen.lower = v;
      seen.lower_at = u;
    }
    if (v > seen.upper) {
      seen.upper = v;
      seen.upper_at = u;
    }
    if (d > seen.slope_max) {
      seen.slope_max = d;
      seen.slope_at = u;
    }
  }
  // Tail certificate beyond the grid: the shipped families are constant, periodic, or
  // monotone with a finite limit past any window, so the analytic envelope bounds the
  // tail. Fold it into the observed extrema.
  const RangeEnvelope tail = analytic_envelope(model);
  if (tail.lower < seen.lower && tail.lower < l_low) {
    seen.lower = tail.lower;
    seen.lower_at = tail.lower_at;
  }
  if (tail.upper > seen.upper && tail.upper > l) {
    seen.upper = tail.upper;
    seen.upper_at = tail.upper_at;
  }
  if (tail.slope_max > seen.slope_max && tail.slope_max > l) {
    seen.slope_max = tail.slope_max;
    seen.slope_at = tail.slope_at;
  }
  return check_envelope(model, seen, "grid-verified");
}

}  // namespace parking
