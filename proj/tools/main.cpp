// parkopt: optimal-stopping oracle, learning experiments, and theory constants for
// Poisson street parking. Subcommands wrap the library; all randomness flows from
// the configured seed and outputs are byte-stable across runs and worker counts.
#include <cstdio>
#include <exception>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "parking/config.hpp"
#include "parking/report.hpp"

namespace {

constexpr const char* kVersion = "parkopt 0.1.0";

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

struct Options {
  std::string config_path;
  std::vector<std::string> overrides;
  int jobs = 0;
};

std::string output_path(const parking::FileConfig& config, const char* name) {
  return (std::filesystem::path(config.output_directory) / name).string();
}

int require_class_member(const parking::IntensityModel& model) {
  const auto report = parking::validate_class(model);
  if (!report.pass) {
    std::fprintf(stderr, "model %s is not a class member: %s (witness u = %g)\n",
                 model.describe().c_str(), report.violated_property.c_str(),
                 report.witness);
    return kExitValidation;
  }
  return kExitOk;
}

int cmd_validate(const Options& opt) {
  const auto config = parking::parse_config_file(opt.config_path, opt.overrides);
  const auto model = parking::make_model(config);
  const auto report = parking::validate_class(model);
  std::printf("model,%s\n", model.describe().c_str());
  std::printf("result,%s\n", report.pass ? "pass" : "fail");
  std::printf("method,%s\n", report.method.c_str());
  if (!report.pass) {
    std::printf("violated_property,%s\n", report.violated_property.c_str());
    std::printf("witness,%s\n", parking::format_double(report.witness).c_str());
    return kExitValidation;
  }
  return kExitOk;
}

int cmd_solve(const Options& opt) {
  const auto config = parking::parse_config_file(opt.config_path, opt.overrides);
  const auto model = parking::make_model(config);
  if (int rc = require_class_member(model)) return rc;
  const auto result = parking::optimal_threshold(model, config.tol);
  std::printf("%s,%s,%s,%s\n", parking::format_double(result.threshold).c_str(),
              parking::format_double(result.tail_mean).c_str(),
              parking::format_double(result.expected_cost).c_str(),
              parking::format_double(result.residual).c_str());
  return kExitOk;
}

int cmd_bounds(const Options& opt) {
  const auto config = parking::parse_config_file(opt.config_path, opt.overrides);
  const auto model = parking::make_model(config);
  if (int rc = require_class_member(model)) return rc;
  const auto report = parking::bound_report(model, config.tol);
  const auto csv = parking::bounds_csv(report);
  parking::atomic_write_file(output_path(config, "bounds.csv"), csv);
  std::fputs(csv.c_str(), stdout);
  return kExitOk;
}

int cmd_simulate(const Options& opt) {
  const auto config = parking::parse_config_file(opt.config_path, opt.overrides);
  const auto model = parking::make_model(config);
  if (int rc = require_class_member(model)) return rc;
  // Paths are sampled at a fixed threshold: the policy's threshold when fixed,
  // otherwise at the target (first-jump-after-0 observations).
  const double threshold = config.policy.kind == parking::PolicyKind::kFixed
                               ? config.policy.fixed_threshold
                               : 0.0;
  std::vector<parking::PathRow> rows;
  rows.reserve(static_cast<std::size_t>(config.replications) *
               (static_cast<std::size_t>(config.horizon) + 1));
  for (int rep = 0; rep < config.replications; ++rep) {
    for (int round = 0; round <= config.horizon; ++round) {
      parking::RngStream rng(config.seed, static_cast<std::uint64_t>(rep),
                             static_cast<std::uint64_t>(round));
      rows.push_back({rep, round, parking::sample_path(model, threshold, rng)});
    }
  }
  parking::atomic_write_file(output_path(config, "paths.csv"), parking::paths_csv(rows));
  std::printf("wrote %zu paths to %s\n", rows.size(),
              output_path(config, "paths.csv").c_str());
  return kExitOk;
}

int cmd_run(const Options& opt) {
  const auto config = parking::parse_config_file(opt.config_path, opt.overrides);
  const auto experiment = parking::make_experiment(config, opt.jobs);
  const auto result = parking::run_experiment(experiment);
  parking::atomic_write_file(output_path(config, "regret.csv"),
                             parking::regret_csv(result.curve));
  parking::atomic_write_file(output_path(config, "diagnostics.csv"),
                             parking::diagnostics_csv(result.diagnostics));
  std::string summary = "cumulative_regret," +
                        parking::format_double(result.curve.cumulative.back());
  if (config.horizon >= 100) {
    const auto fit = parking::fit_log_growth(result.curve);
    parking::atomic_write_file(output_path(config, "fit.csv"), parking::fit_csv(fit));
    summary += "\nfit_slope," + parking::format_double(fit.slope);
    summary += "\nfit_r_squared," + parking::format_double(fit.r_squared);
  }
  if (result.diagnostics.waiting_times.size() >= 100) {
    const auto check =
        parking::waiting_time_check(result.diagnostics, experiment.model.env());
    summary += "\nwaiting_mean," + parking::format_double(check.empirical_mean);
    summary += "\nwaiting_bound," + parking::format_double(check.bound);
    summary += std::string("\nwaiting_pass,") + (check.pass ? "1" : "0");
  }
  std::printf("%s\n", summary.c_str());
  return kExitOk;
}

int cmd_mse(const Options& opt) {
  const auto config = parking::parse_config_file(opt.config_path, opt.overrides);
  const auto model = parking::make_model(config);
  if (int rc = require_class_member(model)) return rc;
  const auto rows = parking::estimator_mse_sweep(model, config.mse_n,
                                                 config.mse_replications, config.seed,
                                                 config.tol, opt.jobs);
  const auto csv = parking::mse_csv(rows);
  parking::atomic_write_file(output_path(config, "mse.csv"), csv);
  std::fputs(csv.c_str(), stdout);
  return kExitOk;
}

int cmd_brute(const Options& opt) {
  const auto config = parking::parse_config_file(opt.config_path, opt.overrides);
  const auto model = parking::make_model(config);
  if (int rc = require_class_member(model)) return rc;
  const auto result = parking::brute_force_threshold(
      model, config.brute_grid_step, config.brute_paths, config.seed, opt.jobs);
  parking::atomic_write_file(output_path(config, "brute.csv"),
                             parking::brute_csv(result));
  std::printf("%s,%s,%s\n", parking::format_double(result.best.threshold).c_str(),
              parking::format_double(result.best.mean_cost).c_str(),
              parking::format_double(result.ci_halfwidth).c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"optimal stopping for Poisson street parking: oracle, learner, bounds"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough(true);

  Options opt;
  app.add_option("--set", opt.overrides, "override a config key, e.g. --set env.S=-2")
      ->take_all();
  app.add_option("--jobs", opt.jobs, "worker threads (0 = hardware)");

  const struct {
    const char* name;
    const char* help;
    int (*handler)(const Options&);
  } commands[] = {
      {"validate", "check class membership of the configured intensity", cmd_validate},
      {"solve", "print b*, E(tau0), E|tau_b*|, residual as a CSV row", cmd_solve},
      {"simulate", "write sampled paths to paths.csv", cmd_simulate},
      {"run", "run the learning experiment; write regret/diagnostics/fit CSVs", cmd_run},
      {"mse", "estimator MSE sweep; write mse.csv", cmd_mse},
      {"bounds", "print and write the theory-constant report", cmd_bounds},
      {"brute", "Monte Carlo grid search for the optimal threshold", cmd_brute},
  };
  for (const auto& command : commands) {
    auto* sub = app.add_subcommand(command.name, command.help);
    sub->add_option("config", opt.config_path, "experiment config file")->required();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  const auto* selected = app.get_subcommands().front();
  try {
    for (const auto& command : commands) {
      if (selected->get_name() == command.name) return command.handler(opt);
    }
  } catch (const parking::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "validation error: %s\n", e.what());
    return kExitValidation;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "validation error: %s\n", e.what());
    return kExitValidation;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumerical;
  }
  return kExitUsage;
}
