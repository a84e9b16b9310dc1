#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "parking/harness.hpp"

namespace parking {

// Parse/usage problem in a config document. line/column are 1-based; line 0 marks
// errors without a file position (missing keys, bad --set overrides).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, int column, const std::string& message)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ", column " +
                                          std::to_string(column) + ": " + message
                                    : message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Typed view of the experiment config document. Sections and keys are fixed;
// unknown ones are rejected at parse time.
struct FileConfig {
  double street_start = 0.0;  // env.S (required)
  double class_bound = 0.0;   // env.L (required)
  IntensityModel::Params intensity;  // intensity.intensity (required)

  PolicySpec policy;
  int horizon = 100;           // experiment.T
  int replications = 10;
  std::uint64_t seed = 1;
  double brute_grid_step = 0.01;
  int brute_paths = 100000;
  std::vector<int> mse_n = {10, 100, 1000};
  int mse_replications = 2000;

  Tolerances tol;
  std::string output_directory = "out";
};

// Parses the key/value document; `overrides` entries look like "env.S=-2" and are
// applied before typed validation.
FileConfig parse_config_text(const std::string& text,
                             std::span<const std::string> overrides = {});
FileConfig parse_config_file(const std::string& path,
                             std::span<const std::string> overrides = {});

IntensityModel make_model(const FileConfig& config);
ExperimentConfig make_experiment(const FileConfig& config, int jobs);

}  // namespace parking
