#pragma once

#include <span>
#include <string>
#include <vector>

#include "parking/bounds.hpp"
#include "parking/harness.hpp"
#include "parking/simulate.hpp"

namespace parking {

// Locale-independent shortest-faithful rendering with 17 significant digits.
std::string format_double(double value);

// CSV bodies. All floats go through format_double, so identical inputs serialize
// to identical bytes.
std::string regret_csv(const RegretCurve& curve);
std::string diagnostics_csv(const FullInfoDiagnostics& diagnostics);
std::string fit_csv(const LogFit& fit);
std::string mse_csv(std::span<const MseRow> rows);
std::string brute_csv(const BruteForceResult& result);
std::string bounds_csv(const BoundReport& report);

struct PathRow {
  int replication = 0;
  int round = 0;
  PathObservation observation;
};

std::string paths_csv(std::span<const PathRow> rows);

// Writes through a temporary file in the target directory and renames, creating
// parent directories as needed.
void atomic_write_file(const std::string& path, const std::string& content);

}  // namespace parking
