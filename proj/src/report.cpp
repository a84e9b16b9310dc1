#include "parking/report.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace parking {

std::string format_double(double value) {
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string regret_csv(const RegretCurve& curve) {
  std::string out = "round,mean_gap,se,cumulative\n";
  for (std::size_t n = 0; n < curve.mean_gap.size(); ++n) {
    out += std::to_string(n);
    out += ',';
    out += format_double(curve.mean_gap[n]);
    out += ',';
    out += format_double(curve.se[n]);
    out += ',';
    out += format_double(curve.cumulative[n]);
    out += '\n';
  }
  return out;
}

std::string diagnostics_csv(const FullInfoDiagnostics& diagnostics) {
  std::string out = "kind,index,value\n";
  for (std::size_t n = 0; n < diagnostics.mean_records.size(); ++n) {
    out += "full_info_count,";
    out += std::to_string(n);
    out += ',';
    out += format_double(diagnostics.mean_records[n]);
    out += '\n';
  }
  for (std::size_t k = 0; k < diagnostics.waiting_times.size(); ++k) {
    out += "waiting_time,";
    out += std::to_string(k);
    out += ',';
    out += format_double(diagnostics.waiting_times[k]);
    out += '\n';
  }
  return out;
}

std::string fit_csv(const LogFit& fit) {
  std::string out = "intercept,slope,r_squared,window_lo,window_hi\n";
  out += format_double(fit.intercept);
  out += ',';
  out += format_double(fit.slope);
  out += ',';
  out += format_double(fit.r_squared);
  out += ',';
  out += std::to_string(fit.window_lo);
  out += ',';
  out += std::to_string(fit.window_hi);
  out += '\n';
  return out;
}

std::string mse_csv(std::span<const MseRow> rows) {
  std::string out = "n,quantity,empirical,theory,ratio\n";
  for (const auto& row : rows) {
    out += std::to_string(row.n);
    out += ',';
    out += row.quantity;
    out += ',';
    out += format_double(row.empirical);
    out += ',';
    out += format_double(row.theory);
    out += ',';
    out += format_double(row.ratio);
    out += '\n';
  }
  return out;
}

std::string brute_csv(const BruteForceResult& result) {
  std::string out = "threshold,mean_cost,se\n";
  for (const auto& point : result.grid) {
    out += format_double(point.threshold);
    out += ',';
    out += format_double(point.mean_cost);
    out += ',';
    out += format_double(point.se);
    out += '\n';
  }
  return out;
}

std::string bounds_csv(const BoundReport& report) {
  std::string out = "name,value\n";
  const auto row = [&out](const char* name, double value) {
    out += name;
    out += ',';
    out += format_double(value);
    out += '\n';
  };
  row("L_low", report.L_low);
  row("c_upper", report.c_upper);
  row("D", report.D);
  row("C_upper", report.C_upper);
  row("epsilon", report.epsilon);
  out += "M_grid,";
  out += std::to_string(report.M_grid);
  out += '\n';
  row("var_tau0", report.var_tau0);
  row("a", report.a);
  row("b", report.b);
  row("fisher_unit", report.fisher_unit);
  row("I_q", report.I_q);
  row("C_prime", report.C_prime);
  row("c_tilde", report.c_tilde);
  row("C_lower", report.C_lower);
  return out;
}

std::string paths_csv(std::span<const PathRow> rows) {
  std::string out = "replication,round,threshold,stop,jump_count,jumps\n";
  for (const auto& row : rows) {
    out += std::to_string(row.replication);
    out += ',';
    out += std::to_string(row.round);
    out += ',';
    out += format_double(row.observation.threshold);
    out += ',';
    out += format_double(row.observation.stop_position);
    out += ',';
    out += std::to_string(row.observation.jump_positions.size());
    out += ',';
    for (std::size_t i = 0; i < row.observation.jump_positions.size(); ++i) {
      if (i) out += ';';
      out += format_double(row.observation.jump_positions[i]);
    }
    out += '\n';
  }
  return out;
}

void atomic_write_file(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) {
    fs::create_directories(target.parent_path());
  }
  const fs::path temp = target.string() + ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + temp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("short write to " + temp.string());
  }
  std::error_code ec;
  fs::rename(temp, target, ec);
  if (ec) throw std::runtime_error("cannot move " + temp.string() + " into place");
}

}  // namespace parking
