#include "parking/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace parking {

namespace {

struct Entry {
  std::string value;
  int line = 0;
  int column = 0;
};

const std::map<std::string, std::vector<std::string>>& known_keys() {
  static const std::map<std::string, std::vector<std::string>> keys = {
      {"env", {"S", "L"}},
      {"intensity", {"intensity"}},
      {"experiment",
       {"policy", "T", "replications", "seed", "brute_grid_step", "brute_paths",
        "mse_n", "mse_replications"}},
      {"tolerances", {"quad_tol", "root_tol", "tail_tol", "indifference_tol"}},
      {"output", {"directory"}},
  };
  return keys;
}

bool key_known(const std::string& section, const std::string& key) {
  const auto it = known_keys().find(section);
  if (it == known_keys().end()) return false;
  return std::find(it->second.begin(), it->second.end(), key) != it->second.end();
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

double parse_double(const Entry& e, std::string_view text) {
  const auto t = trim(text);
  double value = 0.0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), value);
  if (res.ec != std::errc{} || res.ptr != t.data() + t.size()) {
    throw ConfigError(e.line, e.column, "expected a number, got '" + std::string(t) + "'");
  }
  return value;
}

double parse_double(const Entry& e) { return parse_double(e, e.value); }

long long parse_integer(const Entry& e) {
  const auto t = trim(std::string_view(e.value));
  long long value = 0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), value);
  if (res.ec != std::errc{} || res.ptr != t.data() + t.size()) {
    throw ConfigError(e.line, e.column,
                      "expected an integer, got '" + std::string(t) + "'");
  }
  return value;
}

std::uint64_t parse_seed(const Entry& e) {
  const auto t = trim(std::string_view(e.value));
  std::uint64_t value = 0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), value);
  if (res.ec != std::errc{} || res.ptr != t.data() + t.size()) {
    throw ConfigError(e.line, e.column,
                      "expected an unsigned integer seed, got '" + std::string(t) + "'");
  }
  return value;
}

// name(arg1, arg2, ...) with numeric arguments.
std::pair<std::string, std::vector<double>> parse_call(const Entry& e) {
  const std::string_view text = trim(std::string_view(e.value));
  const auto open = text.find('(');
  if (open == std::string_view::npos || text.back() != ')') {
    throw ConfigError(e.line, e.column,
                      "expected name(args...), got '" + std::string(text) + "'");
  }
  const std::string name(trim(text.substr(0, open)));
  const std::string_view inner = text.substr(open + 1, text.size() - open - 2);
  std::vector<double> args;
  std::size_t start = 0;
  while (start <= inner.size() && !inner.empty()) {
    const auto comma = inner.find(',', start);
    const auto piece = inner.substr(start, comma == std::string_view::npos
                                               ? std::string_view::npos
                                               : comma - start);
    args.push_back(parse_double(e, piece));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return {name, args};
}

std::vector<int> parse_int_list(const Entry& e) {
  std::vector<int> values;
  std::string_view text = trim(std::string_view(e.value));
  std::size_t start = 0;
  while (start <= text.size() && !text.empty()) {
    const auto comma = text.find(',', start);
    const auto piece = trim(text.substr(
        start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    int value = 0;
    const auto res = std::from_chars(piece.data(), piece.data() + piece.size(), value);
    if (res.ec != std::errc{} || res.ptr != piece.data() + piece.size()) {
      throw ConfigError(e.line, e.column,
                        "expected an integer list, got '" + std::string(piece) + "'");
    }
    values.push_back(value);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return values;
}

using EntryMap = std::map<std::pair<std::string, std::string>, Entry>;

EntryMap parse_entries(const std::string& text) {
  EntryMap entries;
  std::istringstream stream(text);
  std::string raw;
  std::string section;
  int line_number = 0;
  while (std::getline(stream, raw)) {
    ++line_number;
    const std::string_view line = trim(std::string_view(raw));
    if (line.empty() || line.front() == '#' || line.front() == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError(line_number, 1, "unterminated section header");
      }
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (known_keys().find(section) == known_keys().end()) {
        throw ConfigError(line_number, 1, "unknown section [" + section + "]");
      }
      continue;
    }
    const auto eq = raw.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(line_number, 1, "expected key = value");
    }
    const std::string key(trim(std::string_view(raw).substr(0, eq)));
    if (section.empty()) {
      throw ConfigError(line_number, 1, "key '" + key + "' appears before any section");
    }
    if (!key_known(section, key)) {
      throw ConfigError(line_number, 1,
                        "unknown key '" + key + "' in section [" + section + "]");
    }
    Entry entry{std::string(trim(std::string_view(raw).substr(eq + 1))), line_number,
                static_cast<int>(eq) + 2};
    const auto [it, inserted] = entries.emplace(std::make_pair(section, key), entry);
    if (!inserted) {
      throw ConfigError(line_number, 1,
                        "duplicate key '" + section + "." + key + "'");
    }
  }
  return entries;
}

void apply_overrides(EntryMap& entries, std::span<const std::string> overrides) {
  for (const auto& text : overrides) {
    const auto eq = text.find('=');
    const auto dot = text.find('.');
    if (eq == std::string::npos || dot == std::string::npos || dot > eq) {
      throw ConfigError(0, 0, "override must look like section.key=value: '" + text + "'");
    }
    const std::string section(trim(std::string_view(text).substr(0, dot)));
    const std::string key(trim(std::string_view(text).substr(dot + 1, eq - dot - 1)));
    if (!key_known(section, key)) {
      throw ConfigError(0, 0, "unknown override key '" + section + "." + key + "'");
    }
    entries[{section, key}] = Entry{std::string(trim(std::string_view(text).substr(eq + 1))),
                                    0, 0};
  }
}

const Entry& require(const EntryMap& entries, const std::string& section,
                     const std::string& key) {
  const auto it = entries.find({section, key});
  if (it == entries.end()) {
    throw ConfigError(0, 0, "missing required key " + section + "." + key);
  }
  return it->second;
}

const Entry* find(const EntryMap& entries, const std::string& section,
                  const std::string& key) {
  const auto it = entries.find({section, key});
  return it == entries.end() ? nullptr : &it->second;
}

IntensityModel::Params parse_intensity(const Entry& e) {
  const auto [name, args] = parse_call(e);
  const auto expect_arity = [&](std::size_t n) {
    if (args.size() != n) {
      throw ConfigError(e.line, e.column,
                        name + " takes " + std::to_string(n) + " parameter(s)");
    }
  };
  if (name == "constant") {
    expect_arity(1);
    return ConstantIntensity{args[0]};
  }
  if (name == "sinusoidal") {
    expect_arity(3);
    return SinusoidalIntensity{args[0], args[1], args[2]};
  }
  if (name == "tanh_ramp") {
    expect_arity(3);
    return TanhRampIntensity{args[0], args[1], args[2]};
  }
  throw ConfigError(e.line, e.column, "unknown intensity family '" + name + "'");
}

PolicySpec parse_policy(const Entry& e) {
  const std::string_view text = trim(std::string_view(e.value));
  if (text == "ilu") return {PolicyKind::kIlu, 0.0};
  if (text == "full_info") return {PolicyKind::kFullInfo, 0.0};
  if (text == "cutoff_ilu") return {PolicyKind::kCutoffIlu, 0.0};
  if (text.rfind("fixed", 0) == 0) {
    const auto [name, args] = parse_call(e);
    if (name == "fixed" && args.size() == 1) return {PolicyKind::kFixed, args[0]};
  }
  throw ConfigError(e.line, e.column,
                    "policy must be ilu, full_info, cutoff_ilu, or fixed(b)");
}

}  // namespace

FileConfig parse_config_text(const std::string& text,
                             std::span<const std::string> overrides) {
  EntryMap entries = parse_entries(text);
  apply_overrides(entries, overrides);

  FileConfig config;
  config.street_start = parse_double(require(entries, "env", "S"));
  config.class_bound = parse_double(require(entries, "env", "L"));
  config.intensity = parse_intensity(require(entries, "intensity", "intensity"));

  if (const auto* e = find(entries, "experiment", "policy")) config.policy = parse_policy(*e);
  if (const auto* e = find(entries, "experiment", "T")) {
    const auto v = parse_integer(*e);
    if (v < 1) throw ConfigError(e->line, e->column, "T must be >= 1");
    config.horizon = static_cast<int>(v);
  }
  if (const auto* e = find(entries, "experiment", "replications")) {
    const auto v = parse_integer(*e);
    if (v < 1) throw ConfigError(e->line, e->column, "replications must be >= 1");
    config.replications = static_cast<int>(v);
  }
  if (const auto* e = find(entries, "experiment", "seed")) config.seed = parse_seed(*e);
  if (const auto* e = find(entries, "experiment", "brute_grid_step")) {
    config.brute_grid_step = parse_double(*e);
    if (!(config.brute_grid_step > 0.0)) {
      throw ConfigError(e->line, e->column, "brute_grid_step must be positive");
    }
  }
  if (const auto* e = find(entries, "experiment", "brute_paths")) {
    const auto v = parse_integer(*e);
    if (v < 2) throw ConfigError(e->line, e->column, "brute_paths must be >= 2");
    config.brute_paths = static_cast<int>(v);
  }
  if (const auto* e = find(entries, "experiment", "mse_n")) {
    config.mse_n = parse_int_list(*e);
    if (config.mse_n.empty() || config.mse_n.front() < 1 ||
        !std::is_sorted(config.mse_n.begin(), config.mse_n.end())) {
      throw ConfigError(e->line, e->column, "mse_n must be an ascending list of sizes >= 1");
    }
  }
  if (const auto* e = find(entries, "experiment", "mse_replications")) {
    const auto v = parse_integer(*e);
    if (v < 2) throw ConfigError(e->line, e->column, "mse_replications must be >= 2");
    config.mse_replications = static_cast<int>(v);
  }

  const auto read_tolerance = [&](const char* key, double* slot) {
    if (const auto* e = find(entries, "tolerances", key)) {
      *slot = parse_double(*e);
      if (!(*slot > 0.0)) {
        throw ConfigError(e->line, e->column, std::string(key) + " must be positive");
      }
    }
  };
  read_tolerance("quad_tol", &config.tol.quad_tol);
  read_tolerance("root_tol", &config.tol.root_tol);
  read_tolerance("tail_tol", &config.tol.tail_tol);
  read_tolerance("indifference_tol", &config.tol.indifference_tol);

  if (const auto* e = find(entries, "output", "directory")) {
    config.output_directory = e->value;
    if (config.output_directory.empty()) {
      throw ConfigError(e->line, e->column, "output directory must not be empty");
    }
  }

  if (config.policy.kind == PolicyKind::kFixed) {
    const double b = config.policy.fixed_threshold;
    if (!(b >= config.street_start && b <= 0.0)) {
      throw ConfigError(0, 0, "fixed policy threshold must lie in [S, 0]");
    }
  }
  return config;
}

FileConfig parse_config_file(const std::string& path,
                             std::span<const std::string> overrides) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(0, 0, "cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), overrides);
}

IntensityModel make_model(const FileConfig& config) {
  return IntensityModel(config.intensity,
                        EnvironmentParams(config.street_start, config.class_bound));
}

ExperimentConfig make_experiment(const FileConfig& config, int jobs) {
  ExperimentConfig experiment{make_model(config),      config.policy,
                              config.horizon,          config.replications,
                              config.seed,             config.tol,
                              jobs};
  return experiment;
}

}  // namespace parking
