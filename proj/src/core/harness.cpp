#include "vilenkin/harness.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "vilenkin/error.hpp"

namespace vilenkin {

namespace {

std::uint64_t parse_unsigned(const std::string& key, const std::string& value) {
  char* end = nullptr;
  errno = 0;
  const auto parsed = std::strtoull(value.c_str(), &end, 10);
  if (value.empty() || value.front() == '-' || *end != '\0' || errno != 0) {
    throw_usage("invalid value '" + value + "' for " + key + " (expected a non-negative integer)");
  }
  return parsed;
}

double parse_real(const std::string& key, const std::string& value) {
  char* end = nullptr;
  const double parsed = std::strtod(value.c_str(), &end);
  if (value.empty() || *end != '\0' || !std::isfinite(parsed)) {
    throw_usage("invalid value '" + value + "' for " + key + " (expected a number)");
  }
  return parsed;
}

/// Accepts "0.5", "1/2" and comma lists of either.
std::vector<double> parse_p_list(const std::string& value) {
  std::vector<double> out;
  std::stringstream stream(value);
  std::string token;
  while (std::getline(stream, token, ',')) {
    const auto slash = token.find('/');
    if (slash == std::string::npos) {
      out.push_back(parse_real("p", token));
    } else {
      const double num = parse_real("p", token.substr(0, slash));
      const double den = parse_real("p", token.substr(slash + 1));
      if (den == 0.0) throw_usage("invalid value '" + token + "' for p");
      out.push_back(num / den);
    }
  }
  if (out.empty()) throw_usage("empty p list");
  for (double p : out) {
    if (!(p > 0.0)) throw_usage("p must be positive, got " + value);
  }
  return out;
}

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.12g", value);
  return buffer;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void round_floats(nlohmann::json& value) {
  if (value.is_number_float()) {
    const double v = value.get<double>();
    value = std::isfinite(v) ? nlohmann::json(round12(v)) : nlohmann::json(nullptr);
  } else if (value.is_structured()) {
    for (auto& item : value) round_floats(item);
  }
}

}  // namespace

void SuiteConfig::set(const std::string& key, const std::string& value) {
  if (key == "radix") {
    radix = value;
  } else if (key == "repeat") {
    repeat = parse_unsigned(key, value);
  } else if (key == "resolution" || key == "N") {
    resolution = parse_unsigned(key, value);
  } else if (key == "p") {
    p_values = parse_p_list(value);
  } else if (key == "tolerance") {
    tolerance = parse_real(key, value);
  } else if (key == "kernel-tolerance" || key == "kernel_tolerance") {
    kernel_tolerance = parse_real(key, value);
  } else if (key == "seed") {
    seed = parse_unsigned(key, value);
  } else if (key == "trials") {
    trials = parse_unsigned(key, value);
  } else if (key == "K") {
    K = parse_unsigned(key, value);
  } else if (key == "last-index" || key == "last_index") {
    last_index = parse_unsigned(key, value);
  } else if (key == "family") {
    family = value;
  } else if (key == "operator") {
    operator_name = value;
  } else if (key == "generator") {
    generator = value;
  } else if (key == "lemma2-resolution" || key == "lemma2_resolution") {
    lemma2_resolution = parse_unsigned(key, value);
  } else if (key == "depth-span" || key == "depth_span") {
    depth_span = parse_unsigned(key, value);
  } else if (key == "budget") {
    budget = parse_unsigned(key, value);
  } else if (key == "format") {
    if (value != "json" && value != "csv") throw_usage("format must be json or csv, got " + value);
    format = value;
  } else if (key == "out") {
    out = value;
  } else {
    throw_usage("unknown configuration key '" + key + "'");
  }
}

nlohmann::json SuiteConfig::echo() const {
  nlohmann::json j;
  j["radix"] = radix;
  j["repeat"] = repeat;
  j["resolution"] = resolution;
  j["p"] = p_values;
  j["tolerance"] = tolerance;
  j["kernel_tolerance"] = kernel_tolerance;
  j["seed"] = seed;
  j["trials"] = trials;
  j["K"] = K;
  j["last_index"] = last_index ? nlohmann::json(*last_index) : nlohmann::json(nullptr);
  j["family"] = family;
  j["operator"] = operator_name;
  j["generator"] = generator;
  j["lemma2_resolution"] = lemma2_resolution;
  j["depth_span"] = depth_span;
  j["budget"] = budget;
  j["format"] = format;
  return j;
}

ResolvedShape resolve_shape(const SuiteConfig& config) {
  const auto pattern = RadixSequence::parse(config.radix);
  const auto generators = pattern.generators();
  const bool walsh = std::all_of(generators.begin(), generators.end(),
                                 [](unsigned m) { return m == 2; });
  const std::size_t N = config.resolution ? config.resolution : (walsh ? 12 : 8);
  const std::size_t length = config.repeat ? config.repeat : std::max(N + 1, pattern.capacity());
  ResolvedShape shape{parse_radix(config.radix, length), N};
  if (N > shape.radix->capacity()) {
    throw_capacity("resolution " + std::to_string(N) + " exceeds radix length " +
                   std::to_string(shape.radix->capacity()));
  }
  if (shape.radix->order(N) > config.budget) {
    throw_capacity("M_N = " + std::to_string(shape.radix->order(N)) +
                   " exceeds the cell budget " + std::to_string(config.budget));
  }
  return shape;
}

bool Report::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

Check& Report::check(std::string id, bool ok, std::string detail, nlohmann::json witness) {
  if (witness.is_null()) witness = nlohmann::json::object();
  if (!ok && witness.empty()) witness["note"] = "no witness point";
  checks.push_back(Check{std::move(id), ok, std::move(detail), std::move(witness)});
  return checks.back();
}

void Report::constant(const std::string& key, double value, bool integral) {
  constants[key] = Constant{value, integral};
}

double round12(double value) {
  if (!std::isfinite(value) || value == 0.0) return value;
  return std::strtod(format_double(value).c_str(), nullptr);
}

nlohmann::json to_json(const Report& report) {
  nlohmann::json j;
  j["name"] = report.name;
  j["scope"] = report.scope;
  j["passed"] = report.passed();
  auto checks = report.checks;
  std::stable_sort(checks.begin(), checks.end(),
                   [](const Check& a, const Check& b) { return a.id < b.id; });
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks) {
    j["checks"].push_back(
        {{"id", c.id}, {"passed", c.passed}, {"detail", c.detail}, {"witness", c.witness}});
  }
  j["constants"] = nlohmann::json::object();
  for (const auto& [key, c] : report.constants) {
    j["constants"][key] = c.integral ? nlohmann::json(static_cast<std::int64_t>(c.value))
                                     : nlohmann::json(c.value);
  }
  j["tables"] = nlohmann::json::object();
  for (const auto& [key, table] : report.tables) {
    j["tables"][key] = {{"columns", table.columns}, {"rows", table.rows}};
  }
  j["extra"] = report.extra;
  j["provenance"] = report.provenance;
  round_floats(j);
  return j;
}

std::string render(const Report& report, const std::string& format) {
  if (format == "json") return to_json(report).dump(2) + "\n";
  if (format != "csv") throw_usage("format must be json or csv, got " + format);
  std::ostringstream out;
  if (!report.primary_table.empty()) {
    const auto& table = report.tables.at(report.primary_table);
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
      out << (i ? "," : "") << table.columns[i];
    }
    out << '\n';
    for (const auto& row : table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_double(row[i]);
      out << '\n';
    }
    for (const auto& [key, c] : report.constants) {
      out << "# " << key << '=' << format_double(c.value) << '\n';
    }
    for (const auto& c : report.checks) {
      out << "# check " << c.id << ' ' << (c.passed ? "PASS" : "FAIL") << '\n';
    }
    return out.str();
  }
  out << "check,passed,detail\n";
  auto checks = report.checks;
  std::stable_sort(checks.begin(), checks.end(),
                   [](const Check& a, const Check& b) { return a.id < b.id; });
  for (const auto& c : checks) {
    out << csv_field(c.id) << ',' << (c.passed ? 1 : 0) << ',' << csv_field(c.detail) << '\n';
  }
  for (const auto& [key, c] : report.constants) {
    out << "# " << key << '=' << format_double(c.value) << '\n';
  }
  return out.str();
}

void emit(const Report& report, const std::string& format, const std::string& path) {
  const auto text = render(report, format);
  std::ofstream file(path, std::ios::binary);
  if (!file) throw_io("cannot open '" + path + "' for writing");
  file << text;
  if (!file) throw_io("write to '" + path + "' failed");
}

RegressionStore RegressionStore::load(const std::string& path) {
  RegressionStore store;
  std::ifstream file(path);
  if (!file) throw_io("cannot open regression file '" + path + "'");
  std::string line;
  std::size_t number = 0;
  while (std::getline(file, line)) {
    ++number;
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.rfind('=');
    if (eq == std::string::npos) {
      throw_io(path + ":" + std::to_string(number) + ": expected key = value");
    }
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    store.entries_[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return store;
}

void RegressionStore::save(const std::string& path) const {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw_io("cannot open regression file '" + path + "' for writing");
  file << "# Pinned empirical constants: integers compare exactly, floats to 1e-9 relative.\n";
  for (const auto& [key, value] : entries_) file << key << " = " << value << '\n';
  if (!file) throw_io("write to '" + path + "' failed");
}

namespace {
std::string regression_key(const Report& report, const std::string& key) {
  return report.name + "@" + report.scope + "." + key;
}
}  // namespace

void RegressionStore::record(const Report& report) {
  for (const auto& [key, c] : report.constants) {
    char buffer[64];
    if (c.integral) {
      std::snprintf(buffer, sizeof buffer, "%lld", static_cast<long long>(c.value));
    } else {
      std::snprintf(buffer, sizeof buffer, "%.17g", c.value);
    }
    entries_[regression_key(report, key)] = buffer;
  }
}

void RegressionStore::compare(Report& report, double relative_tolerance) const {
  std::vector<Check> added;
  for (const auto& [key, c] : report.constants) {
    const auto full = regression_key(report, key);
    const auto it = entries_.find(full);
    Check check;
    check.id = "regression." + key;
    if (it == entries_.end()) {
      check.passed = false;
      check.detail = "no recorded value for " + full;
      check.witness = {{"key", full}, {"observed", c.value}};
      added.push_back(std::move(check));
      continue;
    }
    const double pinned = std::strtod(it->second.c_str(), nullptr);
    const bool ok = c.integral
                        ? static_cast<long long>(c.value) == std::strtoll(it->second.c_str(), nullptr, 10)
                        : std::abs(c.value - pinned) <=
                              relative_tolerance * std::max(1.0, std::abs(pinned));
    check.passed = ok;
    check.detail = "observed " + format_double(c.value) + ", pinned " + it->second;
    check.witness = {{"key", full}, {"observed", c.value}, {"pinned", pinned}};
    added.push_back(std::move(check));
  }
  for (auto& check : added) report.checks.push_back(std::move(check));
}

}  // namespace vilenkin
