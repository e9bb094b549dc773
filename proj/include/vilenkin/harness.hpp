#pragma once

// Verification suites, experiment drivers and report emission.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "vilenkin/group.hpp"

namespace vilenkin {

inline constexpr const char* kVersion = "1.0.0";

struct SuiteConfig {
  std::string radix = "2";
  std::size_t repeat = 0;       // 0: cycle the pattern to length N + 1
  std::size_t resolution = 0;   // 0: 12 for Walsh, 8 otherwise
  std::vector<double> p_values; // empty: command default
  double tolerance = 1e-10;
  double kernel_tolerance = 1e-9;
  std::uint64_t seed = 1;
  std::uint64_t trials = 0;     // 0: command default
  std::size_t K = 0;            // 0: command default
  std::optional<std::size_t> last_index;
  std::string family = "Mn+1";
  std::string operator_name = "restricted";
  std::string generator = "structured";
  std::size_t lemma2_resolution = 6;
  std::size_t depth_span = 4;
  Index budget = 65536;
  std::string format = "json";
  std::string out;

  /// Sets one field from its flag or config-file spelling.
  void set(const std::string& key, const std::string& value);
  nlohmann::json echo() const;
};

/// Radix and resolution implied by a config, with the budget guard applied.
struct ResolvedShape {
  Radix radix;
  std::size_t resolution = 0;
};
ResolvedShape resolve_shape(const SuiteConfig& config);

struct Check {
  std::string id;
  bool passed = true;
  std::string detail;
  nlohmann::json witness = nlohmann::json::object();
};

struct Constant {
  double value = 0.0;
  bool integral = false;
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct Report {
  std::string name;
  /// Radix list and resolution; prefixes regression keys.
  std::string scope;
  std::vector<Check> checks;
  std::map<std::string, Constant> constants;
  std::map<std::string, Table> tables;
  /// Name of the table emitted as CSV; empty for the checks table.
  std::string primary_table;
  nlohmann::json extra = nlohmann::json::object();
  nlohmann::json provenance = nlohmann::json::object();

  bool passed() const;
  Check& check(std::string id, bool passed, std::string detail = {},
               nlohmann::json witness = nlohmann::json::object());
  void constant(const std::string& key, double value, bool integral = false);
};

extern const std::vector<std::string> kSuiteNames;

/// name in {group, system, transform, kernels, lemma2, lemma3, theoremW, watari}.
Report run_suite(const std::string& name, const SuiteConfig& config);

/// Divergence experiment: W_k = ||S_{n_k} f||_{p,inf}^p against
/// B_k = (M_|n_k| / M_<n_k>)^{(1-p)/2} on the counterexample.
Report growth_experiment(const SuiteConfig& config);

/// Rows (n, <n>, |n|, rho, ||D_n||_1, ||D_n||_1 / (rho + 1)) for 1 <= n < M_N.
Report kernel_table(const SuiteConfig& config);

/// KernelReport rows for 1 <= n <= M_N.
Report kernel_reports(const SuiteConfig& config);

Report counterexample_report(const SuiteConfig& config);

/// Operator-norm probe for each p in the config.
Report probe_report(const SuiteConfig& config);

/// Dispatch by CLI command: suite, kernel, kernel_table, counterexample,
/// maximal, growth.
Report run_command(const std::string& command, const std::string& argument,
                   const SuiteConfig& config);

nlohmann::json to_json(const Report& report);
std::string render(const Report& report, const std::string& format);
void emit(const Report& report, const std::string& format, const std::string& path);

/// Round to 12 significant digits, the precision of every emitted float.
double round12(double value);

/// Flat "key = value" store of pinned empirical constants.
class RegressionStore {
 public:
  static RegressionStore load(const std::string& path);
  void save(const std::string& path) const;

  /// Stores every constant of the report under "<name>@<scope>.<key>".
  void record(const Report& report);
  /// Adds one regression check per recorded constant of the report.
  void compare(Report& report, double relative_tolerance = 1e-9) const;

  const std::map<std::string, std::string>& entries() const { return entries_; }

 private:
  std::map<std::string, std::string> entries_;
};

}  // namespace vilenkin
