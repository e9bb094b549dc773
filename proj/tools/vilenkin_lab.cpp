// vilenkin-lab: command-line front end over the C interface.
//
// Exit codes: 0 all checks pass, 1 some check failed, 2 usage, config,
// capacity or I/O error.

#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vilenkin/vilenkin.h"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitError = 2;

int report_error(const char* context) {
  std::fprintf(stderr, "vilenkin-lab: %s: %s\n", context, vl_last_error());
  return kExitError;
}

struct Owned {
  vl_config* config = nullptr;
  vl_report* report = nullptr;
  char* text = nullptr;
  ~Owned() {
    vl_string_free(text);
    vl_report_free(report);
    vl_config_free(config);
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fourier analysis on bounded Vilenkin groups: verification suites and experiments",
               "vilenkin-lab"};
  app.set_version_flag("--version", std::string(vl_version()));
  app.set_config("--config", "", "flat key=value file mirroring the flags; flags override it");
  app.require_subcommand(1);

  // Every flag is kept as text and handed to the library by name.
  std::map<std::string, std::optional<std::string>> settings;
  auto add = [&](const std::string& name, const std::string& help) {
    // Lists such as 2,3,4 arrive split from a config file; join restores them.
    app.add_option("--" + name, settings[name], help)->join(',');
  };
  add("radix", "comma-separated generators m_k, e.g. 2,3,2,4");
  add("repeat", "cycle the radix list to this length");
  add("resolution", "truncation level N");
  add("p", "exponent(s): 0.5, 1/2 or a comma list");
  add("family", "subsequence family: Mn, Mn+1, Mn+Mprev, list:a,b,... or pattern:top/low");
  add("K", "number of subsequence members");
  add("last-index", "last family index used by the restricted maximal operator");
  add("trials", "random trials");
  add("seed", "random seed");
  add("format", "json or csv");
  add("budget", "cell budget for M_N");
  add("operator", "restricted, maximal, identity or weighted");
  add("generator", "structured, random or combinations");
  add("tolerance", "absolute comparison tolerance");
  add("kernel-tolerance", "kernel comparison tolerance");
  add("depth-span", "atom depths N - j with 1 <= j <= span");
  add("lemma2-resolution", "working resolution of the local kernel scan");
  std::string out;
  std::string regression;
  std::string record;
  app.add_option("--out", out, "output file (default: stdout)");
  app.add_option("--regression", regression, "compare constants against this regression file");
  app.add_option("--record", record, "merge constants into this regression file");

  std::string suite_name;
  auto* suite = app.add_subcommand("suite", "run a verification suite");
  suite->add_option("name", suite_name,
                    "group, system, transform, kernels, lemma2, lemma3, theoremW or watari")
      ->required();
  bool table = false;
  auto* kernel = app.add_subcommand("kernel", "Dirichlet kernel reports");
  kernel->add_flag("--table", table, "emit n, <n>, |n|, rho, ||D_n||_1, ratio rows");
  auto* counterexample = app.add_subcommand("counterexample", "build the divergence counterexample");
  auto* maximal = app.add_subcommand("maximal", "probe an operator norm on random atoms");
  auto* growth = app.add_subcommand("growth", "weak-L_p growth of S_{n_k} f on the counterexample");
  for (auto* sub : {suite, kernel, counterexample, maximal, growth}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  Owned owned;
  if (vl_config_new(&owned.config) != VL_OK) return report_error("config");
  for (const auto& [key, value] : settings) {
    if (value && vl_config_set(owned.config, key.c_str(), value->c_str()) != VL_OK) {
      return report_error(("--" + key).c_str());
    }
  }

  std::string command;
  std::string argument;
  if (suite->parsed()) {
    command = "suite";
    argument = suite_name;
  } else if (kernel->parsed()) {
    command = table ? "kernel_table" : "kernel";
  } else if (counterexample->parsed()) {
    command = "counterexample";
  } else if (maximal->parsed()) {
    command = "maximal";
  } else {
    command = "growth";
  }

  if (vl_run(owned.config, command.c_str(), argument.c_str(), &owned.report) != VL_OK) {
    return report_error(command.c_str());
  }
  if (!regression.empty() && vl_regression_compare(owned.report, regression.c_str()) != VL_OK) {
    return report_error("regression");
  }
  if (!record.empty() && vl_regression_record(owned.report, record.c_str()) != VL_OK) {
    return report_error("record");
  }

  const std::string format = settings["format"].value_or("json");
  if (out.empty()) {
    if (vl_report_render(owned.report, format.c_str(), &owned.text) != VL_OK) {
      return report_error("render");
    }
    std::fputs(owned.text, stdout);
  } else if (vl_report_write(owned.report, format.c_str(), out.c_str()) != VL_OK) {
    return report_error("write");
  }

  const bool passed = vl_report_passed(owned.report) == 1;
  std::fprintf(stderr, "%s %s: %s\n", command.c_str(), argument.c_str(),
               passed ? "all checks passed" : "check failures (see witnesses)");
  return passed ? 0 : kExitFailure;
}
