#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "vilenkin/family.hpp"
#include "vilenkin/harness.hpp"
#include "vilenkin/kernels.hpp"
#include "vilenkin/martingale.hpp"
#include "vilenkin/maximal.hpp"

namespace vilenkin {

namespace {

using nlohmann::json;

std::string fmt(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.12g", v);
  return buffer;
}

Report start(const std::string& name, const SuiteConfig& config, const ResolvedShape& shape) {
  Report report;
  report.name = name;
  report.scope = config.radix + "/N" + std::to_string(shape.resolution);
  report.provenance = {{"config", config.echo()},
                       {"radix", shape.radix->to_string()},
                       {"resolution", shape.resolution},
                       {"seed", config.seed},
                       {"version", kVersion}};
  return report;
}

double single_p(const SuiteConfig& config, double fallback) {
  if (config.p_values.size() > 1) throw_usage("this command takes a single p");
  return config.p_values.empty() ? fallback : config.p_values.front();
}

json spec_json(const CounterexampleSpec& spec) {
  return {{"radix", spec.radix->to_string()}, {"p", spec.p}, {"indices", spec.indices},
          {"resolution", spec.resolution}, {"family", spec.family}};
}

Table terms_table(const std::vector<CounterexampleTerm>& terms) {
  Table table{{"k", "n", "low", "high", "lambda", "atom_scale", "coefficient", "ratio",
               "block_begin", "block_end"},
              {}};
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const auto& t = terms[k];
    table.rows.push_back({static_cast<double>(k), static_cast<double>(t.n),
                          static_cast<double>(t.low), static_cast<double>(t.high), t.lambda,
                          t.atom_scale, t.coefficient, t.ratio,
                          static_cast<double>(t.block_begin), static_cast<double>(t.block_end)});
  }
  return table;
}

/// The doubling surrogate for the divergence and summability conditions.
json surrogate_json(const std::vector<CounterexampleTerm>& terms, double p) {
  json rows = json::array();
  double partial = 0.0;
  for (const auto& t : terms) {
    partial += 1.0 / t.ratio;
    rows.push_back({{"n", t.n}, {"ratio", t.ratio}, {"squared_ratio", t.ratio * t.ratio},
                    {"partial_sum_inverse_ratio", partial}});
  }
  return {{"rule", "squared ratio (M_|n|/M_<n>)^(1-p) at least doubles per step"},
          {"p", p}, {"terms", rows}};
}

}  // namespace

Report growth_experiment(const SuiteConfig& config) {
  const auto shape = resolve_shape(config);
  Report report = start("growth", config, shape);
  const auto& radix = shape.radix;
  const std::size_t N = shape.resolution;
  const double p = single_p(config, 0.5);
  const auto family = SubsequenceFamily::parse(config.family);
  const auto spec = select_subsequence(family, p, config.K ? config.K : 4, N, radix);
  const auto ce = build_counterexample(spec);
  report.extra["spec"] = spec_json(spec);
  report.extra["surrogate"] = surrogate_json(ce.terms, p);

  Table table{{"k", "n", "low", "high", "W", "B", "W_over_B", "II_min", "II_bound"}, {}};
  double min_ratio = std::numeric_limits<double>::infinity();
  bool increasing = true, lower_bound = true;
  json increase_witness, bound_witness;
  double previous = -1.0;
  for (std::size_t k = 0; k < ce.terms.size(); ++k) {
    const auto& term = ce.terms[k];
    const auto s = partial_sum(ce.spectrum, term.n);
    const double W = std::pow(weak_lp_norm(s, p), p);
    const double B = term.ratio;
    min_ratio = std::min(min_ratio, W / B);
    if (W <= previous && increasing) {
      increasing = false;
      increase_witness = {{"k", k}, {"W", W}, {"previous", previous}};
    }
    previous = W;

    // II = S_{n_k} f - S_{M_|n_k|} f on I_{<n>+1}(e_<n>).
    const auto first = partial_sum(ce.spectrum, term.block_begin);
    const double bound = std::pow(static_cast<double>(radix->order(term.low)), (1.0 / p + 1.0) / 2.0) *
                         std::pow(static_cast<double>(radix->order(term.high)), (1.0 / p - 1.0) / 2.0);
    const Index step = radix->order(term.low + 1);
    const Index e = radix->order(term.low);
    double ii_min = std::numeric_limits<double>::infinity();
    for (Index x = e; x < s.size(); x += step) {
      const double ii = std::abs(s[x] - first[x]);
      ii_min = std::min(ii_min, ii);
      if (ii < bound * (1.0 - 1e-9) && lower_bound) {
        lower_bound = false;
        bound_witness = {{"k", k}, {"n", term.n}, {"x", x}, {"II", ii}, {"bound", bound}};
      }
    }
    table.rows.push_back({static_cast<double>(k), static_cast<double>(term.n),
                          static_cast<double>(term.low), static_cast<double>(term.high), W, B,
                          W / B, ii_min, bound});
  }
  report.tables["growth"] = std::move(table);
  report.tables["terms"] = terms_table(ce.terms);
  report.primary_table = "growth";
  report.check("W.strictly_increasing", increasing, "W_k = ||S_{n_k} f||_{p,inf}^p",
               increase_witness);
  report.check("W_over_B.positive", min_ratio > 0.0, "min_k W_k / B_k = " + fmt(min_ratio));
  report.check("II.lower_bound", lower_bound,
               "|II| >= M_<n>^{(1/p+1)/2} M_|n|^{(1/p-1)/2} on I_{<n>+1}(e_<n>)", bound_witness);
  report.constant("min_W_over_B", min_ratio);
  return report;
}

Report kernel_table(const SuiteConfig& config) {
  const auto shape = resolve_shape(config);
  Report report = start("kernel_table", config, shape);
  const auto& radix = shape.radix;
  const Index size = radix->order(shape.resolution);
  Table table{{"n", "low", "high", "rho", "l1_norm", "ratio"}, {}};
  double max_ratio = 0.0;
  Index argmax = 0;
  sweep_dirichlet(radix, shape.resolution, size - 1, [&](Index n, const CylinderFunction& kernel) {
    const auto d = expand(n, *radix);
    const double l1 = lp_quasinorm(kernel, 1.0);
    const double ratio = l1 / static_cast<double>(d.rho + 1);
    if (ratio > max_ratio) max_ratio = ratio, argmax = n;
    table.rows.push_back({static_cast<double>(n), static_cast<double>(d.low),
                          static_cast<double>(d.high), static_cast<double>(d.rho), l1, ratio});
  });
  report.tables["kernel_table"] = std::move(table);
  report.primary_table = "kernel_table";
  report.constant("max_ratio", max_ratio);
  report.extra["argmax_n"] = argmax;
  report.check("max_ratio.finite", std::isfinite(max_ratio), "max ||D_n||_1 / (rho + 1)");
  return report;
}

Report kernel_reports(const SuiteConfig& config) {
  const auto shape = resolve_shape(config);
  Report report = start("kernel", config, shape);
  const auto& radix = shape.radix;
  const std::size_t N = shape.resolution;
  Table table{{"n", "low", "high", "rho", "l1_norm", "max_abs"}, {}};
  bool floor_ok = true;
  json witness;
  sweep_dirichlet(radix, N, radix->order(N), [&](Index n, const CylinderFunction& kernel) {
    const auto r = kernel_report(n, kernel);
    if (r.l1_norm < 1.0 - config.kernel_tolerance && floor_ok) {
      floor_ok = false;
      witness = {{"n", n}, {"l1_norm", r.l1_norm}};
    }
    table.rows.push_back({static_cast<double>(r.n), static_cast<double>(r.low),
                          static_cast<double>(r.high), static_cast<double>(r.rho), r.l1_norm,
                          r.max_abs});
  });
  report.tables["kernels"] = std::move(table);
  report.primary_table = "kernels";
  report.check("l1_at_least_one", floor_ok, "||D_n||_1 >= |integral D_n| = 1", witness);
  return report;
}

Report counterexample_report(const SuiteConfig& config) {
  const auto shape = resolve_shape(config);
  Report report = start("counterexample", config, shape);
  const auto& radix = shape.radix;
  const double p = single_p(config, 0.5);
  const auto family = SubsequenceFamily::parse(config.family);
  const auto spec = select_subsequence(family, p, config.K ? config.K : 3, shape.resolution, radix);
  const auto ce = build_counterexample(spec);

  report.extra["spec"] = spec_json(spec);
  report.extra["surrogate"] = surrogate_json(ce.terms, p);
  json blocks = json::array();
  for (const auto& t : ce.terms) {
    blocks.push_back({{"begin", t.block_begin}, {"end", t.block_end}, {"value", t.coefficient}});
  }
  report.extra["spectrum_blocks"] = blocks;
  report.tables["terms"] = terms_table(ce.terms);
  report.primary_table = "terms";

  double fast = 0.0, direct = 0.0;
  json witness;
  const auto assembled = assemble(ce.decomposition, shape.resolution);
  for (Index j = 0; j < ce.spectrum.size(); ++j) {
    const double expected = ce.closed_form(j);
    const double a = std::abs(ce.spectrum[j] - Complex(expected));
    const double b = std::abs(fourier_coefficient(assembled, j) - Complex(expected));
    if (std::max(a, b) > std::max(fast, direct)) witness = {{"j", j}, {"expected", expected}};
    fast = std::max(fast, a);
    direct = std::max(direct, b);
  }
  const double err = std::max(fast, direct);
  report.check("spectrum.closed_form", err <= 1e-9,
               "fast " + fmt(fast) + ", direct integration " + fmt(direct),
               err <= 1e-9 ? json::object() : witness);
  bool valid = true;
  json atom_witness;
  for (std::size_t k = 0; k < ce.decomposition.atoms.size(); ++k) {
    const auto d = validate_atom(ce.decomposition.atoms[k], config.tolerance);
    if (!d.valid && valid) {
      valid = false;
      atom_witness = {{"k", k}, {"mean", d.mean}, {"sup", d.sup}, {"bound", d.bound},
                      {"off_support", d.off_support}};
    }
  }
  report.check("atoms.valid", valid, "every a_k is a p-atom", atom_witness);
  report.check("martingale.adapted", ce.martingale.adapted(config.tolerance), "f_n adapted");
  const double coefficient_sum = ce.decomposition.coefficient_sum(p);
  const double hardy = hardy_norm(ce.martingale.limit(), p);
  report.constant("coefficient_sum", coefficient_sum);
  report.constant("hardy_norm", hardy);
  report.constant("hardy_over_coefficients", hardy / std::pow(coefficient_sum, 1.0 / p));
  return report;
}

Report probe_report(const SuiteConfig& config) {
  const auto shape = resolve_shape(config);
  Report report = start("maximal", config, shape);
  ProbeOperator op;
  if (config.operator_name == "restricted") {
    op.kind = OperatorKind::Restricted;
    op.family = SubsequenceFamily::parse(config.family);
    op.last_index = config.last_index;
  } else if (config.operator_name == "maximal") {
    op.kind = OperatorKind::Maximal;
  } else if (config.operator_name == "identity") {
    op.kind = OperatorKind::Identity;
  } else if (config.operator_name == "weighted") {
    op.kind = OperatorKind::Weighted;
  } else {
    throw_usage("unknown operator '" + config.operator_name +
                "' (expected restricted, maximal, identity or weighted)");
  }
  ProbeGenerator generator;
  if (config.generator == "structured") {
    generator.kind = GeneratorKind::StructuredAtoms;
  } else if (config.generator == "random") {
    generator.kind = GeneratorKind::RandomAtoms;
  } else if (config.generator == "combinations") {
    generator.kind = GeneratorKind::AtomicCombinations;
  } else {
    throw_usage("unknown generator '" + config.generator +
                "' (expected structured, random or combinations)");
  }
  generator.radix = shape.radix;
  generator.resolution = shape.resolution;
  generator.seed = config.seed;
  generator.depth_span = config.depth_span;
  const std::uint64_t trials = config.trials ? config.trials : 200;

  Table rows{{"p", "trial", "hardy", "image", "ratio", "outside", "skipped"}, {}};
  json summaries = json::array();
  for (double p : config.p_values.empty() ? std::vector<double>{0.5, 1.0} : config.p_values) {
    const auto probe = probe_operator_norm(op, p, trials, generator);
    bool max_ok = true;
    for (const auto& row : probe.rows) {
      rows.rows.push_back({p, static_cast<double>(row.trial), row.hardy, row.image, row.ratio,
                           row.outside, row.skipped ? 1.0 : 0.0});
      if (!row.skipped && row.ratio > probe.max_ratio) max_ok = false;
    }
    const std::string tag = probe.operator_id + ".p=" + fmt(p);
    report.constant(tag + ".max_ratio", probe.max_ratio);
    report.constant(tag + ".skipped", static_cast<double>(probe.skipped), true);
    report.check(tag + ".max_dominates_rows", max_ok, "max ratio >= every row ratio");
    summaries.push_back({{"operator", probe.operator_id}, {"p", p}, {"trials", probe.trials},
                         {"skipped", probe.skipped}, {"max_ratio", probe.max_ratio},
                         {"argmax_trial", probe.argmax_trial},
                         {"argmax_description", probe.argmax_description},
                         {"max_outside", probe.max_outside},
                         {"truncation_M_N", shape.radix->order(shape.resolution)}});
  }
  report.tables["rows"] = std::move(rows);
  report.primary_table = "rows";
  report.extra["probes"] = summaries;
  return report;
}

Report run_command(const std::string& command, const std::string& argument,
                   const SuiteConfig& config) {
  if (command == "suite") return run_suite(argument, config);
  if (command == "kernel") return kernel_reports(config);
  if (command == "kernel_table") return kernel_table(config);
  if (command == "counterexample") return counterexample_report(config);
  if (command == "maximal") return probe_report(config);
  if (command == "growth") return growth_experiment(config);
  throw_usage("unknown command '" + command + "'");
}

}  // namespace vilenkin
