#include "vilenkin/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vilenkin/characters.hpp"
#include "vilenkin/kernels.hpp"

namespace vilenkin {

namespace {

void raise_to_magnitude(CylinderFunction& out, const CylinderFunction& g) {
  for (Index t = 0; t < g.size(); ++t) {
    const double v = std::abs(g[t]);
    if (v > out[t].real()) out[t] = v;
  }
}

GroupPoint random_shift(const Radix& radix, std::size_t resolution, std::size_t depth,
                        std::mt19937_64& engine) {
  std::vector<unsigned> coords(resolution, 0u);
  for (std::size_t j = 0; j < depth; ++j) {
    coords[j] = static_cast<unsigned>(engine() % radix->m(j));
  }
  return GroupPoint(radix, std::move(coords));
}

std::size_t draw_depth(const ProbeGenerator& generator, std::mt19937_64& engine) {
  const std::size_t span = std::min(generator.depth_span, generator.resolution);
  return generator.resolution - 1 - static_cast<std::size_t>(engine() % span);
}

}  // namespace

CylinderFunction restricted_maximal(const Spectrum& spectrum, const std::vector<Index>& indices) {
  CylinderFunction out(spectrum.radix(), spectrum.resolution());
  for (Index alpha : indices) {
    if (alpha > spectrum.size()) {
      throw_capacity("subsequence index " + std::to_string(alpha) + " exceeds M_N = " +
                     std::to_string(spectrum.size()));
    }
    raise_to_magnitude(out, partial_sum(spectrum, alpha));
  }
  return out;
}

CylinderFunction restricted_maximal(const CylinderFunction& f, const SubsequenceFamily& family,
                                    std::size_t last_index) {
  std::vector<Index> indices;
  for (std::size_t k = 0; k <= last_index; ++k) {
    auto alpha = family.member(k, *f.radix());
    if (!alpha || *alpha > f.size()) {
      throw_capacity("alpha_" + std::to_string(k) + " of family " + family.name() +
                     " exceeds M_N = " + std::to_string(f.size()));
    }
    indices.push_back(*alpha);
  }
  return restricted_maximal(forward(f), indices);
}

CylinderFunction weighted_maximal(const CylinderFunction& f, double p) {
  if (!(p > 0.0 && p <= 1.0)) throw_domain("weighted maximal operator needs 0 < p <= 1");
  const auto spectrum = forward(f);
  const auto& radix = *f.radix();
  const std::size_t N = f.resolution();
  const bool log_factor = p >= 1.0;  // [p] = 1 only at p = 1
  std::vector<Complex> partial(f.size());
  CylinderFunction out(f.radix(), N);
  for (Index n = 1; n <= f.size(); ++n) {
    const Complex coefficient = spectrum[n - 1];
    if (coefficient != Complex{}) {
      for (Index x = 0; x < f.size(); ++x) partial[x] += coefficient * character(radix, N, n - 1, x);
    }
    const double arg = static_cast<double>(n + 1);
    double weight = std::pow(arg, 1.0 / p - 1.0);
    if (log_factor) weight *= std::log(arg);
    for (Index x = 0; x < f.size(); ++x) {
      const double v = std::abs(partial[x]) / weight;
      if (v > out[x].real()) out[x] = v;
    }
  }
  return out;
}

std::string ProbeOperator::id() const {
  switch (kind) {
    case OperatorKind::Identity: return "identity";
    case OperatorKind::Maximal: return "maximal";
    case OperatorKind::Weighted: return "weighted";
    case OperatorKind::Restricted: {
      std::string out = "restricted:" + (family ? family->name() : std::string("?"));
      if (last_index) out += ":K=" + std::to_string(*last_index);
      return out;
    }
  }
  return "?";
}

CylinderFunction ProbeOperator::apply(const CylinderFunction& f, double p) const {
  switch (kind) {
    case OperatorKind::Identity: return f;
    case OperatorKind::Maximal: return maximal_function(f);
    case OperatorKind::Weighted: return weighted_maximal(f, p);
    case OperatorKind::Restricted: {
      if (!family) throw_usage("restricted operator needs a family");
      auto last = last_index ? last_index : last_member_within(*family, f.size(), *f.radix());
      if (!last) throw_capacity("family " + family->name() + " has no member <= M_N");
      return restricted_maximal(f, *family, *last);
    }
  }
  throw_usage("unknown operator");
}

std::mt19937_64 trial_engine(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq sequence{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                         static_cast<std::uint32_t>(trial),
                         static_cast<std::uint32_t>(trial >> 32)};
  return std::mt19937_64(sequence);
}

Atom random_phase_atom(const Radix& radix, std::size_t resolution, std::size_t depth, double p,
                       std::mt19937_64& engine) {
  if (depth >= resolution) throw_domain("atom support depth must be below the resolution");
  const Index Md = radix->order(depth);
  const Index cells = radix->order(resolution) / Md;
  std::vector<Complex> pattern(cells);
  Complex mean{};
  for (auto& z : pattern) {
    z = std::polar(1.0, 2.0 * std::numbers::pi * uniform01(engine));
    mean += z;
  }
  mean /= static_cast<double>(cells);
  double sup = 0.0;
  for (auto& z : pattern) {
    z -= mean;
    sup = std::max(sup, std::abs(z));
  }
  if (sup < 1e-12) {
    // Degenerate draw: fall back to r_depth restricted to the support.
    for (Index q = 0; q < cells; ++q) pattern[q] = radix->root(depth, static_cast<unsigned>(q % radix->m(depth)));
    sup = 1.0;
  }
  const double scale = std::pow(static_cast<double>(Md), 1.0 / p) / sup;
  const auto shift = random_shift(radix, resolution, depth, engine);
  const Index base = rank(shift);
  CylinderFunction values(radix, resolution);
  for (Index q = 0; q < cells; ++q) values[base + q * Md] = scale * pattern[q];
  return Atom{Interval(shift, depth), std::move(values), p};
}

Atom block_atom(const Radix& radix, std::size_t resolution, std::size_t depth, double p,
                const GroupPoint& shift) {
  if (depth >= resolution) throw_domain("atom support depth must be below the resolution");
  const auto pattern =
      dirichlet_block(depth + 1, resolution, radix) - dirichlet_block(depth, resolution, radix);
  const double Md = static_cast<double>(radix->order(depth));
  const double sup = (radix->m(depth) - 1) * Md;
  const double scale = std::pow(Md, 1.0 / p) / sup;
  const Index y = rank(shift);
  auto values = tabulate(radix, resolution, [&](Index x) {
    return scale * pattern[sub_ranks(*radix, resolution, x, y)];
  });
  return Atom{Interval(shift, depth), std::move(values), p};
}

GeneratedInput generate_input(const ProbeGenerator& generator, double p, std::uint64_t trial) {
  if (!generator.radix || generator.resolution == 0) {
    throw_usage("probe generator needs a radix and a resolution >= 1");
  }
  if (generator.depth_span == 0) throw_usage("probe generator depth span must be positive");
  auto engine = trial_engine(generator.seed, trial);
  const auto& radix = generator.radix;
  const std::size_t N = generator.resolution;

  auto single = [&](bool block) {
    const std::size_t depth = draw_depth(generator, engine);
    Atom atom = block ? block_atom(radix, N, depth, p, random_shift(radix, N, depth, engine))
                      : random_phase_atom(radix, N, depth, p, engine);
    const std::string description = std::string(block ? "block" : "phase") +
                                    " d=" + std::to_string(depth) +
                                    " y=" + std::to_string(rank(atom.support.base()));
    return GeneratedInput{std::move(atom.values), atom.support, description};
  };

  switch (generator.kind) {
    case GeneratorKind::StructuredAtoms: return single(trial % 2 == 0);
    case GeneratorKind::RandomAtoms: return single(false);
    case GeneratorKind::AtomicCombinations: {
      CylinderFunction sum(radix, N);
      for (std::size_t term = 0; term < generator.combination_terms; ++term) {
        const std::size_t depth = draw_depth(generator, engine);
        const double lambda = 2.0 * uniform01(engine) - 1.0;
        auto atom = random_phase_atom(radix, N, depth, p, engine);
        sum += Complex{lambda, 0.0} * atom.values;
      }
      return GeneratedInput{std::move(sum), std::nullopt,
                            "combination of " + std::to_string(generator.combination_terms)};
    }
  }
  throw_usage("unknown generator");
}

ProbeReport probe_operator_norm(const ProbeOperator& op, double p, std::uint64_t trials,
                                const ProbeGenerator& generator) {
  if (trials == 0) throw_usage("probe needs at least one trial");
  if (!(p > 0.0)) throw_domain("probe needs p > 0");
  ProbeReport report;
  report.operator_id = op.id();
  report.p = p;
  report.resolution = generator.resolution;
  report.trials = trials;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    auto input = generate_input(generator, p, trial);
    ProbeRow row;
    row.trial = trial;
    row.description = input.description;
    row.hardy = hardy_norm(input.function, p);
    if (!(row.hardy > 0.0)) {
      row.skipped = true;
      ++report.skipped;
      report.rows.push_back(std::move(row));
      continue;
    }
    const auto image = op.apply(input.function, p);
    row.image = lp_quasinorm(image, p);
    row.ratio = row.image / row.hardy;
    if (input.support) {
      const auto& radix = *generator.radix;
      const std::size_t depth = input.support->depth();
      const Index Md = radix.order(depth);
      const Index base = rank(input.support->base()) % Md;
      double acc = 0.0;
      for (Index t = 0; t < image.size(); ++t) {
        if (t % Md != base) acc += std::pow(std::abs(image[t]), p);
      }
      row.outside = acc / static_cast<double>(image.size());
      report.max_outside = std::max(report.max_outside, row.outside);
    }
    if (row.ratio > report.max_ratio) {
      report.max_ratio = row.ratio;
      report.argmax_trial = trial;
      report.argmax_description = row.description;
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace vilenkin
