#include "vilenkin/martingale.hpp"

#include <algorithm>
#include <cmath>

#include "vilenkin/kernels.hpp"

namespace vilenkin {

namespace {

void require_level(const CylinderFunction& f, std::size_t n) {
  if (n > f.resolution()) {
    throw_capacity("level " + std::to_string(n) + " exceeds the resolution " +
                   std::to_string(f.resolution()));
  }
}

// Coset sums of f over I_n, indexed by rank mod M_n.
std::vector<Complex> coset_averages(const CylinderFunction& f, std::size_t n) {
  const Index Mn = f.radix()->order(n);
  std::vector<Complex> sums(Mn);
  for (Index t = 0; t < f.size(); ++t) sums[t % Mn] += f[t];
  const double scale = static_cast<double>(Mn) / static_cast<double>(f.size());
  for (auto& s : sums) s *= scale;
  return sums;
}

}  // namespace

CylinderFunction condexp(const CylinderFunction& f, std::size_t n) {
  require_level(f, n);
  const auto averages = coset_averages(f, n);
  const Index Mn = averages.size();
  return tabulate(f.radix(), f.resolution(), [&](Index t) { return averages[t % Mn]; });
}

CylinderFunction restrict_level(const CylinderFunction& f, std::size_t n) {
  require_level(f, n);
  return CylinderFunction(f.radix(), n, coset_averages(f, n));
}

CylinderFunction lift(const CylinderFunction& g, std::size_t resolution) {
  if (resolution < g.resolution()) throw_usage("lift target is coarser than the function");
  const Index Mn = g.size();
  return tabulate(g.radix(), resolution, [&](Index t) { return g[t % Mn]; });
}

CylinderFunction maximal_function(const CylinderFunction& f) {
  const auto& radix = *f.radix();
  std::vector<Complex> level(f.values().begin(), f.values().end());
  CylinderFunction out(f.radix(), f.resolution());
  for (Index t = 0; t < f.size(); ++t) out[t] = std::abs(f[t]);
  // Walk down from level N to level 0, averaging m_n children per coset.
  for (std::size_t n = f.resolution(); n-- > 0;) {
    const Index Mn = radix.order(n);
    const unsigned mn = radix.m(n);
    std::vector<Complex> coarser(Mn);
    for (Index r = 0; r < Mn; ++r) {
      Complex acc{};
      for (unsigned u = 0; u < mn; ++u) acc += level[r + u * Mn];
      coarser[r] = acc / static_cast<double>(mn);
    }
    for (Index t = 0; t < f.size(); ++t) {
      const double v = std::abs(coarser[t % Mn]);
      if (v > out[t].real()) out[t] = v;
    }
    level = std::move(coarser);
  }
  return out;
}

double hardy_norm(const CylinderFunction& f, double p) {
  if (!(p > 0.0)) throw_domain("Hardy norm needs p > 0");
  return lp_quasinorm(maximal_function(f), p);
}

Martingale::Martingale(std::vector<CylinderFunction> levels) : levels_(std::move(levels)) {
  if (levels_.empty()) throw_usage("martingale needs at least level 0");
  for (std::size_t n = 0; n < levels_.size(); ++n) {
    if (levels_[n].resolution() != n) {
      throw_usage("martingale level " + std::to_string(n) + " has resolution " +
                  std::to_string(levels_[n].resolution()));
    }
    if (!(*levels_[n].radix() == *levels_[0].radix())) {
      throw_usage("martingale levels use different radices");
    }
  }
}

Martingale Martingale::from_function(const CylinderFunction& f) {
  std::vector<CylinderFunction> levels;
  levels.reserve(f.resolution() + 1);
  for (std::size_t n = 0; n <= f.resolution(); ++n) levels.push_back(restrict_level(f, n));
  return Martingale(std::move(levels));
}

double Martingale::adaptedness_defect() const {
  double worst = 0.0;
  for (std::size_t n = 0; n + 1 < levels_.size(); ++n) {
    const auto averaged = restrict_level(levels_[n + 1], n);
    worst = std::max(worst, max_abs_diff(averaged, levels_[n]));
  }
  return worst;
}

AtomDiagnostics validate_atom(const Atom& atom, double tolerance) {
  AtomDiagnostics diag;
  const auto& values = atom.values;
  const auto& radix = *values.radix();
  const std::size_t depth = atom.support.depth();
  if (!(*atom.support.base().radix() == radix) || depth > values.resolution()) {
    diag.valid = false;
    diag.problems.push_back("support interval does not match the atom's radix/resolution");
    return diag;
  }
  if (!(atom.p > 0.0 && atom.p <= 1.0)) {
    diag.valid = false;
    diag.problems.push_back("p must lie in (0, 1]");
    return diag;
  }
  const Index Md = radix.order(depth);
  Index base = 0;
  for (std::size_t j = depth; j-- > 0;) base = base * radix.m(j) + atom.support.base()[j];

  Complex integral{};
  for (Index t = 0; t < values.size(); ++t) {
    const double a = std::abs(values[t]);
    diag.sup = std::max(diag.sup, a);
    if (t % Md == base) {
      integral += values[t];
    } else {
      diag.off_support = std::max(diag.off_support, a);
    }
  }
  diag.mean = std::abs(integral) / static_cast<double>(values.size());
  diag.bound = std::pow(static_cast<double>(Md), 1.0 / atom.p);

  const double scale = std::max(1.0, diag.sup / static_cast<double>(Md));
  if (diag.mean > tolerance * scale) {
    diag.valid = false;
    diag.problems.push_back("nonzero mean on the support: " + std::to_string(diag.mean));
  }
  if (diag.sup > diag.bound * (1.0 + tolerance)) {
    diag.valid = false;
    diag.problems.push_back("sup norm " + std::to_string(diag.sup) + " exceeds mu(I)^{-1/p} = " +
                            std::to_string(diag.bound));
  }
  if (diag.off_support > tolerance * scale) {
    diag.valid = false;
    diag.problems.push_back("nonzero values outside the support: " +
                            std::to_string(diag.off_support));
  }
  return diag;
}

double AtomicDecomposition::coefficient_sum(double p) const {
  double acc = 0.0;
  for (double c : coefficients) acc += std::pow(std::abs(c), p);
  return acc;
}

CylinderFunction assemble(const AtomicDecomposition& decomposition, std::size_t n) {
  if (decomposition.coefficients.size() != decomposition.atoms.size()) {
    throw_usage("decomposition has mismatched coefficient and atom counts");
  }
  if (!decomposition.radix) throw_usage("decomposition has no radix");
  CylinderFunction out(decomposition.radix, decomposition.resolution);
  require_level(out, n);
  for (std::size_t k = 0; k < decomposition.atoms.size(); ++k) {
    if (!out.same_shape(decomposition.atoms[k].values)) {
      throw_usage("atom " + std::to_string(k) + " does not match the decomposition shape");
    }
    out += Complex{decomposition.coefficients[k], 0.0} * condexp(decomposition.atoms[k].values, n);
  }
  return out;
}

void validate(const CounterexampleSpec& spec) {
  if (!spec.radix) throw_domain("counterexample spec has no radix");
  if (!(spec.p > 0.0 && spec.p < 1.0)) throw_domain("violated: 0 < p < 1");
  if (spec.indices.empty()) throw_domain("violated: at least one index n_k");
  if (spec.resolution > spec.radix->capacity()) {
    throw_capacity("violated: N <= radix capacity");
  }
  if (spec.indices.front() < 3) throw_domain("violated: n_0 >= 3");
  std::size_t previous_high = 0;
  for (std::size_t k = 0; k < spec.indices.size(); ++k) {
    const Index n = spec.indices[k];
    if (k > 0 && n <= spec.indices[k - 1]) throw_domain("violated: n_k strictly increasing");
    const auto digits = expand(n, *spec.radix);
    if (digits.high + 1 > spec.resolution) {
      throw_domain("violated: |n_k| + 1 <= N for n_" + std::to_string(k) + " = " +
                   std::to_string(n));
    }
    if (k > 0 && digits.high <= previous_high) {
      throw_domain("violated: |n_k| strictly increasing (coefficient blocks must be disjoint)");
    }
    previous_high = digits.high;
  }
}

double Counterexample::closed_form(Index j) const {
  for (const auto& term : terms) {
    if (j >= term.block_begin && j < term.block_end) return term.coefficient;
  }
  return 0.0;
}

Counterexample build_counterexample(const CounterexampleSpec& spec) {
  validate(spec);
  const auto& radix = spec.radix;
  const std::size_t N = spec.resolution;
  const double p = spec.p;
  const double m_star = radix->m_star();
  const double half_exponent = (1.0 / p - 1.0) / 2.0;

  std::vector<CounterexampleTerm> terms;
  AtomicDecomposition decomposition;
  decomposition.radix = radix;
  decomposition.resolution = N;
  for (Index n : spec.indices) {
    const auto digits = expand(n, *radix);
    const double M_low = static_cast<double>(radix->order(digits.low));
    const double M_high = static_cast<double>(radix->order(digits.high));
    CounterexampleTerm term;
    term.n = n;
    term.low = digits.low;
    term.high = digits.high;
    term.lambda = m_star * std::pow(M_low, half_exponent) / std::pow(M_high, half_exponent);
    term.atom_scale = std::pow(M_high, 1.0 / p - 1.0) / m_star;
    term.coefficient = std::pow(M_low, half_exponent) * std::pow(M_high, half_exponent);
    term.ratio = std::pow(M_high / M_low, (1.0 - p) / 2.0);
    term.block_begin = radix->order(digits.high);
    term.block_end = radix->order(digits.high + 1);

    auto values = dirichlet_block(digits.high + 1, N, radix) - dirichlet_block(digits.high, N, radix);
    values *= Complex{term.atom_scale, 0.0};
    decomposition.coefficients.push_back(term.lambda);
    decomposition.atoms.push_back(
        Atom{Interval(GroupPoint::zero(radix, N), digits.high), std::move(values), p});
    terms.push_back(term);
  }

  // f_n = sum over |n_k| < n of lambda_k a_k, stored at resolution n.
  std::vector<CylinderFunction> levels;
  CylinderFunction running(radix, N);
  std::size_t next = 0;
  for (std::size_t n = 0; n <= N; ++n) {
    while (next < terms.size() && terms[next].high < n) {
      running += Complex{terms[next].lambda, 0.0} * decomposition.atoms[next].values;
      ++next;
    }
    levels.push_back(restrict_level(running, n));
  }
  Martingale martingale(std::move(levels));
  auto spectrum = forward(martingale.limit());
  return Counterexample{spec, std::move(terms), std::move(decomposition), std::move(martingale),
                        std::move(spectrum)};
}

CounterexampleSpec select_subsequence(const SubsequenceFamily& family, double p,
                                      std::size_t count, std::size_t resolution,
                                      const Radix& radix) {
  if (!(p > 0.0 && p < 1.0)) throw_domain("subsequence selection needs 0 < p < 1");
  if (count == 0) throw_usage("subsequence selection needs K >= 1");
  if (family.structurally_bounded()) {
    throw_domain("family " + family.name() +
                 " has bounded rho and cannot satisfy sup_k rho(alpha_k) = infinity");
  }
  if (resolution > radix->capacity()) throw_capacity("resolution exceeds radix capacity");

  CounterexampleSpec spec;
  spec.radix = radix;
  spec.p = p;
  spec.resolution = resolution;
  spec.family = family.name();

  double previous_square = 1.0;
  bool saw_spread = false;
  std::size_t previous_high = 0;
  for (std::size_t k = 0; spec.indices.size() < count; ++k) {
    const auto alpha = family.member(k, *radix);
    if (!alpha || *alpha >= radix->order(radix->capacity())) break;
    if (*alpha < 3) continue;
    const auto digits = expand(*alpha, *radix);
    if (digits.high + 1 > resolution) break;
    if (digits.rho > 0) saw_spread = true;
    if (!spec.indices.empty() && digits.high <= previous_high) continue;
    const double square =
        std::pow(static_cast<double>(radix->order(digits.high)) /
                     static_cast<double>(radix->order(digits.low)),
                 1.0 - p);
    if (square < 2.0 * previous_square) continue;
    spec.indices.push_back(*alpha);
    previous_square = square;
    previous_high = digits.high;
  }
  if (spec.indices.size() < count) {
    if (!saw_spread) {
      throw_domain("family " + family.name() +
                   " has rho = 0 on every usable member; sup_k rho(alpha_k) = infinity fails");
    }
    throw_capacity("only " + std::to_string(spec.indices.size()) + " of " +
                   std::to_string(count) + " indices fit resolution " +
                   std::to_string(resolution) + "; increase N");
  }
  return spec;
}

}  // namespace vilenkin
