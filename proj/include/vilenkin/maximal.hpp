#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "vilenkin/family.hpp"
#include "vilenkin/martingale.hpp"

namespace vilenkin {

/// max_{k <= K} |S_{alpha_k} f| pointwise. Capacity error if some alpha_k > M_N.
CylinderFunction restricted_maximal(const CylinderFunction& f, const SubsequenceFamily& family,
                                    std::size_t last_index);
/// Same, for explicit indices and an existing spectrum.
CylinderFunction restricted_maximal(const Spectrum& spectrum, const std::vector<Index>& indices);

/// sup_{1 <= n <= M_N} |S_n f| / ((n+1)^{1/p-1} log^{[p]}(n+1)), 0 < p <= 1,
/// natural logarithm; [p] = 1 only at p = 1.
CylinderFunction weighted_maximal(const CylinderFunction& f, double p);

enum class OperatorKind { Identity, Maximal, Restricted, Weighted };

struct ProbeOperator {
  OperatorKind kind = OperatorKind::Restricted;
  std::optional<SubsequenceFamily> family;
  /// Last family index used; defaults to the largest k with alpha_k <= M_N.
  std::optional<std::size_t> last_index;

  std::string id() const;
  CylinderFunction apply(const CylinderFunction& f, double p) const;
};

enum class GeneratorKind {
  StructuredAtoms,      // alternating block atoms and random-phase atoms
  RandomAtoms,          // random-phase atoms only
  AtomicCombinations,   // short random sums of random-phase atoms
};

/// Reproducible test functions; trial t draws from a stream derived from
/// (seed, t) only, so results do not depend on evaluation order.
struct ProbeGenerator {
  GeneratorKind kind = GeneratorKind::StructuredAtoms;
  Radix radix;
  std::size_t resolution = 0;
  std::uint64_t seed = 1;
  /// Atom supports are I_d(y) with d = N - j, j uniform in [1, min(span, N)].
  std::size_t depth_span = 4;
  std::size_t combination_terms = 3;
};

struct GeneratedInput {
  CylinderFunction function;
  std::optional<Interval> support;  // set for single-atom trials
  std::string description;
};

GeneratedInput generate_input(const ProbeGenerator& generator, double p, std::uint64_t trial);

/// Random p-atom on I_depth(y): i.i.d. complex phases, projected to zero mean
/// and scaled so that ||a||_inf = mu(I)^{-1/p}.
/// The cell pattern is drawn before the support position y.
Atom random_phase_atom(const Radix& radix, std::size_t resolution, std::size_t depth, double p,
                       std::mt19937_64& engine);
/// c (D_{M_{d+1}} - D_{M_d})(x - y) scaled to meet the sup bound with equality.
Atom block_atom(const Radix& radix, std::size_t resolution, std::size_t depth, double p,
                const GroupPoint& shift);

struct ProbeRow {
  std::uint64_t trial = 0;
  std::string description;
  double hardy = 0.0;    // ||f||_{H_p}
  double image = 0.0;    // ||T f||_p
  double ratio = 0.0;
  double outside = 0.0;  // integral of |T a|^p off the atom support; 0 if n/a
  bool skipped = false;
};

struct ProbeReport {
  std::string operator_id;
  double p = 1.0;
  std::size_t resolution = 0;
  std::uint64_t trials = 0;
  std::uint64_t skipped = 0;
  double max_ratio = 0.0;
  std::uint64_t argmax_trial = 0;
  std::string argmax_description;
  double max_outside = 0.0;
  std::vector<ProbeRow> rows;
};

ProbeReport probe_operator_norm(const ProbeOperator& op, double p, std::uint64_t trials,
                                const ProbeGenerator& generator);

/// Engine for trial `trial` of a run seeded with `seed`, seeded through
/// std::seed_seq so the stream is fixed by the standard.
std::mt19937_64 trial_engine(std::uint64_t seed, std::uint64_t trial);

/// Uniform double in [0, 1) from 53 engine bits.
inline double uniform01(std::mt19937_64& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

}  // namespace vilenkin
