#pragma once

// Martingales with respect to the cylinder filtration, the maximal function,
// martingale Hardy quasi-norms, p-atoms and atomic decompositions, and the
// divergence counterexample built from them.

#include <string>
#include <vector>

#include "vilenkin/family.hpp"
#include "vilenkin/transform.hpp"

namespace vilenkin {

/// Average of f over each I_n coset, kept at the resolution of f.
CylinderFunction condexp(const CylinderFunction& f, std::size_t n);

/// The same averages as a resolution-n function.
CylinderFunction restrict_level(const CylinderFunction& f, std::size_t n);
/// Resolution-N copy of a coarser function (constant on the finer cosets).
CylinderFunction lift(const CylinderFunction& g, std::size_t resolution);

/// f*(x) = max_{0 <= n <= N} |E_n f(x)|, real-valued.
CylinderFunction maximal_function(const CylinderFunction& f);

/// ||f*||_p.
double hardy_norm(const CylinderFunction& f, double p);

/// Levels f_0 .. f_N where f_n has resolution n.
class Martingale {
 public:
  explicit Martingale(std::vector<CylinderFunction> levels);

  /// The martingale (E_n f : n <= N) generated by f.
  static Martingale from_function(const CylinderFunction& f);

  std::size_t depth() const noexcept { return levels_.size() - 1; }
  const CylinderFunction& level(std::size_t n) const { return levels_.at(n); }
  /// f_N lifted to itself; the resolution-N limit.
  const CylinderFunction& limit() const { return levels_.back(); }

  /// max_n max_x |avg of f_{n+1} over the I_n coset - f_n|.
  double adaptedness_defect() const;
  bool adapted(double tolerance = 1e-10) const { return adaptedness_defect() <= tolerance; }

 private:
  std::vector<CylinderFunction> levels_;
};

struct Atom {
  Interval support;
  CylinderFunction values;
  double p = 1.0;
};

struct AtomDiagnostics {
  bool valid = true;
  double mean = 0.0;         // |integral over the support|
  double sup = 0.0;          // ||a||_inf
  double bound = 0.0;        // mu(I)^{-1/p}
  double off_support = 0.0;  // max |a| outside the support
  std::vector<std::string> problems;
};

/// Zero mean, sup bound (multiplicative tolerance) and support confinement.
/// The mean and off-support tolerances scale with max(1, sup * mu(I)).
AtomDiagnostics validate_atom(const Atom& atom, double tolerance = 1e-10);

struct AtomicDecomposition {
  /// Shape of the assembled function; used when there are no atoms.
  Radix radix;
  std::size_t resolution = 0;
  std::vector<double> coefficients;
  std::vector<Atom> atoms;

  /// sum |lambda_k|^p
  double coefficient_sum(double p) const;
};

/// sum_k lambda_k E_n a_k at full resolution.
CylinderFunction assemble(const AtomicDecomposition& decomposition, std::size_t n);

struct CounterexampleSpec {
  Radix radix;
  double p = 0.5;
  std::vector<Index> indices;  // n_k
  std::size_t resolution = 0;
  /// Family the indices were drawn from, for reporting.
  std::string family;
};

/// Throws a Domain error naming the first violated clause.
void validate(const CounterexampleSpec& spec);

struct CounterexampleTerm {
  Index n = 0;
  std::size_t low = 0;
  std::size_t high = 0;
  double lambda = 0.0;       // m_* (M_<n> / M_|n|)^{(1/p-1)/2}
  double atom_scale = 0.0;   // M_|n|^{1/p-1} / m_*
  double coefficient = 0.0;  // (M_<n> M_|n|)^{(1/p-1)/2}
  double ratio = 0.0;        // (M_|n| / M_<n>)^{(1-p)/2}
  Index block_begin = 0;     // M_|n|
  Index block_end = 0;       // M_{|n|+1}
};

struct Counterexample {
  CounterexampleSpec spec;
  std::vector<CounterexampleTerm> terms;
  AtomicDecomposition decomposition;
  Martingale martingale;
  Spectrum spectrum;

  /// The closed-form coefficient of the assembled function at index j.
  double closed_form(Index j) const;
};

Counterexample build_counterexample(const CounterexampleSpec& spec);

/// Greedy pick of K members with n_k >= 3, |n_k| + 1 <= N, strictly
/// increasing |n_k|, and the squared ratio (M_|n| / M_<n>)^{1-p} at least
/// doubling at every step starting from 1.
CounterexampleSpec select_subsequence(const SubsequenceFamily& family, double p,
                                      std::size_t count, std::size_t resolution,
                                      const Radix& radix);

}  // namespace vilenkin
