#pragma once

#include <vector>

#include "vilenkin/characters.hpp"
#include "vilenkin/transform.hpp"

namespace vilenkin {

// ---------------------------------------------------------------------------
// Dirichlet kernels D_n = sum_{k<n} psi_k
// ---------------------------------------------------------------------------

/// Pointwise sum of the first n characters; requires n <= M_N.
CylinderFunction dirichlet_direct(Index n, std::size_t resolution, const Radix& radix);

/// D_{M_k}: M_k on I_k, zero elsewhere; requires k <= N.
CylinderFunction dirichlet_block(std::size_t k, std::size_t resolution, const Radix& radix);

/// psi_n(x) * sum_j D_{M_j}(x) sum_{u=m_j-n_j}^{m_j-1} r_j(x)^u, 1 <= n <= M_N.
/// Coordinates at and beyond N are taken as zero; the kernel is constant on
/// I_N cosets so any representative gives the same value.
CylinderFunction dirichlet_closed(Index n, std::size_t resolution, const Radix& radix);

Complex dirichlet_at_direct(const RadixSequence& radix, std::size_t resolution, Index n, Index x);
Complex dirichlet_at_closed(const RadixSequence& radix, std::size_t resolution, Index n, Index x);

/// Visits D_1, D_2, ..., D_last at resolution N, built by accumulating one
/// character per step. `visit(n, const CylinderFunction& kernel)`.
template <class Visit>
void sweep_dirichlet(const Radix& radix, std::size_t resolution, Index last, Visit&& visit) {
  const Index size = radix->order(resolution);
  if (last > size) throw_capacity("kernel sweep beyond M_N");
  CylinderFunction kernel(radix, resolution);
  for (Index n = 1; n <= last; ++n) {
    const Index k = n - 1;
    for (Index x = 0; x < size; ++x) kernel[x] += character(*radix, resolution, k, x);
    visit(n, static_cast<const CylinderFunction&>(kernel));
  }
}

// ---------------------------------------------------------------------------
// Norms
// ---------------------------------------------------------------------------

/// ((1/M_N) sum |f|^p)^{1/p}; p > 0.
double lp_quasinorm(const CylinderFunction& f, double p);
double lp_quasinorm(std::span<const double> magnitudes, double p);

/// sup_lambda lambda mu(|f| > lambda)^{1/p}, evaluated exactly as
/// max_v v mu(|f| >= v)^{1/p} over the distinct values v of |f|.
double weak_lp_norm(const CylinderFunction& f, double p);
double weak_lp_norm(std::vector<double> magnitudes, double p);

std::vector<double> magnitudes(const CylinderFunction& f);

// ---------------------------------------------------------------------------
// Kernel reports and the two kernel lemmas
// ---------------------------------------------------------------------------

struct KernelReport {
  Index n = 0;
  std::size_t low = 0;
  std::size_t high = 0;
  std::size_t rho = 0;
  double l1_norm = 0.0;
  double max_abs = 0.0;
};

KernelReport kernel_report(Index n, const CylinderFunction& kernel);

/// int_{I_N} |D_n(x - t)| dmu(t), evaluated at working resolution
/// N' = max(N, |n| + 1, resolution of x); x is padded with zero coordinates.
double local_kernel_integral(Index n, const GroupPoint& x, std::size_t resolution);

struct LocalKernelScan {
  std::size_t working_resolution = 0;
  double max_ratio = 0.0;  // max of (M_N / M_s) * integral
  Index argmax_n = 0;
  std::size_t argmax_resolution = 0;
  std::size_t argmax_s = 0;
  Index argmax_x = 0;
  Index evaluations = 0;
};

/// Exhaustive scan over 1 <= n < M_{N'}, 1 <= N <= N', s < N and one x per
/// I_N coset inside I_s \ I_{s+1}.
LocalKernelScan scan_local_kernel(const Radix& radix, std::size_t working_resolution);

struct MinorantWitness {
  Index x = 0;  // rank at resolution N
  double abs_kernel = 0.0;
  double abs_shifted = 0.0;
  double bound = 0.0;
};

struct MinorantResult {
  Index n = 0;
  bool passed = true;
  double min_abs = 0.0;
  Index points = 0;
  std::vector<MinorantWitness> failures;  // capped at 16
};

/// On I_{<n>+1}(e_{<n>}) checks |D_n| = |D_{n - M_{|n|}}| and |D_n| >= M_{<n>}.
/// Requires rho(n) >= 1 and |n| + 1 <= N.
MinorantResult lemma3_minorant_check(Index n, std::size_t resolution, const Radix& radix,
                                     double tolerance = 1e-9);

}  // namespace vilenkin
