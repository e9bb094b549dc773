#pragma once

#include "vilenkin/group.hpp"

namespace vilenkin {

/// Default absolute tolerance for comparing O(1) complex values.
inline constexpr double kDefaultTolerance = 1e-10;

/// r_k(x) = exp(2 pi i x_k / m_k).
Complex rademacher(std::size_t k, const GroupPoint& x);

/// psi_n(x) = prod_k r_k(x)^{n_k}; requires n < M_N for the resolution N of x.
Complex vilenkin(Index n, const GroupPoint& x);

/// psi_n at the point of rank x, resolution N; no range checks.
inline Complex character(const RadixSequence& radix, std::size_t resolution, Index n, Index x) {
  Complex value{1.0, 0.0};
  for (std::size_t j = 0; j < resolution && n != 0; ++j) {
    const unsigned mj = radix.m(j);
    const auto nj = static_cast<unsigned>(n % mj);
    if (nj != 0) value *= radix.root(j, nj * static_cast<unsigned>(x % mj));
    n /= mj;
    x /= mj;
  }
  return value;
}

/// |sum_{u<s} r_k(x)^u| in closed form sin(pi s x_k/m_k) / sin(pi x_k/m_k);
/// s when x_k = 0. Requires 1 <= s <= m_k.
double rademacher_run_modulus(std::size_t k, unsigned s, const GroupPoint& x);

}  // namespace vilenkin
