#include "vilenkin/characters.hpp"

#include <cmath>
#include <numbers>

#include "vilenkin/error.hpp"

namespace vilenkin {

Complex rademacher(std::size_t k, const GroupPoint& x) {
  if (k >= x.resolution()) {
    throw_usage("rademacher index k = " + std::to_string(k) + " is not below the resolution " +
                std::to_string(x.resolution()));
  }
  return x.radix()->root(k, x[k]);
}

Complex vilenkin(Index n, const GroupPoint& x) {
  const auto& radix = *x.radix();
  if (n >= radix.order(x.resolution())) {
    throw_capacity("character index " + std::to_string(n) + " is not below M_" +
                   std::to_string(x.resolution()));
  }
  Complex value{1.0, 0.0};
  for (std::size_t j = 0; j < x.resolution() && n != 0; ++j) {
    const auto nj = static_cast<unsigned>(n % radix.m(j));
    if (nj != 0) value *= radix.root(j, nj * x[j]);
    n /= radix.m(j);
  }
  return value;
}

double rademacher_run_modulus(std::size_t k, unsigned s, const GroupPoint& x) {
  if (k >= x.resolution()) throw_usage("rademacher index out of range");
  const unsigned mk = x.radix()->m(k);
  if (s < 1 || s > mk) {
    throw_domain("run length s = " + std::to_string(s) + " outside [1, m_k = " +
                 std::to_string(mk) + "]");
  }
  const unsigned xk = x[k];
  if (xk == 0) return static_cast<double>(s);
  const double step = std::numbers::pi * static_cast<double>(xk) / mk;
  return std::abs(std::sin(s * step) / std::sin(step));
}

}  // namespace vilenkin
