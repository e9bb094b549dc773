#include "vilenkin/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace vilenkin {

namespace {

void require_kernel_index(Index n, std::size_t resolution, const Radix& radix) {
  if (resolution > radix->capacity()) throw_capacity("resolution exceeds radix capacity");
  if (n > radix->order(resolution)) {
    throw_capacity("kernel index " + std::to_string(n) + " exceeds M_N = " +
                   std::to_string(radix->order(resolution)));
  }
}

void require_positive_p(double p) {
  if (!(p > 0.0)) throw_domain("exponent p must be positive, got " + std::to_string(p));
}

}  // namespace

CylinderFunction dirichlet_direct(Index n, std::size_t resolution, const Radix& radix) {
  require_kernel_index(n, resolution, radix);
  return tabulate(radix, resolution,
                  [&](Index x) { return dirichlet_at_direct(*radix, resolution, n, x); });
}

CylinderFunction dirichlet_block(std::size_t k, std::size_t resolution, const Radix& radix) {
  if (k > resolution) {
    throw_capacity("block kernel D_{M_k} needs k <= N (k = " + std::to_string(k) + ")");
  }
  require_kernel_index(0, resolution, radix);
  const Index Mk = radix->order(k);
  return tabulate(radix, resolution, [&](Index x) {
    return x % Mk == 0 ? Complex{static_cast<double>(Mk), 0.0} : Complex{};
  });
}

CylinderFunction dirichlet_closed(Index n, std::size_t resolution, const Radix& radix) {
  if (n == 0) throw_domain("closed-form kernel needs n >= 1");
  require_kernel_index(n, resolution, radix);
  return tabulate(radix, resolution,
                  [&](Index x) { return dirichlet_at_closed(*radix, resolution, n, x); });
}

Complex dirichlet_at_direct(const RadixSequence& radix, std::size_t resolution, Index n,
                            Index x) {
  Complex acc{};
  for (Index k = 0; k < n; ++k) acc += character(radix, resolution, k, x);
  return acc;
}

Complex dirichlet_at_closed(const RadixSequence& radix, std::size_t resolution, Index n,
                            Index x) {
  // x lies in I_j exactly for j <= s.
  const std::size_t s = first_nonzero(radix, resolution, x);
  Complex psi{1.0, 0.0};
  Complex blocks{};
  Index rest_n = n;
  Index rest_x = x;
  for (std::size_t j = 0; j < resolution; ++j) {
    const unsigned mj = radix.m(j);
    const auto nj = static_cast<unsigned>(rest_n % mj);
    const auto xj = static_cast<unsigned>(rest_x % mj);
    rest_n /= mj;
    rest_x /= mj;
    if (nj == 0) continue;
    psi *= radix.root(j, nj * xj);
    if (j <= s) {
      Complex run{};
      for (unsigned u = mj - nj; u < mj; ++u) run += radix.root(j, u * xj);
      blocks += static_cast<double>(radix.order(j)) * run;
    }
  }
  // Leftover digit at position N (only n = M_N); r_N is 1 on the representative.
  if (rest_n != 0 && s == resolution) {
    blocks += static_cast<double>(radix.order(resolution)) * static_cast<double>(rest_n);
  }
  return psi * blocks;
}

std::vector<double> magnitudes(const CylinderFunction& f) {
  std::vector<double> out(f.size());
  for (Index i = 0; i < f.size(); ++i) out[i] = std::abs(f[i]);
  return out;
}

double lp_quasinorm(std::span<const double> values, double p) {
  require_positive_p(p);
  if (values.empty()) return 0.0;
  double acc = 0.0;
  for (double v : values) acc += std::pow(std::abs(v), p);
  return std::pow(acc / static_cast<double>(values.size()), 1.0 / p);
}

double lp_quasinorm(const CylinderFunction& f, double p) {
  const auto mags = magnitudes(f);
  return lp_quasinorm(mags, p);
}

double weak_lp_norm(std::vector<double> values, double p) {
  require_positive_p(p);
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end(), std::greater<>());
  const double total = static_cast<double>(values.size());
  double best = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    // Evaluate once per distinct value, at the last (largest) tail count.
    if (i + 1 < values.size() && values[i + 1] == values[i]) continue;
    const double v = std::abs(values[i]);
    const double tail = static_cast<double>(i + 1) / total;
    best = std::max(best, v * std::pow(tail, 1.0 / p));
  }
  return best;
}

double weak_lp_norm(const CylinderFunction& f, double p) { return weak_lp_norm(magnitudes(f), p); }

KernelReport kernel_report(Index n, const CylinderFunction& kernel) {
  const auto digits = expand(n, *kernel.radix());
  KernelReport report;
  report.n = n;
  report.low = digits.low;
  report.high = digits.high;
  report.rho = digits.rho;
  double sum = 0.0;
  for (const auto& v : kernel.values()) {
    const double a = std::abs(v);
    sum += a;
    report.max_abs = std::max(report.max_abs, a);
  }
  report.l1_norm = sum / static_cast<double>(kernel.size());
  return report;
}

double local_kernel_integral(Index n, const GroupPoint& x, std::size_t resolution) {
  const auto& radix = *x.radix();
  if (x.resolution() < resolution) {
    throw_usage("point resolution " + std::to_string(x.resolution()) + " is below N = " +
                std::to_string(resolution));
  }
  const auto digits = expand(n, radix);
  const std::size_t working = std::max({resolution, digits.high + 1, x.resolution()});
  if (working > radix.capacity()) {
    throw_capacity("working resolution " + std::to_string(working) +
                   " exceeds radix capacity " + std::to_string(radix.capacity()));
  }
  const Index x_rank = rank(x);  // zero padding leaves the rank unchanged
  const Index step = radix.order(resolution);
  const Index cells = radix.order(working);
  double acc = 0.0;
  for (Index t = 0; t < cells; t += step) {
    acc += std::abs(dirichlet_at_closed(radix, working, n, sub_ranks(radix, working, x_rank, t)));
  }
  return acc / static_cast<double>(cells);
}

LocalKernelScan scan_local_kernel(const Radix& radix, std::size_t working) {
  if (working == 0 || working > radix->capacity()) {
    throw_capacity("scan resolution must be in [1, capacity]");
  }
  LocalKernelScan scan;
  scan.working_resolution = working;
  const Index cells = radix->order(working);
  std::vector<double> abs_kernel(cells);
  sweep_dirichlet(radix, working, cells - 1, [&](Index n, const CylinderFunction& kernel) {
    for (Index i = 0; i < cells; ++i) abs_kernel[i] = std::abs(kernel[i]);
    for (std::size_t N = 1; N <= working; ++N) {
      const Index MN = radix->order(N);
      for (Index x = 1; x < MN; ++x) {
        const std::size_t s = first_nonzero(*radix, N, x);
        double acc = 0.0;
        for (Index t = 0; t < cells; t += MN) acc += abs_kernel[sub_ranks(*radix, working, x, t)];
        const double integral = acc / static_cast<double>(cells);
        const double ratio =
            static_cast<double>(MN) / static_cast<double>(radix->order(s)) * integral;
        ++scan.evaluations;
        if (ratio > scan.max_ratio) {
          scan.max_ratio = ratio;
          scan.argmax_n = n;
          scan.argmax_resolution = N;
          scan.argmax_s = s;
          scan.argmax_x = x;
        }
      }
    }
  });
  return scan;
}

MinorantResult lemma3_minorant_check(Index n, std::size_t resolution, const Radix& radix,
                                     double tolerance) {
  const auto digits = expand(n, *radix);
  if (digits.rho == 0) {
    throw_domain("minorant check needs <n> != |n| (rho(n) >= 1), n = " + std::to_string(n));
  }
  if (digits.high + 1 > resolution) {
    throw_domain("minorant check needs |n| + 1 <= N (|n| = " + std::to_string(digits.high) +
                 ", N = " + std::to_string(resolution) + ")");
  }
  require_kernel_index(0, resolution, radix);
  const Index shifted = n - radix->order(digits.high);
  const Index low_order = radix->order(digits.low);
  const Index step = radix->order(digits.low + 1);
  const double bound = static_cast<double>(low_order);

  MinorantResult result;
  result.n = n;
  result.min_abs = std::numeric_limits<double>::infinity();
  for (Index x = low_order; x < radix->order(resolution); x += step) {
    const double a = std::abs(dirichlet_at_closed(*radix, resolution, n, x));
    const double b = std::abs(dirichlet_at_closed(*radix, resolution, shifted, x));
    ++result.points;
    result.min_abs = std::min(result.min_abs, a);
    if (std::abs(a - b) > tolerance || a < bound - tolerance) {
      result.passed = false;
      if (result.failures.size() < 16) result.failures.push_back({x, a, b, bound});
    }
  }
  return result;
}

}  // namespace vilenkin
