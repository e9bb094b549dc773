#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include "vilenkin/characters.hpp"
#include "vilenkin/family.hpp"
#include "vilenkin/harness.hpp"
#include "vilenkin/kernels.hpp"
#include "vilenkin/martingale.hpp"
#include "vilenkin/maximal.hpp"

namespace vilenkin {

namespace {

using nlohmann::json;

/// Largest index usable as a family member: M_N, or below the radix capacity.
Index member_bound(const RadixSequence& radix, std::size_t N) {
  return std::min(radix.order(N), radix.order(radix.capacity()) - 1);
}

std::string fmt(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.12g", v);
  return buffer;
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

CylinderFunction random_function(const Radix& radix, std::size_t N, std::mt19937_64& engine,
                                 bool real) {
  return tabulate(radix, N, [&](Index) {
    const double re = 2.0 * uniform01(engine) - 1.0;
    const double im = real ? 0.0 : 2.0 * uniform01(engine) - 1.0;
    return Complex{re, im};
  });
}

std::vector<double> p_values_or(const SuiteConfig& config, std::vector<double> fallback) {
  return config.p_values.empty() ? fallback : config.p_values;
}

/// Tracks a running maximum and the witness of its first attainment.
struct MaxTracker {
  double value = -std::numeric_limits<double>::infinity();
  json witness;
  void offer(double v, const json& w) {
    if (v > value) {
      value = v;
      witness = w;
    }
  }
};

/// Rank odometer over x: psi_k(x) = exp(2 pi i phase / L) with
/// phase = sum_j k_j x_j (L / m_j) mod L, updated per step instead of
/// recomputed. Independent of the library's character evaluation.
struct PhaseTable {
  std::vector<Complex> roots;
  std::vector<Index> unit;  // L / m_j
  Index L = 1;
  const RadixSequence* radix;
  std::size_t N;

  PhaseTable(const RadixSequence& r, std::size_t resolution) : radix(&r), N(resolution) {
    for (std::size_t j = 0; j < N; ++j) L = std::lcm(L, static_cast<Index>(r.m(j)));
    for (std::size_t j = 0; j < N; ++j) unit.push_back(L / r.m(j));
    roots.resize(L);
    for (Index u = 0; u < L; ++u) {
      roots[u] = std::polar(1.0, 2.0 * std::acos(-1.0) * static_cast<double>(u) / L);
    }
  }

  /// Calls visit(x, psi_k(x)) for x = 0 .. M_N - 1 in rank order.
  template <class Visit>
  void row(Index k, Visit&& visit) const {
    std::vector<Index> step(N), back(N);
    for (std::size_t j = 0; j < N; ++j) {
      step[j] = (k % radix->m(j)) * unit[j] % L;
      k /= radix->m(j);
      back[j] = (L - step[j] * (radix->m(j) - 1) % L) % L;
    }
    std::vector<unsigned> x(N, 0);
    Index phase = 0;
    const Index size = radix->order(N);
    for (Index t = 0; t < size; ++t) {
      visit(t, roots[phase]);
      for (std::size_t j = 0; j < N; ++j) {
        if (++x[j] < radix->m(j)) {
          phase += step[j];
          if (phase >= L) phase -= L;
          break;
        }
        x[j] = 0;
        phase += back[j];
        if (phase >= L) phase -= L;
      }
    }
  }
};

Complex naive_coefficient(const CylinderFunction& f, Index k, const PhaseTable& table) {
  Complex acc{};
  table.row(k, [&](Index x, const Complex& psi) { acc += f[x] * std::conj(psi); });
  return acc / static_cast<double>(f.size());
}

// ---------------------------------------------------------------------------

void suite_group(Report& report, const Radix& radix, std::size_t N, const SuiteConfig& config) {
  const Index size = radix->order(N);
  bool orders_ok = radix->order(0) == 1;
  unsigned star = 0;
  for (std::size_t k = 0; k < radix->capacity(); ++k) {
    orders_ok = orders_ok && radix->m(k) >= 2 && radix->order(k + 1) == radix->m(k) * radix->order(k);
    star = std::max(star, radix->m(k));
  }
  report.check("radix.orders", orders_ok && star == radix->m_star(),
               "M_0 = 1, M_{k+1} = m_k M_k, m_* = max m_k");

  {
    json witness;
    bool ok = true;
    for (Index n = 1; n < size && ok; ++n) {
      const auto d = expand(n, *radix);
      Index recomposed = 0;
      for (std::size_t j = 0; j < d.digits.size(); ++j) recomposed += d.digits[j] * radix->order(j);
      ok = recomposed == n && d.digit(d.low) != 0 && d.digit(d.high) != 0 &&
           d.digits.size() == d.high + 1 && radix->order(d.high) <= n &&
           n < radix->order(d.high + 1) && d.rho == d.high - d.low;
      if (!ok) witness = {{"n", n}, {"recomposed", recomposed}, {"low", d.low}, {"high", d.high}};
    }
    report.check("expand.round_trip", ok, "all 1 <= n < M_N", witness);
  }

  {
    json witness;
    bool ok = true;
    for (Index t = 0; t < size && ok; ++t) {
      ok = rank(unrank(t, N, radix)) == t;
      if (!ok) witness = {{"t", t}};
    }
    report.check("rank.round_trip", ok, "all t < M_N", witness);
  }

  // Group axioms on ranks; exhaustive when M_N is small, sampled otherwise.
  {
    const auto& r = *radix;
    auto engine = trial_engine(config.seed, 0);
    auto pick = [&] { return static_cast<Index>(engine() % size); };
    const bool exhaustive = size <= 256;
    json witness;
    bool ok = true;
    Index tested = 0;
    auto axiom = [&](Index a, Index b, Index c) {
      ++tested;
      const Index ab = add_ranks(r, N, a, b);
      const bool good = add_ranks(r, N, ab, c) == add_ranks(r, N, a, add_ranks(r, N, b, c)) &&
                        ab == add_ranks(r, N, b, a) && add_ranks(r, N, a, 0) == a &&
                        add_ranks(r, N, a, neg_rank(r, N, a)) == 0 &&
                        sub_ranks(r, N, ab, b) == a;
      if (!good && ok) witness = {{"a", a}, {"b", b}, {"c", c}};
      ok = ok && good;
    };
    if (exhaustive) {
      std::vector<Index> sum(size * size);
      for (Index a = 0; a < size; ++a)
        for (Index b = 0; b < size; ++b) axiom(a, b, 0), sum[a * size + b] = add_ranks(r, N, a, b);
      for (Index a = 0; a < size && ok; ++a)
        for (Index b = 0; b < size; ++b)
          for (Index c = 0; c < size; ++c) {
            ++tested;
            if (sum[sum[a * size + b] * size + c] != sum[a * size + sum[b * size + c]] && ok) {
              ok = false;
              witness = {{"a", a}, {"b", b}, {"c", c}};
            }
          }
    } else {
      for (int i = 0; i < 20000; ++i) axiom(pick(), pick(), pick());
    }
    report.check("group.axioms", ok,
                 std::string(exhaustive ? "exhaustive" : "sampled") + " over " +
                     std::to_string(tested) + " triples",
                 witness);
    bool points_ok = true;
    for (int i = 0; i < 256 && points_ok; ++i) {
      const Index a = pick(), b = pick();
      const auto x = unrank(a, N, radix), y = unrank(b, N, radix);
      points_ok = rank(add(x, y)) == add_ranks(r, N, a, b) && rank(neg(x)) == neg_rank(r, N, a) &&
                  rank(sub(x, y)) == sub_ranks(r, N, a, b);
      if (!points_ok) witness = {{"a", a}, {"b", b}};
    }
    report.check("group.points_match_ranks", points_ok, "GroupPoint arithmetic == rank arithmetic",
                 points_ok ? json::object() : witness);
  }

  // Coset partition of the complement of I_N.
  {
    std::vector<int> hits(size, 0);
    Rational total = measure(Interval(GroupPoint::zero(radix, N), N));
    bool ok = true;
    json witness;
    for (std::size_t s = 0; s < N; ++s) {
      Annulus annulus(s, N, radix);
      Index count = 0;
      for (auto it = annulus.begin(); it != annulus.end(); ++it) {
        ++hits[it.rank()];
        ++count;
        if (first_nonzero(*radix, N, it.rank()) != s && ok) {
          ok = false;
          witness = {{"s", s}, {"x", it.rank()}};
        }
      }
      if (count != annulus.size() && ok) {
        ok = false;
        witness = {{"s", s}, {"count", count}, {"expected", annulus.size()}};
      }
      total += Rational(static_cast<std::int64_t>(count), static_cast<std::int64_t>(size));
    }
    ++hits[0];
    for (Index t = 0; t < size && ok; ++t) {
      if (hits[t] != 1) {
        ok = false;
        witness = {{"x", t}, {"hits", hits[t]}};
      }
    }
    report.check("partition.disjoint_cover", ok, "I_N and the annuli I_s \\ I_{s+1} tile G", witness);
    report.check("partition.measure", total == Rational(1), "exact rational sum equals 1",
                 total == Rational(1) ? json::object()
                                      : json{{"numerator", total.numerator()},
                                             {"denominator", total.denominator()}});
  }

  {
    bool ok = true;
    for (std::size_t d = 0; d <= N; ++d) {
      const Interval interval(GroupPoint::zero(radix, N), d);
      ok = ok && measure(interval) == Rational(1, static_cast<std::int64_t>(radix->order(d)));
      Index inside = 0;
      for (Index t = 0; t < size; ++t) inside += contains(interval, unrank(t, N, radix)) ? 1 : 0;
      ok = ok && inside * radix->order(d) == size;
    }
    report.check("interval.measure", ok, "mu(I_d) = 1/M_d = share of points in I_d");
  }
}

// ---------------------------------------------------------------------------

void suite_system(Report& report, const Radix& radix, std::size_t N, const SuiteConfig& config) {
  const Index size = radix->order(N);
  const auto& r = *radix;
  const double tol = config.tolerance;
  auto engine = trial_engine(config.seed, 1);
  auto pick = [&] { return static_cast<Index>(engine() % size); };

  {
    MaxTracker deviation;
    deviation.offer(0.0, json::object());
    const bool exhaustive = size <= 256;
    if (exhaustive) {
      std::vector<Complex> table(size * size);
      for (Index n = 0; n < size; ++n)
        for (Index x = 0; x < size; ++x) table[n * size + x] = character(r, N, n, x);
      for (Index n = 0; n < size; ++n) {
        for (Index k = 0; k < size; ++k) {
          Complex acc{};
          for (Index x = 0; x < size; ++x) acc += table[n * size + x] * std::conj(table[k * size + x]);
          acc /= static_cast<double>(size);
          deviation.offer(std::abs(acc - Complex(n == k ? 1.0 : 0.0)), {{"n", n}, {"k", k}});
        }
      }
    } else {
      for (int i = 0; i < 32; ++i) {
        const Index n = pick();
        const auto spectrum = forward(tabulate(radix, N, [&](Index x) { return character(r, N, n, x); }));
        for (Index k = 0; k < size; ++k) {
          deviation.offer(std::abs(spectrum[k] - Complex(n == k ? 1.0 : 0.0)), {{"n", n}, {"k", k}});
        }
      }
    }
    report.check("orthonormality", deviation.value <= tol,
                 std::string(exhaustive ? "exhaustive" : "sampled") +
                     ", max deviation " + fmt(deviation.value),
                 deviation.value <= tol ? json::object() : deviation.witness);
  }

  {
    MaxTracker deviation;
    deviation.offer(0.0, json::object());
    const bool exhaustive = size <= 128;
    auto test = [&](Index n, Index x, Index y) {
      const Complex lhs = character(r, N, n, add_ranks(r, N, x, y));
      const Complex rhs = character(r, N, n, x) * character(r, N, n, y);
      deviation.offer(std::abs(lhs - rhs), {{"n", n}, {"x", x}, {"y", y}});
      deviation.offer(std::abs(std::abs(lhs) - 1.0) * 1e2, {{"n", n}, {"x", x}, {"modulus", true}});
    };
    if (exhaustive) {
      for (Index n = 0; n < size; ++n)
        for (Index x = 0; x < size; ++x)
          for (Index y = 0; y < size; ++y) test(n, x, y);
    } else {
      for (int i = 0; i < 50000; ++i) test(pick(), pick(), pick());
    }
    report.check("multiplicativity", deviation.value <= tol,
                 "psi_n(x + y) = psi_n(x) psi_n(y) and |psi_n| = 1 within 1e-12",
                 deviation.value <= tol ? json::object() : deviation.witness);
  }

  {
    bool ok = true;
    json witness;
    for (std::size_t k = 0; k < N && ok; ++k) {
      const auto e = GroupPoint::unit(radix, N, k);
      for (Index t = 0; t < size && ok; t += std::max<Index>(1, size / 64)) {
        const auto x = unrank(t, N, radix);
        ok = std::abs(vilenkin(r.order(k), x) - rademacher(k, x)) <= 1e-12;
        if (!ok) witness = {{"k", k}, {"x", t}};
      }
      ok = ok && std::abs(rademacher(k, e) - r.root(k, 1)) <= 1e-12;
    }
    report.check("characters.psi_Mk_is_rk", ok, "psi_{M_k} = r_k", witness);
  }

  {
    double worst = 0.0;
    bool at_least_one = true;
    json witness, minorant_witness;
    for (std::size_t k = 0; k < N; ++k) {
      for (unsigned xk = 0; xk < r.m(k); ++xk) {
        std::vector<unsigned> coords(N, 0);
        coords[k] = xk;
        const GroupPoint x(radix, coords);
        for (unsigned s = 1; s <= r.m(k); ++s) {
          Complex direct{};
          for (unsigned u = 0; u < s; ++u) direct += r.root(k, u * xk);
          const double closed = rademacher_run_modulus(k, s, x);
          const double err = std::abs(std::abs(direct) - closed);
          if (err > worst) {
            worst = err;
            witness = {{"k", k}, {"x_k", xk}, {"s", s}, {"direct", std::abs(direct)}, {"closed", closed}};
          }
          if (xk == 1 && s < r.m(k) && closed < 1.0 - 1e-12) {
            at_least_one = false;
            minorant_witness = {{"k", k}, {"s", s}, {"value", closed}};
          }
        }
      }
    }
    report.check("run_modulus.matches_direct_sum", worst <= 1e-12, "max error " + fmt(worst),
                 worst <= 1e-12 ? json::object() : witness);
    report.check("run_modulus.at_least_one", at_least_one,
                 "sin(pi s / m_k) / sin(pi / m_k) >= 1 for 1 <= s < m_k", minorant_witness);
  }
}

// ---------------------------------------------------------------------------

void suite_transform(Report& report, const Radix& radix, std::size_t N, const SuiteConfig& config) {
  const double tol = config.tolerance;
  const std::uint64_t count = config.trials ? config.trials : 50;
  const PhaseTable table(*radix, N);
  MaxTracker oracle, round_trip, parseval, top;
  for (auto* t : {&oracle, &round_trip, &parseval, &top}) t->offer(0.0, json::object());
  for (std::uint64_t trial = 0; trial < count; ++trial) {
    auto engine = trial_engine(config.seed, 1000 + trial);
    const auto f = random_function(radix, N, engine, false);
    const auto spectrum = forward(f);
    for (Index k = 0; k < f.size(); ++k) {
      oracle.offer(std::abs(spectrum[k] - naive_coefficient(f, k, table)),
                   {{"trial", trial}, {"k", k}});
    }
    const auto back = inverse(spectrum);
    for (Index x = 0; x < f.size(); ++x) {
      round_trip.offer(std::abs(back[x] - f[x]), {{"trial", trial}, {"x", x}});
    }
    double energy = 0.0, coefficient_energy = 0.0;
    for (Index x = 0; x < f.size(); ++x) energy += std::norm(f[x]);
    for (Index k = 0; k < f.size(); ++k) coefficient_energy += std::norm(spectrum[k]);
    parseval.offer(std::abs(energy / static_cast<double>(f.size()) - coefficient_energy),
                   {{"trial", trial}});
    top.offer(max_abs_diff(partial_sum(spectrum, f.size()), f), {{"trial", trial}});
  }
  auto emit_check = [&](const std::string& id, const MaxTracker& t, const std::string& what) {
    report.check(id, t.value <= tol, what + ", max error " + fmt(t.value),
                 t.value <= tol ? json::object() : t.witness);
  };
  emit_check("forward.matches_naive", oracle, std::to_string(count) + " random functions");
  emit_check("inverse.round_trip", round_trip, "inverse(forward(f)) = f");
  emit_check("parseval", parseval, "mean |f|^2 = sum |f^(k)|^2");
  emit_check("partial_sum.full", top, "S_{M_N} f = f");

  {
    auto engine = trial_engine(config.seed, 999);
    const auto f = random_function(radix, N, engine, false);
    MaxTracker kernel_route;
    kernel_route.offer(0.0, json::object());
    for (int i = 0; i < 4; ++i) {
      const Index n = 1 + engine() % f.size();
      kernel_route.offer(max_abs_diff(partial_sum(f, n), partial_sum_via_kernel(f, n)), {{"n", n}});
    }
    emit_check("partial_sum.matches_kernel_convolution", kernel_route, "S_n f = f * D_n");
    MaxTracker library_naive;
    library_naive.offer(0.0, json::object());
    const auto spectrum = forward(f);
    for (int i = 0; i < 8; ++i) {
      const Index k = engine() % f.size();
      library_naive.offer(std::abs(fourier_coefficient(f, k) - spectrum[k]), {{"k", k}});
    }
    emit_check("fourier_coefficient.matches_forward", library_naive, "naive integral vs fast");
  }
}

// ---------------------------------------------------------------------------

void suite_kernels(Report& report, const Radix& radix, std::size_t N, const SuiteConfig& config) {
  const Index size = radix->order(N);
  const double tol = config.kernel_tolerance;
  MaxTracker closed_dev, block_dev;
  closed_dev.offer(0.0, json::object());
  block_dev.offer(0.0, json::object());
  std::vector<double> l1(size + 1, 0.0);
  bool origin_ok = true, integral_ok = true;
  json origin_witness, integral_witness;
  sweep_dirichlet(radix, N, size, [&](Index n, const CylinderFunction& kernel) {
    const auto closed = dirichlet_closed(n, N, radix);
    closed_dev.offer(max_abs_diff(kernel, closed), {{"n", n}});
    l1[n] = lp_quasinorm(kernel, 1.0);
    if (std::abs(kernel[0] - Complex(static_cast<double>(n))) > tol && origin_ok) {
      origin_ok = false;
      origin_witness = {{"n", n}, {"value", complex_json(kernel[0])}};
    }
    Complex mean{};
    for (Index x = 0; x < size; ++x) mean += kernel[x];
    mean /= static_cast<double>(size);
    if (std::abs(mean - 1.0) > tol && integral_ok) {
      integral_ok = false;
      integral_witness = {{"n", n}, {"integral", complex_json(mean)}};
    }
    for (std::size_t k = 0; k <= N; ++k) {
      if (radix->order(k) == n) block_dev.offer(max_abs_diff(kernel, dirichlet_block(k, N, radix)), {{"k", k}});
    }
  });
  report.check("dirichlet.direct_eq_closed", closed_dev.value < tol,
               "all 1 <= n <= M_N, max error " + fmt(closed_dev.value),
               closed_dev.value < tol ? json::object() : closed_dev.witness);
  report.check("dirichlet.direct_eq_block", block_dev.value < tol,
               "n = M_k, max error " + fmt(block_dev.value),
               block_dev.value < tol ? json::object() : block_dev.witness);
  report.check("dirichlet.origin", origin_ok, "D_n(0) = n", origin_witness);
  report.check("dirichlet.integral", integral_ok, "integral of D_n = 1", integral_witness);

  MaxTracker ratio;
  bool l1_floor = true;
  for (Index n = 1; n < size; ++n) {
    const auto d = expand(n, *radix);
    ratio.offer(l1[n] / static_cast<double>(d.rho + 1), {{"n", n}, {"rho", d.rho}, {"l1", l1[n]}});
    l1_floor = l1_floor && l1[n] >= 1.0 - tol;
  }
  if (size == 1) ratio.offer(0.0, json::object());
  report.check("dirichlet.l1_at_least_one", l1_floor, "||D_n||_1 >= 1");
  report.constant("l1_rho_max", ratio.value);
  report.extra["l1_rho_argmax"] = ratio.witness;

  for (const auto& family : {SubsequenceFamily::powers(), SubsequenceFamily::powers_plus_previous()}) {
    const auto last = last_member_within(family, member_bound(*radix, N), *radix);
    if (!last) continue;
    const std::size_t rho_sup = family_rho_sup(family, *last + 1, *radix);
    const double bound = std::max(ratio.value, 1.0) * static_cast<double>(rho_sup + 1);
    bool ok = true;
    json witness;
    for (Index alpha : family_members(family, *last + 1, *radix)) {
      if (l1[alpha] > bound + tol && ok) {
        ok = false;
        witness = {{"alpha", alpha}, {"l1", l1[alpha]}, {"bound", bound}};
      }
    }
    report.check("family_l1_bound." + family.name(), ok,
                 "||D_alpha||_1 <= c (rho_sup + 1) with rho_sup = " + std::to_string(rho_sup),
                 witness);
  }

  {
    bool ok = true;
    json witness;
    for (std::uint64_t trial = 0; trial < 20 && ok; ++trial) {
      auto engine = trial_engine(config.seed, 2000 + trial);
      const auto f = random_function(radix, N, engine, false);
      for (double p : {0.5, 1.0, 2.0}) {
        const double weak = weak_lp_norm(f, p), strong = lp_quasinorm(f, p);
        if (weak > strong * (1.0 + 1e-12)) {
          ok = false;
          witness = {{"trial", trial}, {"p", p}, {"weak", weak}, {"strong", strong}};
        }
      }
    }
    report.check("norms.weak_below_strong", ok, "||f||_{p,inf} <= ||f||_p", witness);
  }
}

// ---------------------------------------------------------------------------

void suite_lemma2(Report& report, const Radix& radix, std::size_t working, const SuiteConfig&) {
  const auto scan = scan_local_kernel(radix, working);
  const bool finite = std::isfinite(scan.max_ratio);
  const json where = {{"n", scan.argmax_n}, {"N", scan.argmax_resolution}, {"s", scan.argmax_s},
                      {"x", scan.argmax_x}};
  report.check("local_integral.finite", finite,
               std::to_string(scan.evaluations) + " evaluations, max ratio " + fmt(scan.max_ratio),
               finite ? json::object() : where);
  report.constant("max_ratio", scan.max_ratio);
  report.constant("evaluations", static_cast<double>(scan.evaluations), true);
  report.extra["argmax"] = where;

  // Brute-force oracle at a few points: the double sum over t in I_N.
  bool ok = true;
  json witness;
  for (std::size_t Nl = 1; Nl < working && ok; ++Nl) {
    const Index MW = radix->order(working);
    for (Index n : {Index{1}, radix->order(Nl), radix->order(Nl) + 1, MW - 1}) {
      if (n == 0 || n >= MW) continue;
      const auto kernel = dirichlet_direct(n, working, radix);
      for (Index x : {Index{0}, Index{1}, radix->order(Nl - 1)}) {
        double brute = 0.0;
        for (Index t = 0; t < MW; t += radix->order(Nl)) {
          brute += std::abs(kernel[sub_ranks(*radix, working, x, t)]);
        }
        brute /= static_cast<double>(MW);
        const double lib = local_kernel_integral(n, unrank(x, working, radix), Nl);
        if (std::abs(brute - lib) > 1e-9 && ok) {
          ok = false;
          witness = {{"n", n}, {"N", Nl}, {"x", x}, {"brute", brute}, {"library", lib}};
        }
      }
    }
  }
  report.check("local_integral.matches_brute_force", ok, "double-sum oracle", witness);

  bool zero_ok = true;
  for (std::size_t Nl = 1; Nl < working && zero_ok; ++Nl) {
    const double v = local_kernel_integral(radix->order(Nl), GroupPoint::unit(radix, working, 0), Nl);
    zero_ok = std::abs(v) <= 1e-12;
    if (!zero_ok) witness = {{"N", Nl}, {"value", v}};
  }
  report.check("local_integral.block_outside_vanishes", zero_ok, "n = M_N, x outside I_N",
               zero_ok ? json::object() : witness);
}

// ---------------------------------------------------------------------------

void suite_lemma3(Report& report, const Radix& radix, std::size_t N, const SuiteConfig& config) {
  const Index size = radix->order(N);
  Index eligible = 0, points = 0;
  double min_ratio = std::numeric_limits<double>::infinity();
  json witness, min_witness;
  bool ok = true;
  for (Index n = 1; n < size; ++n) {
    const auto d = expand(n, *radix);
    if (d.rho == 0) continue;
    ++eligible;
    const auto result = lemma3_minorant_check(n, N, radix, config.kernel_tolerance);
    points += result.points;
    const double ratio = result.min_abs / static_cast<double>(radix->order(d.low));
    if (ratio < min_ratio) {
      min_ratio = ratio;
      min_witness = {{"n", n}, {"min_abs", result.min_abs}, {"M_low", radix->order(d.low)}};
    }
    if (!result.passed && ok) {
      ok = false;
      const auto& w = result.failures.front();
      witness = {{"n", n}, {"x", w.x}, {"abs_kernel", w.abs_kernel},
                 {"abs_shifted", w.abs_shifted}, {"bound", w.bound}};
    }
  }
  report.check("minorant.exhaustive", ok,
               std::to_string(eligible) + " indices, " + std::to_string(points) + " points",
               witness);
  report.constant("eligible", static_cast<double>(eligible), true);
  report.constant("min_ratio", eligible ? min_ratio : 0.0);
  report.extra["min_witness"] = min_witness;

  bool rejects = false;
  try {
    lemma3_minorant_check(radix->order(1), N, radix);
  } catch (const Error& e) {
    rejects = e.kind() == ErrorKind::Domain;
  }
  report.check("minorant.rejects_rho_zero", rejects, "n = M_1 has rho = 0");
}

// ---------------------------------------------------------------------------

void suite_theorem_w(Report& report, const Radix& radix, std::size_t N, const SuiteConfig& config) {
  const double tol = config.tolerance;
  const std::uint64_t count = config.trials ? config.trials : 100;

  {
    MaxTracker dev, tower;
    dev.offer(0.0, json::object());
    tower.offer(0.0, json::object());
    bool adapted = true;
    for (std::uint64_t trial = 0; trial < count; ++trial) {
      auto engine = trial_engine(config.seed, 3000 + trial);
      const auto f = random_function(radix, N, engine, false);
      const auto spectrum = forward(f);
      for (std::size_t n = 0; n <= N; ++n) {
        dev.offer(max_abs_diff(condexp(f, n), partial_sum(spectrum, radix->order(n))),
                  {{"trial", trial}, {"n", n}});
      }
      if (trial < 5) {
        for (std::size_t n = 0; n <= N; ++n)
          for (std::size_t k = 0; k <= N; ++k)
            tower.offer(max_abs_diff(condexp(condexp(f, n), k), condexp(f, std::min(n, k))),
                        {{"trial", trial}, {"n", n}, {"k", k}});
        adapted = adapted && Martingale::from_function(f).adapted(tol);
      }
    }
    report.check("condexp.equals_partial_sum", dev.value <= tol,
                 std::to_string(count) + " random f, max error " + fmt(dev.value),
                 dev.value <= tol ? json::object() : dev.witness);
    report.check("condexp.tower", tower.value <= tol, "E_k E_n = E_{min(n,k)}",
                 tower.value <= tol ? json::object() : tower.witness);
    report.check("martingale.adapted", adapted, "levels of E_n f are adapted");
  }

  for (double p : p_values_or(config, {0.5, 1.0})) {
    const std::string tag = "p=" + fmt(p);
    bool atoms_ok = true;
    json atom_witness;
    double atom_hardy = 0.0, ratio = 0.0;
    for (std::uint64_t trial = 0; trial < 40; ++trial) {
      auto engine = trial_engine(config.seed, 4000 + trial);
      AtomicDecomposition decomposition{radix, N, {}, {}};
      const std::size_t terms = 1 + engine() % 4;
      double coefficient_sum = 0.0;
      for (std::size_t i = 0; i < terms; ++i) {
        const std::size_t depth = engine() % N;
        Atom atom = (engine() % 2 == 0)
                        ? random_phase_atom(radix, N, depth, p, engine)
                        : block_atom(radix, N, depth, p, unrank(engine() % radix->order(N), N, radix));
        const auto diagnostics = validate_atom(atom, tol);
        if (!diagnostics.valid && atoms_ok) {
          atoms_ok = false;
          atom_witness = {{"trial", trial}, {"depth", depth}, {"mean", diagnostics.mean},
                          {"sup", diagnostics.sup}, {"bound", diagnostics.bound}};
        }
        atom_hardy = std::max(atom_hardy, hardy_norm(atom.values, p));
        const double lambda = 2.0 * uniform01(engine) - 1.0;
        coefficient_sum += std::pow(std::abs(lambda), p);
        decomposition.coefficients.push_back(lambda);
        decomposition.atoms.push_back(std::move(atom));
      }
      const auto f = assemble(decomposition, N);
      if (coefficient_sum > 0.0) ratio = std::max(ratio, std::pow(hardy_norm(f, p), p) / coefficient_sum);
    }
    report.check("atoms.generated_valid." + tag, atoms_ok, "random-phase and block atoms",
                 atom_witness);
    report.constant("atom_hardy_max." + tag, atom_hardy);
    report.constant("hardy_over_coefficients." + tag, ratio);
  }

  {
    AtomicDecomposition empty{radix, N, {}, {}};
    const auto zero = assemble(empty, N);
    bool ok = std::all_of(zero.values().begin(), zero.values().end(),
                          [](Complex z) { return z == Complex{}; });
    const Atom constant{Interval(GroupPoint::zero(radix, N), 0),
                        tabulate(radix, N, [](Index) { return Complex{1.0}; }), 1.0};
    ok = ok && !validate_atom(constant).valid;
    const Atom r0{Interval(GroupPoint::zero(radix, N), 0),
                  tabulate(radix, N, [&](Index x) { return character(*radix, N, 1, x); }), 1.0};
    ok = ok && validate_atom(r0).valid;
    report.check("atoms.examples", ok, "empty sum is 0; constant rejected; psi_1 accepted");
  }

  // Atoms on I_d against bounded-rho families: vanishing region and the
  // pointwise bound on I_s \ I_{s+1}.
  {
    bool vanish_ok = true;
    json vanish_witness;
    std::map<std::string, double> c_p;
    for (double p : p_values_or(config, {0.5, 1.0})) {
      for (const auto& family : {SubsequenceFamily::powers(), SubsequenceFamily::powers_plus_previous()}) {
        const auto last = last_member_within(family, member_bound(*radix, N), *radix);
        if (!last) continue;
        const auto members = family_members(family, *last + 1, *radix);
        const std::string key = "atom_pointwise." + family.name() + ".p=" + fmt(p);
        double worst = 0.0;
        for (std::size_t depth = 1; depth < N; ++depth) {
          for (std::uint64_t trial = 0; trial < 3; ++trial) {
            auto engine = trial_engine(config.seed, 5000 + 16 * depth + trial);
            Atom atom = trial == 0 ? block_atom(radix, N, depth, p, GroupPoint::zero(radix, N))
                                   : random_phase_atom(radix, N, depth, p, engine);
            // Recentre on I_depth(0).
            const Index base = rank(atom.support.base());
            const auto centred = tabulate(radix, N, [&](Index x) {
              return atom.values[add_ranks(*radix, N, x, base)];
            });
            const auto spectrum = forward(centred);
            const double scale = std::pow(static_cast<double>(radix->order(depth)), 1.0 / p - 1.0);
            for (Index alpha : members) {
              const auto s_alpha = partial_sum(spectrum, alpha);
              const std::size_t low = expand(alpha, *radix).low;
              for (Index x = 1; x < s_alpha.size(); ++x) {
                const std::size_t s = first_nonzero(*radix, N, x);
                if (s >= depth) continue;
                const double v = std::abs(s_alpha[x]);
                const bool must_vanish = alpha <= radix->order(depth) || low >= depth || s < low;
                if (must_vanish && v > 1e-9 * std::max(1.0, scale) && vanish_ok) {
                  vanish_ok = false;
                  vanish_witness = {{"alpha", alpha}, {"depth", depth}, {"x", x}, {"s", s},
                                    {"value", v}};
                }
                if (low <= s) {
                  worst = std::max(worst, v / (scale * static_cast<double>(radix->order(s))));
                }
              }
            }
          }
        }
        c_p[key] = worst;
      }
    }
    report.check("atoms.kernel_vanishing_region", vanish_ok,
                 "S_alpha a = 0 off I_d when alpha <= M_d, <alpha> >= d or s < <alpha>",
                 vanish_witness);
    for (const auto& [key, value] : c_p) report.constant(key, value);
  }

  {
    bool ok = true;
    json witness;
    for (std::uint64_t trial = 0; trial < 5; ++trial) {
      auto engine = trial_engine(config.seed, 6000 + trial);
      const auto f = random_function(radix, N, engine, false);
      const auto restricted = restricted_maximal(f, SubsequenceFamily::powers(), N);
      const double diff = max_abs_diff(restricted, maximal_function(f));
      if (diff > tol && ok) {
        ok = false;
        witness = {{"trial", trial}, {"difference", diff}};
      }
    }
    report.check("restricted_maximal.powers_equals_maximal", ok, "family M_n gives f*", witness);
  }

  try {
    const auto spec = select_subsequence(SubsequenceFamily::powers_plus_one(), 0.5,
                                         config.K ? config.K : 3, N, radix);
    const auto ce = build_counterexample(spec);
    MaxTracker dev;
    dev.offer(0.0, json::object());
    for (Index j = 0; j < ce.spectrum.size(); ++j) {
      dev.offer(std::abs(ce.spectrum[j] - Complex(ce.closed_form(j))), {{"j", j}});
    }
    bool valid = true;
    for (const auto& atom : ce.decomposition.atoms) valid = valid && validate_atom(atom, tol).valid;
    report.check("counterexample.closed_form", dev.value <= 1e-9,
                 "max error " + fmt(dev.value), dev.value <= 1e-9 ? json::object() : dev.witness);
    report.check("counterexample.atoms_valid", valid, "every a_k is a p-atom");
    report.check("counterexample.adapted", ce.martingale.adapted(tol), "f_n levels adapted");
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Capacity) throw;
    report.check("counterexample.closed_form", true, std::string("not run: ") + e.what());
  }
}

// ---------------------------------------------------------------------------

void suite_watari(Report& report, const Radix& radix, std::size_t N, const SuiteConfig& config) {
  const std::uint64_t count = config.trials ? config.trials : 100;
  const auto& r = *radix;
  const Index size = radix->order(N);
  double c2 = 0.0, c4 = 0.0, weak = 0.0;
  json w2, w4, wweak;
  const PhaseTable table(r, N);
  std::vector<Complex> partial(size);
  std::vector<double> mags(size);
  for (std::uint64_t trial = 0; trial < count; ++trial) {
    auto engine = trial_engine(config.seed, 7000 + trial);
    const auto f = random_function(radix, N, engine, true);
    const auto spectrum = forward(f);
    const double n2 = lp_quasinorm(f, 2.0), n4 = lp_quasinorm(f, 4.0), n1 = lp_quasinorm(f, 1.0);
    std::fill(partial.begin(), partial.end(), Complex{});
    for (Index n = 1; n <= size; ++n) {
      const Complex c = spectrum[n - 1];
      table.row(n - 1, [&](Index x, const Complex& psi) { partial[x] += c * psi; });
      double sum2 = 0.0, sum4 = 0.0;
      for (Index x = 0; x < size; ++x) {
        const double m2 = std::norm(partial[x]);
        mags[x] = std::sqrt(m2);
        sum2 += m2;
        sum4 += m2 * m2;
      }
      const double a2 = std::sqrt(sum2 / static_cast<double>(size)) / n2;
      const double a4 = std::pow(sum4 / static_cast<double>(size), 0.25) / n4;
      const double aw = weak_lp_norm(mags, 1.0) / n1;
      if (a2 > c2) c2 = a2, w2 = {{"trial", trial}, {"n", n}};
      if (a4 > c4) c4 = a4, w4 = {{"trial", trial}, {"n", n}};
      if (aw > weak) weak = aw, wweak = {{"trial", trial}, {"n", n}};
    }
  }
  report.check("strong_2.parseval", std::abs(c2 - 1.0) <= 1e-9,
               "max_n ||S_n f||_2 / ||f||_2 = " + fmt(c2), std::abs(c2 - 1.0) <= 1e-9 ? json::object() : w2);
  report.constant("strong_2", c2);
  report.constant("strong_4", c4);
  report.constant("weak_1_1", weak);
  report.extra["argmax"] = {{"strong_2", w2}, {"strong_4", w4}, {"weak_1_1", wweak}};
}

}  // namespace

const std::vector<std::string> kSuiteNames = {"group",  "system", "transform", "kernels",
                                              "lemma2", "lemma3", "theoremW",  "watari"};

Report run_suite(const std::string& name, const SuiteConfig& config) {
  if (std::find(kSuiteNames.begin(), kSuiteNames.end(), name) == kSuiteNames.end()) {
    throw_usage("unknown suite '" + name +
                "' (expected group, system, transform, kernels, lemma2, lemma3, theoremW or watari)");
  }
  SuiteConfig effective = config;
  if (name == "lemma2" && config.resolution == 0) effective.resolution = config.lemma2_resolution;
  if (name == "watari" && config.resolution == 0) {
    // Every n <= M_N is visited per function; keep M_N <= 1024 by default.
    const auto shape = resolve_shape(config);
    std::size_t N = shape.resolution;
    while (N > 1 && shape.radix->order(N) > 1024) --N;
    effective.resolution = N;
  }
  const auto shape = resolve_shape(effective);
  Report report;
  report.name = name;
  report.scope = config.radix + "/N" + std::to_string(shape.resolution);
  report.provenance = {{"config", config.echo()},
                       {"radix", shape.radix->to_string()},
                       {"resolution", shape.resolution},
                       {"seed", config.seed},
                       {"version", kVersion}};
  const auto& radix = shape.radix;
  const std::size_t N = shape.resolution;
  if (name == "group") suite_group(report, radix, N, config);
  if (name == "system") suite_system(report, radix, N, config);
  if (name == "transform") suite_transform(report, radix, N, config);
  if (name == "kernels") suite_kernels(report, radix, N, config);
  if (name == "lemma2") suite_lemma2(report, radix, N, config);
  if (name == "lemma3") suite_lemma3(report, radix, N, config);
  if (name == "theoremW") suite_theorem_w(report, radix, N, config);
  if (name == "watari") suite_watari(report, radix, N, config);
  return report;
}

}  // namespace vilenkin
