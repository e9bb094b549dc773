#include <cmath>
#include <random>

#include "doctest.h"
#include "vilenkin/characters.hpp"
#include "vilenkin/error.hpp"
#include "vilenkin/kernels.hpp"
#include "vilenkin/maximal.hpp"

using namespace vilenkin;

namespace {

bool throws_kind(ErrorKind kind, auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind() == kind;
  }
  return false;
}

CylinderFunction random_function(const Radix& r, std::size_t N, unsigned seed) {
  std::mt19937_64 engine(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  return tabulate(r, N, [&](Index) { return Complex{u(engine), u(engine)}; });
}

}  // namespace

TEST_SUITE("maximal") {
  TEST_CASE("family parsing and rho") {
    const auto r = parse_radix("2,3", 12);
    for (const char* name : {"Mn", "Mn+1", "Mn+Mprev", "list:3,5,9", "pattern:0,2/0"}) {
      CHECK_NOTHROW(SubsequenceFamily::parse(name));
    }
    CHECK_THROWS_AS(SubsequenceFamily::parse("Mn+2"), Error);
    CHECK(family_rho_sup(SubsequenceFamily::powers(), 8, *r) == 0);
    CHECK(family_rho_sup(SubsequenceFamily::powers_plus_previous(), 8, *r) == 1);
    for (std::size_t K = 1; K <= 8; ++K) {
      const auto members = family_members(SubsequenceFamily::powers_plus_one(), K, *r);
      std::size_t brute = 0;
      for (Index n : members) brute = std::max(brute, expand(n, *r).rho);
      CHECK(family_rho_sup(SubsequenceFamily::powers_plus_one(), K, *r) == brute);
      CHECK(brute == K);
    }
    CHECK(SubsequenceFamily::powers().structurally_bounded());
    CHECK(SubsequenceFamily::powers_plus_previous().structurally_bounded());
    CHECK_FALSE(SubsequenceFamily::powers_plus_one().structurally_bounded());
  }

  TEST_CASE("restricted maximal operator") {
    const auto r = parse_radix("2,3", 8);
    const auto f = random_function(r, 5, 11);
    const auto powers = SubsequenceFamily::powers();
    CHECK(max_abs_diff(restricted_maximal(f, powers, 5), maximal_function(f)) <= 1e-10);

    const auto plus_one = SubsequenceFamily::powers_plus_one();
    const auto first = restricted_maximal(f, plus_one, 0);
    const auto s3 = partial_sum(f, 3);
    for (Index t = 0; t < f.size(); ++t) CHECK(first[t].real() == doctest::Approx(std::abs(s3[t])));

    // Pointwise monotone in the number of members used, and equal to a direct max.
    CylinderFunction previous(r, 5);
    for (std::size_t K = 0; K <= 3; ++K) {
      const auto current = restricted_maximal(f, plus_one, K);
      const auto members = family_members(plus_one, K + 1, *r);
      for (Index t = 0; t < f.size(); ++t) {
        REQUIRE(current[t].real() >= previous[t].real() - 1e-12);
        double brute = 0.0;
        for (Index n : members) brute = std::max(brute, std::abs(partial_sum(f, n)[t]));
        REQUIRE(current[t].real() == doctest::Approx(brute));
      }
      previous = current;
    }
    CHECK(throws_kind(ErrorKind::Capacity, [&] { restricted_maximal(f, plus_one, 5); }));
  }

  TEST_CASE("weighted maximal operator on characters") {
    const auto r = parse_radix("2", 8);
    for (double p : {0.5, 1.0}) {
      for (Index j : {Index{0}, Index{3}, Index{10}}) {
        const auto psi = tabulate(r, 5, [&](Index x) { return character(*r, 5, j, x); });
        const auto w = weighted_maximal(psi, p);
        const double n1 = static_cast<double>(j + 2);
        const double expected = 1.0 / (std::pow(n1, 1.0 / p - 1.0) * (p == 1.0 ? std::log(n1) : 1.0));
        for (Index t = 0; t < w.size(); ++t) REQUIRE(w[t].real() == doctest::Approx(expected));
      }
    }
    const auto f = random_function(r, 3, 1);
    CHECK(throws_kind(ErrorKind::Domain, [&] { weighted_maximal(f, 0.0); }));
    CHECK(throws_kind(ErrorKind::Domain, [&] { weighted_maximal(f, 1.5); }));
  }

  TEST_CASE("atoms annihilate low partial sums") {
    const auto r = parse_radix("2,3", 8);
    const std::size_t N = 5;
    for (std::uint64_t trial = 0; trial < 12; ++trial) {
      auto engine = trial_engine(7, trial);
      const std::size_t depth = 1 + trial % (N - 1);
      const auto atom = random_phase_atom(r, N, depth, 0.5, engine);
      CHECK(validate_atom(atom).valid);
      for (Index alpha = 1; alpha <= r->order(depth); ++alpha) {
        const auto s = partial_sum(atom.values, alpha);
        for (Index t = 0; t < s.size(); ++t) REQUIRE(std::abs(s[t]) <= 1e-9);
      }
      const auto block = block_atom(r, N, depth, 0.5, unrank(trial % r->order(N), N, r));
      CHECK(validate_atom(block).valid);
    }
  }

  TEST_CASE("probe harness") {
    const auto r = parse_radix("2", 10);
    ProbeGenerator generator{GeneratorKind::StructuredAtoms, r, 6, 3, 4, 3};

    ProbeOperator identity{OperatorKind::Identity, std::nullopt, std::nullopt};
    CHECK(identity.id() == "identity");
    const auto id_report = probe_operator_norm(identity, 0.5, 30, generator);
    CHECK(id_report.max_ratio <= 1.0 + 1e-12);
    CHECK(id_report.max_outside <= 1e-12);

    ProbeOperator restricted{OperatorKind::Restricted, SubsequenceFamily::powers_plus_previous(),
                             std::nullopt};
    CHECK(restricted.id() == "restricted:Mn+Mprev");
    const auto a = probe_operator_norm(restricted, 0.5, 25, generator);
    const auto b = probe_operator_norm(restricted, 0.5, 25, generator);
    CHECK(a.max_ratio == b.max_ratio);
    CHECK(a.argmax_trial == b.argmax_trial);
    REQUIRE(a.rows.size() == 25);
    for (std::size_t t = 0; t < a.rows.size(); ++t) {
      const auto input = generate_input(generator, 0.5, t);
      CHECK(input.description == a.rows[t].description);
      CHECK(a.rows[t].ratio <= a.max_ratio);
    }

    ProbeGenerator empty{GeneratorKind::AtomicCombinations, r, 6, 1, 4, 0};
    const auto skipped = probe_operator_norm(identity, 1.0, 5, empty);
    CHECK(skipped.skipped == 5);
    CHECK(skipped.max_ratio == 0.0);

    ProbeOperator weighted{OperatorKind::Weighted, std::nullopt, std::nullopt};
    CHECK(weighted.id() == "weighted");
    CHECK(throws_kind(ErrorKind::Domain, [&] { weighted.apply(random_function(r, 4, 2), 2.0); }));
  }
}
