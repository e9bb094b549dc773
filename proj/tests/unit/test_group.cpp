#include <random>
#include <set>

#include "doctest.h"
#include "vilenkin/error.hpp"
#include "vilenkin/group.hpp"

using namespace vilenkin;

namespace {

std::vector<unsigned> coords_of(const GroupPoint& x) { return {x.coords().begin(), x.coords().end()}; }

bool throws_kind(ErrorKind kind, auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind() == kind;
  }
  return false;
}

}  // namespace

TEST_SUITE("group") {
  TEST_CASE("cumulative orders and m_star") {
    const auto r = make_radix({2, 3, 4});
    CHECK(r->order(0) == 1);
    CHECK(r->order(1) == 2);
    CHECK(r->order(2) == 6);
    CHECK(r->order(3) == 24);
    CHECK(r->m_star() == 4);
    CHECK(r->capacity() == 3);
  }

  TEST_CASE("radix parsing and validation") {
    const auto r = parse_radix("2,3", 5);
    CHECK(r->capacity() == 5);
    CHECK(r->m(4) == 2);
    CHECK(r->m(3) == 3);
    CHECK(throws_kind(ErrorKind::Usage, [] { parse_radix("2,,3"); }));
    CHECK(throws_kind(ErrorKind::Usage, [] { parse_radix("two"); }));
    CHECK(throws_kind(ErrorKind::Domain, [] { make_radix({2, 1}); }));
    CHECK(throws_kind(ErrorKind::Capacity, [] { parse_radix("2", 70); }));
  }

  TEST_CASE("expand: digits of 17 in m = (2,3,4)") {
    const auto r = make_radix({2, 3, 4});
    const auto d = expand(17, *r);
    CHECK(d.digits == std::vector<unsigned>{1, 2, 2});
    CHECK(d.low == 0);
    CHECK(d.high == 2);
    CHECK(d.rho == 2);
    // Recomposition oracle.
    CHECK(d.digits[0] * 1 + d.digits[1] * 2 + d.digits[2] * 6 == 17);
  }

  TEST_CASE("expand: named families") {
    const auto r = parse_radix("2,3", 8);
    for (std::size_t k = 1; k < 8; ++k) {
      const auto mk = expand(r->order(k), *r);
      CHECK(mk.low == k);
      CHECK(mk.high == k);
      CHECK(mk.rho == 0);
      const auto prev = expand(r->order(k) + r->order(k - 1), *r);
      CHECK(prev.low == k - 1);
      CHECK(prev.high == k);
      CHECK(prev.rho == 1);
      const auto plus1 = expand(r->order(k) + 1, *r);
      CHECK(plus1.low == 0);
      CHECK(plus1.high == k);
      CHECK(plus1.rho == k);
    }
  }

  TEST_CASE("expand errors") {
    const auto r = make_radix({2, 3});
    CHECK(throws_kind(ErrorKind::Domain, [&] { expand(0, *r); }));
    CHECK(throws_kind(ErrorKind::Capacity, [&] { expand(6, *r); }));
    CHECK_NOTHROW(expand(5, *r));
  }

  TEST_CASE("property: M_|n| <= n < M_{|n|+1} and recomposition") {
    for (const char* text : {"2", "2,3", "3,4", "2,3,4,5"}) {
      const auto r = parse_radix(text, 8);
      const Index limit = std::min<Index>(r->order(8), 5000);
      for (Index n = 1; n < limit; ++n) {
        const auto d = expand(n, *r);
        Index back = 0;
        for (std::size_t j = 0; j < d.digits.size(); ++j) back += d.digits[j] * r->order(j);
        REQUIRE(back == n);
        REQUIRE(r->order(d.high) <= n);
        REQUIRE(n < r->order(d.high + 1));
        REQUIRE(d.digit(d.low) != 0);
        for (std::size_t j = 0; j < d.low; ++j) REQUIRE(d.digit(j) == 0);
      }
    }
  }

  TEST_CASE("rank and unrank") {
    const auto r = make_radix({2, 3});
    CHECK(coords_of(unrank(0, 2, r)) == std::vector<unsigned>{0, 0});
    CHECK(coords_of(unrank(5, 2, r)) == std::vector<unsigned>{1, 2});
    for (Index t = 0; t < 6; ++t) CHECK(rank(unrank(t, 2, r)) == t);
    CHECK(throws_kind(ErrorKind::Capacity, [&] { unrank(6, 2, r); }));
  }

  TEST_CASE("addition and negation") {
    const auto r = make_radix({2, 3});
    const GroupPoint x(r, {1, 2});
    CHECK(coords_of(add(x, x)) == std::vector<unsigned>{0, 1});
    CHECK(coords_of(neg(x)) == std::vector<unsigned>{1, 1});
    CHECK(add(x, GroupPoint::zero(r, 2)) == x);
    CHECK(add(x, neg(x)) == GroupPoint::zero(r, 2));
    const GroupPoint shorter(r, {1});
    CHECK(throws_kind(ErrorKind::Usage, [&] { add(x, shorter); }));
    const GroupPoint other(make_radix({2, 5}), {1, 2});
    CHECK(throws_kind(ErrorKind::Usage, [&] { add(x, other); }));
  }

  TEST_CASE("property: abelian group axioms, exhaustive for M_N <= 256") {
    for (const char* text : {"2", "2,3", "3,4", "2,3,4"}) {
      auto r = parse_radix(text, 8);
      std::size_t N = 1;
      while (N < 8 && r->order(N + 1) <= 64) ++N;
      const Index size = r->order(N);
      for (Index a = 0; a < size; ++a) {
        const auto x = unrank(a, N, r);
        CHECK(add(x, neg(x)) == GroupPoint::zero(r, N));
        for (Index b = 0; b < size; ++b) {
          const auto y = unrank(b, N, r);
          REQUIRE(add(x, y) == add(y, x));
          REQUIRE(rank(add(x, y)) == add_ranks(*r, N, a, b));
          REQUIRE(rank(sub(x, y)) == sub_ranks(*r, N, a, b));
          for (Index c = 0; c < size; c += 3) {
            const auto z = unrank(c, N, r);
            REQUIRE(add(add(x, y), z) == add(x, add(y, z)));
          }
        }
      }
    }
  }

  TEST_CASE("intervals and measures") {
    const auto r = make_radix({2, 3});
    const auto zero = GroupPoint::zero(r, 2);
    CHECK(measure(Interval(zero, 0)) == Rational(1));
    CHECK(measure(Interval(zero, 1)) == Rational(1, 2));
    CHECK(measure(Interval(zero, 2)) == Rational(1, 6));
    for (Index t = 0; t < 6; ++t) CHECK(contains(Interval(zero, 0), unrank(t, 2, r)));
    CHECK(contains(Interval(zero, 1), GroupPoint(r, {0, 2})));
    CHECK_FALSE(contains(Interval(zero, 1), GroupPoint(r, {1, 0})));
    CHECK(contains(Interval(GroupPoint(r, {1, 1}), 1), GroupPoint(r, {1, 2})));
  }

  TEST_CASE("annulus examples") {
    const auto r22 = make_radix({2, 2});
    std::set<std::vector<unsigned>> got;
    for (const auto& x : Annulus(0, 2, r22)) got.insert(coords_of(x));
    CHECK(got == std::set<std::vector<unsigned>>{{1, 0}, {1, 1}});

    // Enumerate-and-filter oracle for m = (2,3), s = 1.
    const auto r23 = make_radix({2, 3});
    std::vector<std::vector<unsigned>> expected, listed;
    for (unsigned x1 = 0; x1 < 3; ++x1)
      for (unsigned x0 = 0; x0 < 2; ++x0)
        if (x0 == 0 && x1 != 0) expected.push_back({x0, x1});
    for (const auto& x : Annulus(1, 2, r23)) listed.push_back(coords_of(x));
    CHECK(listed == expected);
    CHECK(Annulus(1, 2, r23).size() == 2);
    CHECK(throws_kind(ErrorKind::Domain, [&] { Annulus(2, 2, r23); }));
  }

  TEST_CASE("property: annuli and I_N partition the group, measures sum to 1 exactly") {
    for (const char* text : {"2", "2,3", "3,4,2", "5,2"}) {
      const auto r = parse_radix(text, 6);
      const std::size_t N = 4;
      const Index size = r->order(N);
      std::vector<int> hits(size, 0);
      Rational total(1, static_cast<std::int64_t>(size));
      hits[0] = 1;
      for (std::size_t s = 0; s < N; ++s) {
        const Annulus annulus(s, N, r);
        CHECK(annulus.size() == size / r->order(s) - size / r->order(s + 1));
        Index count = 0;
        Index previous = 0;
        for (auto it = annulus.begin(); it != annulus.end(); ++it, ++count) {
          ++hits[it.rank()];
          CHECK(first_nonzero(*r, N, it.rank()) == s);
          CHECK(rank(*it) == it.rank());
          if (count) CHECK(it.rank() > previous);
          previous = it.rank();
        }
        CHECK(count == annulus.size());
        total += Rational(static_cast<std::int64_t>(count), static_cast<std::int64_t>(size));
      }
      CHECK(total == Rational(1));
      for (int h : hits) CHECK(h == 1);
    }
  }
}
