#pragma once

// Truncated bounded Vilenkin group: mixed-radix number system, group points
// at a finite resolution N, cylinder intervals and their Haar measure.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

namespace vilenkin {

using Index = std::uint64_t;
using Complex = std::complex<double>;
using Rational = boost::rational<std::int64_t>;

/// Generating sequence m_0, m_1, ... (each >= 2) with cumulative orders
/// M_0 = 1, M_{k+1} = m_k M_k, and a table of m_k-th roots of unity per
/// coordinate. Immutable after construction.
class RadixSequence {
 public:
  explicit RadixSequence(std::vector<unsigned> m);

  /// Parses "2,3,2,4"; a nonzero `repeat` cycles the pattern to that length.
  static RadixSequence parse(std::string_view list, std::size_t repeat = 0);

  /// N_max: number of stored generators.
  std::size_t capacity() const noexcept { return m_.size(); }
  unsigned m(std::size_t k) const { return m_.at(k); }
  /// M_k for 0 <= k <= capacity().
  Index order(std::size_t k) const { return M_.at(k); }
  unsigned m_star() const noexcept { return m_star_; }

  std::span<const unsigned> generators() const noexcept { return m_; }
  std::span<const Index> orders() const noexcept { return M_; }

  /// exp(2 pi i u / m_k), u taken mod m_k.
  const Complex& root(std::size_t k, unsigned u) const {
    return roots_[k][u % m_[k]];
  }

  std::string to_string() const;

  friend bool operator==(const RadixSequence& a, const RadixSequence& b) {
    return a.m_ == b.m_;
  }

 private:
  std::vector<unsigned> m_;
  std::vector<Index> M_;
  unsigned m_star_ = 0;
  std::vector<std::vector<Complex>> roots_;
};

using Radix = std::shared_ptr<const RadixSequence>;

Radix make_radix(std::vector<unsigned> m);
Radix parse_radix(std::string_view list, std::size_t repeat = 0);

/// Mixed-radix digits of n >= 1 with the lowest / highest nonzero digit
/// positions <n>, |n| and the spread rho(n) = |n| - <n>.
struct DigitExpansion {
  Index n = 0;
  std::vector<unsigned> digits;  // length high + 1
  std::size_t low = 0;
  std::size_t high = 0;
  std::size_t rho = 0;

  unsigned digit(std::size_t j) const { return j < digits.size() ? digits[j] : 0u; }
};

/// Throws Domain for n == 0 and Capacity for n >= M[N_max].
DigitExpansion expand(Index n, const RadixSequence& radix);

/// Element of the quotient group prod_{k<N} Z_{m_k}.
class GroupPoint {
 public:
  GroupPoint(Radix radix, std::vector<unsigned> coords);

  static GroupPoint zero(Radix radix, std::size_t resolution);
  /// e_k: only coordinate k equals one.
  static GroupPoint unit(Radix radix, std::size_t resolution, std::size_t k);

  std::size_t resolution() const noexcept { return coords_.size(); }
  unsigned operator[](std::size_t j) const { return coords_[j]; }
  std::span<const unsigned> coords() const noexcept { return coords_; }
  const Radix& radix() const noexcept { return radix_; }

  friend bool operator==(const GroupPoint& a, const GroupPoint& b) {
    return a.coords_ == b.coords_ && *a.radix_ == *b.radix_;
  }

 private:
  Radix radix_;
  std::vector<unsigned> coords_;
};

/// Little-endian rank t = sum_j x_j M_j.
Index rank(const GroupPoint& x);
GroupPoint unrank(Index t, std::size_t resolution, const Radix& radix);

GroupPoint add(const GroupPoint& x, const GroupPoint& y);
GroupPoint neg(const GroupPoint& x);
GroupPoint sub(const GroupPoint& x, const GroupPoint& y);

// Rank-level arithmetic at resolution N (no allocation).
Index add_ranks(const RadixSequence& radix, std::size_t resolution, Index a, Index b);
Index neg_rank(const RadixSequence& radix, std::size_t resolution, Index a);
Index sub_ranks(const RadixSequence& radix, std::size_t resolution, Index a, Index b);

/// Index of the first nonzero coordinate of the point with rank t, or
/// `resolution` when t == 0. Equivalently the s with x in I_s \ I_{s+1}.
std::size_t first_nonzero(const RadixSequence& radix, std::size_t resolution, Index t);

/// Cylinder I_depth(base).
class Interval {
 public:
  Interval(GroupPoint base, std::size_t depth);

  const GroupPoint& base() const noexcept { return base_; }
  std::size_t depth() const noexcept { return depth_; }

 private:
  GroupPoint base_;
  std::size_t depth_;
};

bool contains(const Interval& interval, const GroupPoint& x);
/// mu(I_n) = 1 / M_n, exactly.
Rational measure(const Interval& interval);

/// The points of I_s \ I_{s+1} at resolution N, in increasing rank order.
class Annulus {
 public:
  Annulus(std::size_t s, std::size_t resolution, Radix radix);

  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = GroupPoint;
    using difference_type = std::ptrdiff_t;

    GroupPoint operator*() const;
    Index rank() const noexcept { return tail_ * step_ + digit_ * low_; }
    iterator& operator++();
    iterator operator++(int) {
      auto copy = *this;
      ++*this;
      return copy;
    }
    friend bool operator==(const iterator& a, const iterator& b) {
      return a.tail_ == b.tail_ && a.digit_ == b.digit_;
    }

   private:
    friend class Annulus;
    const Annulus* owner_ = nullptr;
    Index tail_ = 0;
    Index digit_ = 1;
    Index low_ = 1;   // M_s
    Index step_ = 1;  // M_{s+1}
  };

  iterator begin() const;
  iterator end() const;
  /// M_N / M_s - M_N / M_{s+1}
  Index size() const;
  std::vector<Index> ranks() const;

 private:
  std::size_t s_;
  std::size_t resolution_;
  Radix radix_;
};

}  // namespace vilenkin
