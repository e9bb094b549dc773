#include "vilenkin/group.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

#include "vilenkin/error.hpp"

namespace vilenkin {

namespace {

// Largest M we accept so that 1/M fits an int64 rational and products of a
// rank with a digit never overflow.
constexpr Index kMaxOrder = Index{1} << 62;

Complex unit_root(unsigned u, unsigned m) {
  if ((4u * u) % m == 0) {
    switch ((4u * u) / m) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      case 3: return {0.0, -1.0};
      default: break;
    }
  }
  const double theta = 2.0 * std::numbers::pi * static_cast<double>(u) / m;
  return {std::cos(theta), std::sin(theta)};
}

void require_same_group(const GroupPoint& x, const GroupPoint& y) {
  if (x.resolution() != y.resolution() || !(*x.radix() == *y.radix())) {
    throw_usage("group points have mismatched radix or resolution");
  }
}

}  // namespace

RadixSequence::RadixSequence(std::vector<unsigned> m) : m_(std::move(m)) {
  if (m_.empty()) throw_domain("radix sequence is empty");
  M_.reserve(m_.size() + 1);
  M_.push_back(1);
  for (std::size_t k = 0; k < m_.size(); ++k) {
    if (m_[k] < 2) {
      throw_domain("radix m_" + std::to_string(k) + " = " + std::to_string(m_[k]) +
                   " is below 2");
    }
    if (M_.back() > kMaxOrder / m_[k]) {
      throw_capacity("cumulative order M_" + std::to_string(k + 1) +
                     " overflows the supported range");
    }
    M_.push_back(M_.back() * m_[k]);
  }
  m_star_ = *std::max_element(m_.begin(), m_.end());
  roots_.reserve(m_.size());
  for (unsigned mk : m_) {
    std::vector<Complex> table(mk);
    for (unsigned u = 0; u < mk; ++u) table[u] = unit_root(u, mk);
    roots_.push_back(std::move(table));
  }
}

RadixSequence RadixSequence::parse(std::string_view list, std::size_t repeat) {
  std::vector<unsigned> pattern;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    auto comma = list.find(',', pos);
    if (comma == std::string_view::npos) comma = list.size();
    auto token = list.substr(pos, comma - pos);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    unsigned value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size()) {
      throw_usage("malformed radix list '" + std::string(list) + "'");
    }
    pattern.push_back(value);
    pos = comma + 1;
  }
  if (repeat == 0) return RadixSequence(std::move(pattern));
  std::vector<unsigned> cycled(repeat);
  for (std::size_t k = 0; k < repeat; ++k) cycled[k] = pattern[k % pattern.size()];
  return RadixSequence(std::move(cycled));
}

std::string RadixSequence::to_string() const {
  std::string out;
  for (std::size_t k = 0; k < m_.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(m_[k]);
  }
  return out;
}

Radix make_radix(std::vector<unsigned> m) {
  return std::make_shared<const RadixSequence>(std::move(m));
}

Radix parse_radix(std::string_view list, std::size_t repeat) {
  return std::make_shared<const RadixSequence>(RadixSequence::parse(list, repeat));
}

DigitExpansion expand(Index n, const RadixSequence& radix) {
  if (n == 0) throw_domain("digit expansion of 0 has no nonzero digit");
  if (n >= radix.order(radix.capacity())) {
    throw_capacity("index " + std::to_string(n) + " exceeds radix capacity M_" +
                   std::to_string(radix.capacity()) + " = " +
                   std::to_string(radix.order(radix.capacity())));
  }
  DigitExpansion out;
  out.n = n;
  bool seen = false;
  for (std::size_t j = 0; n != 0; ++j) {
    const unsigned d = static_cast<unsigned>(n % radix.m(j));
    n /= radix.m(j);
    out.digits.push_back(d);
    if (d != 0) {
      if (!seen) out.low = j;
      seen = true;
      out.high = j;
    }
  }
  out.rho = out.high - out.low;
  return out;
}

GroupPoint::GroupPoint(Radix radix, std::vector<unsigned> coords)
    : radix_(std::move(radix)), coords_(std::move(coords)) {
  if (!radix_) throw_usage("group point without radix");
  if (coords_.size() > radix_->capacity()) {
    throw_capacity("resolution " + std::to_string(coords_.size()) +
                   " exceeds radix capacity " + std::to_string(radix_->capacity()));
  }
  for (std::size_t j = 0; j < coords_.size(); ++j) {
    if (coords_[j] >= radix_->m(j)) {
      throw_domain("coordinate x_" + std::to_string(j) + " = " +
                   std::to_string(coords_[j]) + " is not below m_" + std::to_string(j));
    }
  }
}

GroupPoint GroupPoint::zero(Radix radix, std::size_t resolution) {
  return GroupPoint(std::move(radix), std::vector<unsigned>(resolution, 0u));
}

GroupPoint GroupPoint::unit(Radix radix, std::size_t resolution, std::size_t k) {
  if (k >= resolution) throw_usage("unit point e_k needs k < resolution");
  std::vector<unsigned> coords(resolution, 0u);
  coords[k] = 1;
  return GroupPoint(std::move(radix), std::move(coords));
}

Index rank(const GroupPoint& x) {
  Index t = 0;
  for (std::size_t j = x.resolution(); j-- > 0;) t = t * x.radix()->m(j) + x[j];
  return t;
}

GroupPoint unrank(Index t, std::size_t resolution, const Radix& radix) {
  if (resolution > radix->capacity()) {
    throw_capacity("resolution " + std::to_string(resolution) + " exceeds radix capacity");
  }
  if (t >= radix->order(resolution)) {
    throw_capacity("rank " + std::to_string(t) + " is not below M_" +
                   std::to_string(resolution));
  }
  std::vector<unsigned> coords(resolution);
  for (std::size_t j = 0; j < resolution; ++j) {
    coords[j] = static_cast<unsigned>(t % radix->m(j));
    t /= radix->m(j);
  }
  return GroupPoint(radix, std::move(coords));
}

GroupPoint add(const GroupPoint& x, const GroupPoint& y) {
  require_same_group(x, y);
  std::vector<unsigned> coords(x.resolution());
  for (std::size_t j = 0; j < coords.size(); ++j) {
    coords[j] = (x[j] + y[j]) % x.radix()->m(j);
  }
  return GroupPoint(x.radix(), std::move(coords));
}

GroupPoint neg(const GroupPoint& x) {
  std::vector<unsigned> coords(x.resolution());
  for (std::size_t j = 0; j < coords.size(); ++j) {
    const unsigned mj = x.radix()->m(j);
    coords[j] = (mj - x[j]) % mj;
  }
  return GroupPoint(x.radix(), std::move(coords));
}

GroupPoint sub(const GroupPoint& x, const GroupPoint& y) { return add(x, neg(y)); }

Index add_ranks(const RadixSequence& radix, std::size_t resolution, Index a, Index b) {
  Index out = 0;
  for (std::size_t j = 0; j < resolution; ++j) {
    const unsigned mj = radix.m(j);
    out += ((a % mj + b % mj) % mj) * radix.order(j);
    a /= mj;
    b /= mj;
  }
  return out;
}

Index neg_rank(const RadixSequence& radix, std::size_t resolution, Index a) {
  Index out = 0;
  for (std::size_t j = 0; j < resolution; ++j) {
    const unsigned mj = radix.m(j);
    out += ((mj - a % mj) % mj) * radix.order(j);
    a /= mj;
  }
  return out;
}

Index sub_ranks(const RadixSequence& radix, std::size_t resolution, Index a, Index b) {
  Index out = 0;
  for (std::size_t j = 0; j < resolution; ++j) {
    const unsigned mj = radix.m(j);
    out += ((a % mj + mj - b % mj) % mj) * radix.order(j);
    a /= mj;
    b /= mj;
  }
  return out;
}

std::size_t first_nonzero(const RadixSequence& radix, std::size_t resolution, Index t) {
  for (std::size_t j = 0; j < resolution; ++j) {
    if (t % radix.m(j) != 0) return j;
    t /= radix.m(j);
  }
  return resolution;
}

Interval::Interval(GroupPoint base, std::size_t depth) : base_(std::move(base)), depth_(depth) {
  if (depth_ > base_.resolution()) {
    throw_usage("interval depth " + std::to_string(depth_) + " exceeds base resolution " +
                std::to_string(base_.resolution()));
  }
}

bool contains(const Interval& interval, const GroupPoint& x) {
  if (interval.depth() > x.resolution()) {
    throw_usage("interval depth exceeds the resolution of the point");
  }
  for (std::size_t j = 0; j < interval.depth(); ++j) {
    if (x[j] != interval.base()[j]) return false;
  }
  return true;
}

Rational measure(const Interval& interval) {
  return Rational(1, static_cast<std::int64_t>(interval.base().radix()->order(interval.depth())));
}

Annulus::Annulus(std::size_t s, std::size_t resolution, Radix radix)
    : s_(s), resolution_(resolution), radix_(std::move(radix)) {
  if (s_ >= resolution_) {
    throw_domain("annulus I_s \\ I_{s+1} needs s < N (s = " + std::to_string(s_) +
                 ", N = " + std::to_string(resolution_) + ")");
  }
  if (resolution_ > radix_->capacity()) throw_capacity("annulus resolution exceeds radix capacity");
}

Annulus::iterator Annulus::begin() const {
  iterator it;
  it.owner_ = this;
  it.low_ = radix_->order(s_);
  it.step_ = radix_->order(s_ + 1);
  return it;
}

Annulus::iterator Annulus::end() const {
  iterator it = begin();
  it.tail_ = radix_->order(resolution_) / radix_->order(s_ + 1);
  return it;
}

Annulus::iterator& Annulus::iterator::operator++() {
  if (++digit_ == owner_->radix_->m(owner_->s_)) {
    digit_ = 1;
    ++tail_;
  }
  return *this;
}

GroupPoint Annulus::iterator::operator*() const {
  return unrank(rank(), owner_->resolution_, owner_->radix_);
}

Index Annulus::size() const {
  const Index total = radix_->order(resolution_);
  return total / radix_->order(s_) - total / radix_->order(s_ + 1);
}

std::vector<Index> Annulus::ranks() const {
  std::vector<Index> out;
  out.reserve(size());
  for (auto it = begin(); it != end(); ++it) out.push_back(it.rank());
  return out;
}

}  // namespace vilenkin
