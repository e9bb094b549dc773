#include "vilenkin/family.hpp"

#include <algorithm>
#include <charconv>

#include "vilenkin/error.hpp"

namespace vilenkin {

namespace {

template <class T>
std::vector<T> parse_list(std::string_view text, std::string_view context) {
  std::vector<T> out;
  if (text.empty()) return out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    const auto token = text.substr(pos, comma - pos);
    T value{};
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size()) {
      throw_usage("malformed number list in family '" + std::string(context) + "'");
    }
    out.push_back(value);
    pos = comma + 1;
  }
  return out;
}

std::string join(const std::vector<std::size_t>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(values[i]);
  }
  return out;
}

}  // namespace

SubsequenceFamily SubsequenceFamily::explicit_list(std::vector<Index> members) {
  if (members.empty()) throw_usage("explicit family is empty");
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (members[i] == 0) throw_domain("family members must be positive");
    if (i > 0 && members[i] <= members[i - 1]) {
      throw_domain("family members must be strictly increasing");
    }
  }
  SubsequenceFamily family;
  family.kind_ = FamilyKind::ExplicitList;
  family.list_ = std::move(members);
  return family;
}

SubsequenceFamily SubsequenceFamily::digit_pattern(std::vector<std::size_t> top,
                                                   std::vector<std::size_t> low) {
  if (top.empty()) throw_usage("digit pattern needs at least one top offset");
  std::sort(top.begin(), top.end());
  std::sort(low.begin(), low.end());
  if (std::adjacent_find(top.begin(), top.end()) != top.end() ||
      std::adjacent_find(low.begin(), low.end()) != low.end()) {
    throw_usage("digit pattern positions must be distinct");
  }
  SubsequenceFamily family;
  family.kind_ = FamilyKind::DigitPattern;
  family.top_ = std::move(top);
  family.low_ = std::move(low);
  // Smallest n with n - max(top) > max(low) keeps every position distinct.
  family.first_ = family.top_.back() + (family.low_.empty() ? 0 : family.low_.back() + 1);
  return family;
}

SubsequenceFamily SubsequenceFamily::powers() {
  auto family = digit_pattern({0}, {});
  family.kind_ = FamilyKind::Mn;
  return family;
}

SubsequenceFamily SubsequenceFamily::powers_plus_one() {
  auto family = digit_pattern({0}, {0});
  family.kind_ = FamilyKind::MnPlus1;
  return family;
}

SubsequenceFamily SubsequenceFamily::powers_plus_previous() {
  auto family = digit_pattern({0, 1}, {});
  family.kind_ = FamilyKind::MnPlusMprev;
  return family;
}

SubsequenceFamily SubsequenceFamily::parse(std::string_view text) {
  if (text == "Mn") return powers();
  if (text == "Mn+1") return powers_plus_one();
  if (text == "Mn+Mprev") return powers_plus_previous();
  if (text.starts_with("list:")) return explicit_list(parse_list<Index>(text.substr(5), text));
  if (text.starts_with("pattern:")) {
    const auto body = text.substr(8);
    const auto slash = body.find('/');
    const auto top = body.substr(0, slash);
    const auto low = slash == std::string_view::npos ? std::string_view{} : body.substr(slash + 1);
    return digit_pattern(parse_list<std::size_t>(top, text), parse_list<std::size_t>(low, text));
  }
  throw_usage("unknown family '" + std::string(text) +
              "' (expected Mn, Mn+1, Mn+Mprev, list:... or pattern:...)");
}

std::string SubsequenceFamily::name() const {
  switch (kind_) {
    case FamilyKind::Mn: return "Mn";
    case FamilyKind::MnPlus1: return "Mn+1";
    case FamilyKind::MnPlusMprev: return "Mn+Mprev";
    case FamilyKind::DigitPattern: return "pattern:" + join(top_) + "/" + join(low_);
    case FamilyKind::ExplicitList: {
      std::string out = "list:";
      for (std::size_t i = 0; i < list_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(list_[i]);
      }
      return out;
    }
  }
  return "?";
}

std::optional<Index> SubsequenceFamily::member(std::size_t k, const RadixSequence& radix) const {
  if (kind_ == FamilyKind::ExplicitList) {
    if (k >= list_.size()) return std::nullopt;
    return list_[k];
  }
  const std::size_t n = first_ + k;
  if (n > radix.capacity()) return std::nullopt;
  Index value = 0;
  for (std::size_t o : top_) value += radix.order(n - o);
  for (std::size_t a : low_) value += radix.order(a);
  return value;
}

bool SubsequenceFamily::structurally_bounded() const {
  return kind_ != FamilyKind::ExplicitList && low_.empty();
}

std::vector<Index> family_members(const SubsequenceFamily& family, std::size_t count,
                                  const RadixSequence& radix) {
  if (count == 0) throw_usage("family_members needs K >= 1");
  std::vector<Index> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    auto value = family.member(k, radix);
    if (!value) {
      throw_capacity("family " + family.name() + " has no member alpha_" + std::to_string(k) +
                     " within radix capacity " + std::to_string(radix.capacity()));
    }
    out.push_back(*value);
  }
  return out;
}

std::size_t family_rho_sup(const SubsequenceFamily& family, std::size_t count,
                           const RadixSequence& radix) {
  std::size_t sup = 0;
  for (Index alpha : family_members(family, count, radix)) {
    sup = std::max(sup, expand(alpha, radix).rho);
  }
  return sup;
}

std::optional<std::size_t> last_member_within(const SubsequenceFamily& family, Index bound,
                                              const RadixSequence& radix) {
  std::optional<std::size_t> last;
  for (std::size_t k = 0;; ++k) {
    auto value = family.member(k, radix);
    if (!value || *value > bound) break;
    last = k;
  }
  return last;
}

}  // namespace vilenkin
