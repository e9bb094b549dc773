#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vilenkin/group.hpp"

namespace vilenkin {

enum class FamilyKind { ExplicitList, Mn, MnPlus1, MnPlusMprev, DigitPattern };

/// A strictly increasing sequence of positive indices alpha_0 < alpha_1 < ...
///
/// Every built-in family is a digit pattern: for n = n_0 + k,
///   alpha_k = sum_{o in top} M_{n-o} + sum_{a in low} M_a
/// with n_0 chosen so that all positions are distinct. M_n is top {0};
/// M_n + M_{n-1} is top {0, 1}; M_n + 1 is top {0}, low {0}. A pattern has
/// bounded rho exactly when `low` is empty.
class SubsequenceFamily {
 public:
  static SubsequenceFamily explicit_list(std::vector<Index> members);
  static SubsequenceFamily powers();           // M_n, n >= 0
  static SubsequenceFamily powers_plus_one();  // M_n + 1, n >= 1
  static SubsequenceFamily powers_plus_previous();  // M_n + M_{n-1}, n >= 1
  static SubsequenceFamily digit_pattern(std::vector<std::size_t> top,
                                         std::vector<std::size_t> low);

  /// "Mn", "Mn+1", "Mn+Mprev", "list:3,5,9" or "pattern:<top>/<low>",
  /// e.g. "pattern:0,2/0".
  static SubsequenceFamily parse(std::string_view text);

  FamilyKind kind() const noexcept { return kind_; }
  std::string name() const;

  /// alpha_k, or nullopt when it needs M_j beyond the radix capacity (or
  /// past the end of an explicit list).
  std::optional<Index> member(std::size_t k, const RadixSequence& radix) const;

  /// True when sup_k rho(alpha_k) < infinity over the whole infinite family.
  /// Explicit lists are finite and report false; their prefix is inspected
  /// by the callers instead.
  bool structurally_bounded() const;

 private:
  SubsequenceFamily() = default;

  FamilyKind kind_ = FamilyKind::Mn;
  std::vector<Index> list_;
  std::vector<std::size_t> top_;
  std::vector<std::size_t> low_;
  std::size_t first_ = 0;
};

/// The first K members; Capacity error if they do not fit the radix.
std::vector<Index> family_members(const SubsequenceFamily& family, std::size_t count,
                                  const RadixSequence& radix);
/// max rho over the first K members.
std::size_t family_rho_sup(const SubsequenceFamily& family, std::size_t count,
                           const RadixSequence& radix);
/// Largest k with alpha_k <= bound, if alpha_0 <= bound.
std::optional<std::size_t> last_member_within(const SubsequenceFamily& family, Index bound,
                                              const RadixSequence& radix);

}  // namespace vilenkin
