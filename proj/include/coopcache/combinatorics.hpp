#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace coopcache {

// Binomial coefficient C(n, k); 0 when k < 0 or k > n.
std::int64_t binomial(int n, int k);

// A subset of users {1..K}, user k stored at bit k-1. Numeric order of the
// masks is the canonical (colexicographic) order of equal-size subsets.
class UserSet {
 public:
  constexpr UserSet() = default;
  constexpr explicit UserSet(std::uint32_t mask) : mask_(mask) {}

  static UserSet of(const std::vector<int>& users);
  static UserSet range(int k);  // {1..k}

  constexpr std::uint32_t mask() const { return mask_; }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr bool contains(int user) const { return (mask_ >> (user - 1)) & 1u; }
  int size() const { return __builtin_popcount(mask_); }

  constexpr bool is_subset_of(UserSet other) const { return (mask_ & ~other.mask_) == 0; }
  constexpr bool intersects(UserSet other) const { return (mask_ & other.mask_) != 0; }

  UserSet with(int user) const { return UserSet(mask_ | (1u << (user - 1))); }
  UserSet without(int user) const { return UserSet(mask_ & ~(1u << (user - 1))); }
  UserSet operator|(UserSet other) const { return UserSet(mask_ | other.mask_); }
  UserSet operator&(UserSet other) const { return UserSet(mask_ & other.mask_); }

  std::vector<int> members() const;

  // "{1,3,4}"
  std::string to_string() const;

  friend constexpr bool operator==(UserSet, UserSet) = default;
  friend constexpr auto operator<=>(UserSet, UserSet) = default;

 private:
  std::uint32_t mask_ = 0;
};

// All size-k subsets of {1..n} in canonical order.
std::vector<UserSet> subsets_of_size(int n, int k);

// All size-k subsets of `pool` in canonical order.
std::vector<UserSet> subsets_of_size(UserSet pool, int k);

}  // namespace coopcache
