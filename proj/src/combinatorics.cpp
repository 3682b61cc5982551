#include "coopcache/combinatorics.hpp"

#include <stdexcept>

namespace coopcache {

std::int64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::int64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
  }
  return result;
}

UserSet UserSet::of(const std::vector<int>& users) {
  UserSet set;
  for (int u : users) {
    if (u < 1 || u > 32) throw std::out_of_range("user index out of range: " + std::to_string(u));
    set = set.with(u);
  }
  return set;
}

UserSet UserSet::range(int k) {
  return UserSet(k >= 32 ? ~0u : ((1u << k) - 1u));
}

std::vector<int> UserSet::members() const {
  std::vector<int> out;
  out.reserve(size());
  for (std::uint32_t m = mask_; m != 0; m &= m - 1) {
    out.push_back(__builtin_ctz(m) + 1);
  }
  return out;
}

std::string UserSet::to_string() const {
  std::string out = "{";
  bool first = true;
  for (int u : members()) {
    if (!first) out += ',';
    out += std::to_string(u);
    first = false;
  }
  out += '}';
  return out;
}

std::vector<UserSet> subsets_of_size(int n, int k) {
  return subsets_of_size(UserSet::range(n), k);
}

std::vector<UserSet> subsets_of_size(UserSet pool, int k) {
  std::vector<UserSet> out;
  if (k < 0 || k > pool.size()) return out;
  const std::vector<int> members = pool.members();
  const int n = static_cast<int>(members.size());
  // Colex enumeration over positions in `pool`; since members are increasing
  // the resulting masks come out in increasing numeric order.
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    std::uint32_t mask = 0;
    for (int i : idx) mask |= 1u << (members[i] - 1);
    out.emplace_back(mask);
    int i = 0;
    while (i < k && (i + 1 < k ? idx[i] + 1 == idx[i + 1] : idx[i] + 1 == n)) ++i;
    if (i == k) break;
    ++idx[i];
    for (int j = 0; j < i; ++j) idx[j] = j;
  }
  return out;
}

}  // namespace coopcache
