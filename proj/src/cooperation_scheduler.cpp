#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "coopcache/combinatorics.hpp"
#include "coopcache/delivery.hpp"
#include "coopcache/error.hpp"

namespace coopcache {

namespace {

struct PendingRef {
  int user;
  int slot_index;  // into PendingPairs::candidates(user) x layers
  SubfileId id;
};

// Demanded, uncached subfiles of layers 1..L1, per recipient.
class PendingPairs {
 public:
  PendingPairs(const DemandVector& demands, const DerivedParams& derived)
      : demands_(demands), users_(derived.users), layers_(static_cast<int>(derived.loads.user_layers)) {
    const auto all = subsets_of_size(derived.users, derived.replication);
    candidates_.resize(users_ + 1);
    pending_.resize(users_ + 1);
    counts_.assign(users_ + 1, 0);
    for (int r = 1; r <= users_; ++r) {
      for (UserSet T : all) {
        if (!T.contains(r)) candidates_[r].push_back(T);
      }
      pending_[r].assign(candidates_[r].size() * layers_, 1);
      counts_[r] = static_cast<int>(pending_[r].size());
      total_ += counts_[r];
    }
  }

  int count(int user) const { return counts_[user]; }
  std::int64_t total() const { return total_; }

  // First pending pair of `user` (by layer, then subset) whose subset covers `need`.
  std::optional<PendingRef> find(int user, UserSet need) const {
    const auto& cands = candidates_[user];
    const auto n = static_cast<int>(cands.size());
    for (int l = 0; l < layers_; ++l) {
      for (int i = 0; i < n; ++i) {
        const int idx = l * n + i;
        if (pending_[user][idx] && need.is_subset_of(cands[i])) {
          return PendingRef{user, idx, SubfileId{demands_.of(user), l + 1, cands[i]}};
        }
      }
    }
    return std::nullopt;
  }

  // Pending pairs of `user` whose subset covers `need`.
  int count_compatible(int user, UserSet need) const {
    const auto& cands = candidates_[user];
    const auto n = static_cast<int>(cands.size());
    int c = 0;
    for (int i = 0; i < n; ++i) {
      if (!need.is_subset_of(cands[i])) continue;
      for (int l = 0; l < layers_; ++l) c += pending_[user][l * n + i];
    }
    return c;
  }

  void take(const PendingRef& ref) {
    pending_[ref.user][ref.slot_index] = 0;
    --counts_[ref.user];
    --total_;
  }
  void restore(const PendingRef& ref) {
    pending_[ref.user][ref.slot_index] = 1;
    ++counts_[ref.user];
    ++total_;
  }

  std::vector<std::string> describe_remaining(std::size_t limit) const {
    std::vector<std::string> out;
    for (int r = 1; r <= users_ && out.size() < limit; ++r) {
      const auto n = static_cast<int>(candidates_[r].size());
      for (int idx = 0; idx < static_cast<int>(pending_[r].size()) && out.size() < limit; ++idx) {
        if (!pending_[r][idx]) continue;
        SubfileId id{demands_.of(r), idx / n + 1, candidates_[r][idx % n]};
        out.push_back("user " + std::to_string(r) + " <- " + id.to_string());
      }
    }
    return out;
  }

 private:
  DemandVector demands_;
  int users_;
  int layers_;
  std::vector<std::vector<UserSet>> candidates_;
  std::vector<std::vector<std::uint8_t>> pending_;
  std::vector<int> counts_;
  std::int64_t total_ = 0;
};

struct SymbolDraft {
  UserSet active;  // sender plus recipients
  int sender = 0;
  std::vector<PendingRef> pairs;
};

TransmissionSymbol to_symbol(const SymbolDraft& draft) {
  TransmissionSymbol sym;
  sym.sender = draft.sender;
  for (const auto& p : draft.pairs) {
    sym.components.push_back(p.id);
    sym.recipients.emplace_back(p.user, p.id);
  }
  std::sort(sym.components.begin(), sym.components.end());
  std::sort(sym.recipients.begin(), sym.recipients.end());
  return sym;
}

// Groups of size floor(K/alpha): each active set padded with the lowest
// users idle in this slot.
Slot to_slot(const std::vector<SymbolDraft>& drafts, int users, int group_size) {
  Slot slot;
  UserSet busy;
  for (const auto& d : drafts) busy = busy | d.active;
  std::vector<int> idle;
  for (int k = 1; k <= users; ++k) {
    if (!busy.contains(k)) idle.push_back(k);
  }
  std::size_t next_idle = 0;
  for (const auto& d : drafts) {
    UserSet group = d.active;
    while (group.size() < group_size && next_idle < idle.size()) group = group.with(idle[next_idle++]);
    slot.groups.push_back(group);
    slot.user_symbols.push_back(to_symbol(d));
  }
  return slot;
}

struct BudgetExhausted {};

// Depth-first search over slots in which every one of the alpha groups
// carries a full g-component symbol. Each slot is filled group by group;
// active sets are taken in increasing order of their lowest member so a slot
// is enumerated once. A user whose pending count equals the remaining slot
// count must receive in every remaining slot and is never chosen to send.
//
// Candidates are ordered by how few pending pairs the sender itself has
// inside the active set (its share is what the symbol leaves behind), then by
// the recipients' total backlog minus the sender's. Failed attempts restart
// with seeded random tie-breaking and a doubled node budget.
class ExactSearch {
 public:
  ExactSearch(const PendingPairs& initial, const DerivedParams& derived, std::int64_t target, std::int64_t budget)
      : initial_(initial),
        pending_(initial),
        users_(derived.users),
        alpha_(derived.alpha),
        g_(derived.multicast_size),
        group_size_(derived.group_size),
        target_(target),
        total_budget_(budget),
        active_sets_(subsets_of_size(derived.users, derived.multicast_size + 1)) {}

  bool run() {
    std::int64_t attempt_budget = 20'000;
    for (int attempt = 0; nodes_ < total_budget_; ++attempt) {
      pending_ = initial_;
      current_.clear();
      slots_.clear();
      noise_ = attempt > 0;
      rng_.seed(static_cast<std::uint64_t>(attempt));
      budget_ = std::min(total_budget_, nodes_ + attempt_budget);
      try {
        return slot_dfs(0);
      } catch (const BudgetExhausted&) {
      }
      attempt_budget *= 2;
    }
    return false;
  }

  std::vector<Slot> take_slots() { return std::move(slots_); }
  std::int64_t nodes() const { return nodes_; }

 private:
  struct Candidate {
    SymbolDraft draft;
    int backlog;
    int sender_share;
    std::uint32_t tie;
  };

  bool slot_dfs(std::int64_t index) {
    if (pending_.total() == 0) return true;
    if (index == target_) return false;
    if (++nodes_ > budget_) throw BudgetExhausted{};
    const std::int64_t remaining = target_ - index;
    if (pending_.total() > remaining * alpha_ * g_) return false;
    UserSet critical;
    for (int r = 1; r <= users_; ++r) {
      if (pending_.count(r) > remaining) return false;
      if (pending_.count(r) == remaining) critical = critical.with(r);
    }
    if (critical.size() > alpha_ * g_) return false;
    return group_dfs(index, 0, UserSet{}, UserSet{}, 0, critical);
  }

  bool group_dfs(std::int64_t index, int group, UserSet used, UserSet served, int last_min, UserSet critical) {
    if (group == alpha_) {
      if (!critical.is_subset_of(served)) return false;
      const std::vector<SymbolDraft> slot_drafts(current_.end() - alpha_, current_.end());
      slots_.push_back(to_slot(slot_drafts, users_, group_size_));
      if (slot_dfs(index + 1)) return true;
      slots_.pop_back();
      return false;
    }
    const UserSet unserved_critical = UserSet(critical.mask() & ~served.mask());
    if (unserved_critical.intersects(used)) return false;
    if (unserved_critical.size() > (alpha_ - group) * g_) return false;

    std::vector<Candidate> candidates;
    for (UserSet active : active_sets_) {
      if (active.intersects(used)) continue;
      const int lowest = __builtin_ctz(active.mask()) + 1;
      if (lowest <= last_min) continue;
      for (int sender : active.members()) {
        if (critical.contains(sender)) continue;
        Candidate c{{active, sender, {}}, 0, 0, noise_ ? static_cast<std::uint32_t>(rng_()) : 0u};
        bool ok = true;
        for (int r : active.members()) {
          if (r == sender) continue;
          auto ref = pending_.find(r, active.without(r));
          if (!ref) {
            ok = false;
            break;
          }
          c.draft.pairs.push_back(*ref);
          c.backlog += pending_.count(r);
        }
        if (!ok) continue;
        c.backlog -= pending_.count(sender);
        c.sender_share = pending_.count_compatible(sender, active.without(sender));
        candidates.push_back(std::move(c));
      }
    }
    std::stable_sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
      if (a.sender_share != b.sender_share) return a.sender_share < b.sender_share;
      if (a.backlog != b.backlog) return a.backlog > b.backlog;
      return a.tie < b.tie;
    });

    for (const Candidate& c : candidates) {
      for (const auto& p : c.draft.pairs) pending_.take(p);
      current_.push_back(c.draft);
      UserSet recipients = c.draft.active.without(c.draft.sender);
      const int lowest = __builtin_ctz(c.draft.active.mask()) + 1;
      if (group_dfs(index, group + 1, used | c.draft.active, served | recipients, lowest, critical)) return true;
      current_.pop_back();
      for (const auto& p : c.draft.pairs) pending_.restore(p);
    }
    return false;
  }

  const PendingPairs& initial_;
  PendingPairs pending_;
  int users_;
  int alpha_;
  int g_;
  int group_size_;
  std::int64_t target_;
  std::int64_t total_budget_;
  std::int64_t budget_ = 0;
  std::int64_t nodes_ = 0;
  bool noise_ = false;
  std::mt19937_64 rng_;
  std::vector<UserSet> active_sets_;
  std::vector<SymbolDraft> current_;
  std::vector<Slot> slots_;
};

// Slot-by-slot filler allowing partial symbols. Per group it picks the
// sender whose greedily grown recipient set is largest; recipients are
// tried in decreasing order of pending count.
std::vector<Slot> greedy_fill(PendingPairs& pending, const DerivedParams& derived) {
  const int K = derived.users;
  const int g = derived.multicast_size;
  std::vector<Slot> slots;
  while (pending.total() > 0) {
    std::vector<SymbolDraft> drafts;
    UserSet used;
    for (int group = 0; group < derived.alpha; ++group) {
      std::optional<SymbolDraft> best;
      for (int sender = 1; sender <= K; ++sender) {
        if (used.contains(sender)) continue;
        std::vector<int> order;
        for (int r = 1; r <= K; ++r) {
          if (r != sender && !used.contains(r) && pending.count(r) > 0) order.push_back(r);
        }
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return pending.count(a) > pending.count(b); });
        UserSet active = UserSet{}.with(sender);
        for (int r : order) {
          if (active.size() - 1 == g || active.size() == derived.group_size) break;
          UserSet grown = active.with(r);
          bool ok = true;
          for (int x : grown.without(sender).members()) {
            if (!pending.find(x, grown.without(x))) {
              ok = false;
              break;
            }
          }
          if (ok) active = grown;
        }
        if (active.size() < 2) continue;
        if (!best || active.size() > best->active.size()) best = SymbolDraft{active, sender, {}};
      }
      if (!best) break;
      for (int r : best->active.without(best->sender).members()) {
        auto ref = pending.find(r, best->active.without(r));
        pending.take(*ref);
        best->pairs.push_back(*ref);
      }
      used = used | best->active;
      drafts.push_back(std::move(*best));
    }
    if (drafts.empty()) {
      std::string msg = "cooperation scheduler stuck with pending pairs:";
      for (const auto& line : pending.describe_remaining(20)) msg += "\n  " + line;
      throw SchedulerError(msg);
    }
    slots.push_back(to_slot(drafts, K, derived.group_size));
  }
  return slots;
}

}  // namespace

CooperationPlan build_cooperation_schedule(const DemandVector& demands, const DerivedParams& derived,
                                           const SchedulerOptions& options) {
  CooperationPlan plan;
  if (!derived.cooperation_enabled() || derived.replication >= derived.users) {
    plan.meets_target = true;
    return plan;
  }
  if (auto target = target_user_slots(derived)) {
    PendingPairs pending(demands, derived);
    ExactSearch search(pending, derived, *target, options.node_budget);
    const bool found = search.run();
    plan.search_nodes = search.nodes();
    if (found) {
      plan.slots = search.take_slots();
      plan.meets_target = true;
      return plan;
    }
  }
  PendingPairs pending(demands, derived);
  plan.slots = greedy_fill(pending, derived);
  plan.meets_target = target_user_slots(derived) == static_cast<std::int64_t>(plan.slots.size());
  return plan;
}

}  // namespace coopcache
