#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "coopcache/combinatorics.hpp"
#include "coopcache/delivery.hpp"

namespace coopcache {

std::string constraint_name(Constraint c) {
  switch (c) {
    case Constraint::HeaderMismatch: return "header-mismatch";
    case Constraint::GroupOutOfRange: return "group-out-of-range";
    case Constraint::GroupsOverlap: return "groups-overlap";
    case Constraint::TooManyUserSenders: return "too-many-user-senders";
    case Constraint::SenderOutsideGroups: return "sender-outside-groups";
    case Constraint::TwoSendersInGroup: return "two-senders-in-group";
    case Constraint::RecipientOutsideGroup: return "recipient-outside-group";
    case Constraint::SenderAlsoReceives: return "sender-also-receives";
    case Constraint::ReceivesFromTwoUsers: return "receives-from-two-users";
    case Constraint::ServerSymbolFromUser: return "server-symbol-from-user";
    case Constraint::UserSymbolFromServer: return "user-symbol-from-server";
    case Constraint::SenderMissingComponent: return "sender-missing-component";
    case Constraint::ComponentCapExceeded: return "component-cap-exceeded";
    case Constraint::MalformedSymbol: return "malformed-symbol";
    case Constraint::RecipientNotDecodable: return "recipient-not-decodable";
    case Constraint::WrongLayerRoute: return "wrong-layer-route";
    case Constraint::DuplicateDelivery: return "duplicate-delivery";
    case Constraint::MissingDelivery: return "missing-delivery";
  }
  return "unknown";
}

bool ValidationReport::has(Constraint c) const {
  return std::any_of(violations.begin(), violations.end(), [c](const Violation& v) { return v.constraint == c; });
}

namespace {

class Validator {
 public:
  Validator(const Schedule& schedule, const std::vector<CacheState>& caches, const DemandVector& demands,
            const DerivedParams& derived)
      : schedule_(schedule), caches_(caches), demands_(demands), derived_(derived), layout_(derived) {}

  ValidationReport run() {
    check_header();
    report_.expected_server_symbols =
        derived_.replication + 1 > derived_.users
            ? 0
            : binomial(derived_.users, derived_.replication + 1) * derived_.loads.server_layers;
    report_.target_user_slots = target_user_slots(derived_);
    report_.server_symbols = schedule_.server_symbol_count();
    report_.user_slots = schedule_.user_slot_count();
    if (!caches_ok_) return report_;
    for (std::size_t i = 0; i < schedule_.slots.size(); ++i) check_slot(static_cast<std::int64_t>(i + 1), schedule_.slots[i]);
    check_coverage();
    return report_;
  }

 private:
  void fail(Constraint c, std::int64_t slot, std::string detail) {
    report_.violations.push_back({c, slot, std::move(detail)});
  }

  void check_header() {
    auto mismatch = [&](const std::string& what) { fail(Constraint::HeaderMismatch, -1, what); };
    if (schedule_.users != derived_.users) mismatch("users differ");
    if (schedule_.files != derived_.files) mismatch("files differ");
    if (schedule_.replication != derived_.replication) mismatch("replication differs");
    if (schedule_.alpha != derived_.alpha) mismatch("alpha differs");
    if (schedule_.loads != derived_.loads) mismatch("loads differ");
    if (schedule_.demands.files != demands_.files) mismatch("demands differ");
    if (static_cast<int>(caches_.size()) != derived_.users) {
      mismatch("expected one cache per user");
      caches_ok_ = false;
    }
    if (demands_.users() != derived_.users) {
      mismatch("demand vector length differs from K");
      caches_ok_ = false;
    }
  }

  const CacheState& cache(int user) const { return caches_[user - 1]; }

  bool valid_user(int user) const { return user >= 1 && user <= derived_.users; }

  // Structure and decodability shared by server and user symbols.
  bool check_symbol(std::int64_t slot, const TransmissionSymbol& sym, const std::string& who) {
    if (sym.components.empty()) {
      fail(Constraint::MalformedSymbol, slot, who + ": no components");
      return false;
    }
    std::set<SubfileId> components(sym.components.begin(), sym.components.end());
    if (components.size() != sym.components.size()) {
      fail(Constraint::MalformedSymbol, slot, who + ": repeated component");
      return false;
    }
    for (const auto& c : sym.components) {
      if (!layout_.contains(c)) {
        fail(Constraint::MalformedSymbol, slot, who + ": invalid subfile " + c.to_string());
        return false;
      }
    }
    std::set<int> recipients;
    std::set<SubfileId> mapped;
    for (const auto& [user, id] : sym.recipients) {
      if (!valid_user(user) || !recipients.insert(user).second) {
        fail(Constraint::MalformedSymbol, slot, who + ": bad or repeated recipient " + std::to_string(user));
        return false;
      }
      if (!components.count(id) || !mapped.insert(id).second) {
        fail(Constraint::MalformedSymbol, slot,
             who + ": recipient " + std::to_string(user) + " mapped to " + id.to_string() + " which is not a distinct component");
        return false;
      }
    }
    if (mapped.size() != components.size()) {
      fail(Constraint::MalformedSymbol, slot, who + ": component without recipient");
      return false;
    }
    bool ok = true;
    for (const auto& [user, id] : sym.recipients) {
      const CacheState& z = cache(user);
      bool good = true;
      if (id.file != demands_.of(user)) {
        fail(Constraint::RecipientNotDecodable, slot,
             who + ": user " + std::to_string(user) + " receives " + id.to_string() + " but demands file " +
                 std::to_string(demands_.of(user)));
        good = false;
      }
      if (z.contains(id)) {
        fail(Constraint::RecipientNotDecodable, slot,
             who + ": user " + std::to_string(user) + " already caches " + id.to_string());
        good = false;
      }
      for (const auto& other : sym.components) {
        if (other != id && !z.contains(other)) {
          fail(Constraint::RecipientNotDecodable, slot,
               who + ": user " + std::to_string(user) + " cannot cancel " + other.to_string());
          good = false;
        }
      }
      if (good) {
        delivered_[{user, id}].push_back(slot);
      } else {
        ok = false;
      }
    }
    return ok;
  }

  void check_slot(std::int64_t slot, const Slot& s) {
    const int K = derived_.users;
    if (s.server_symbol) {
      const auto& sym = *s.server_symbol;
      if (!sym.from_server()) fail(Constraint::ServerSymbolFromUser, slot, "server symbol sent by user " + std::to_string(sym.sender));
      for (const auto& c : sym.components) {
        if (c.layer <= derived_.loads.user_layers) {
          fail(Constraint::WrongLayerRoute, slot, "server sends user-layer subfile " + c.to_string());
        }
      }
      check_symbol(slot, sym, "server");
    }

    UserSet covered;
    for (UserSet group : s.groups) {
      if (group.empty() || !group.is_subset_of(UserSet::range(K))) {
        fail(Constraint::GroupOutOfRange, slot, "group " + group.to_string());
      }
      if (group.intersects(covered)) fail(Constraint::GroupsOverlap, slot, "group " + group.to_string());
      covered = covered | group;
    }
    if (static_cast<int>(s.user_symbols.size()) > derived_.alpha) {
      fail(Constraint::TooManyUserSenders, slot,
           std::to_string(s.user_symbols.size()) + " user symbols, alpha=" + std::to_string(derived_.alpha));
    }

    std::vector<int> senders_per_group(s.groups.size(), 0);
    UserSet senders;
    std::map<int, int> received_from;
    for (const auto& sym : s.user_symbols) {
      const std::string who = "user " + std::to_string(sym.sender);
      if (sym.from_server()) {
        fail(Constraint::UserSymbolFromServer, slot, "cooperation symbol marked as server");
        continue;
      }
      if (!valid_user(sym.sender)) {
        fail(Constraint::MalformedSymbol, slot, "sender " + std::to_string(sym.sender) + " out of range");
        continue;
      }
      senders = senders.with(sym.sender);
      int group_index = -1;
      for (std::size_t i = 0; i < s.groups.size(); ++i) {
        if (s.groups[i].contains(sym.sender)) group_index = static_cast<int>(i);
      }
      if (group_index < 0) {
        fail(Constraint::SenderOutsideGroups, slot, who + " is in no group");
      } else {
        if (++senders_per_group[group_index] == 2) {
          fail(Constraint::TwoSendersInGroup, slot, "group " + s.groups[group_index].to_string());
        }
        for (const auto& [user, id] : sym.recipients) {
          if (!s.groups[group_index].contains(user)) {
            fail(Constraint::RecipientOutsideGroup, slot,
                 who + " -> user " + std::to_string(user) + " outside " + s.groups[group_index].to_string());
          }
        }
      }
      if (static_cast<int>(sym.components.size()) > derived_.multicast_size) {
        fail(Constraint::ComponentCapExceeded, slot,
             who + ": " + std::to_string(sym.components.size()) + " components, cap " +
                 std::to_string(derived_.multicast_size));
      }
      for (const auto& c : sym.components) {
        if (!cache(sym.sender).contains(c)) {
          fail(Constraint::SenderMissingComponent, slot, who + " does not cache " + c.to_string());
        }
        if (c.layer > derived_.loads.user_layers) {
          fail(Constraint::WrongLayerRoute, slot, who + " sends server-layer subfile " + c.to_string());
        }
      }
      for (const auto& [user, id] : sym.recipients) {
        if (++received_from[user] == 2) {
          fail(Constraint::ReceivesFromTwoUsers, slot, "user " + std::to_string(user));
        }
      }
      check_symbol(slot, sym, who);
    }
    for (const auto& [user, count] : received_from) {
      if (senders.contains(user)) {
        fail(Constraint::SenderAlsoReceives, slot, "user " + std::to_string(user) + " sends and receives");
      }
    }
  }

  void check_coverage() {
    for (int k = 1; k <= derived_.users; ++k) {
      for (const SubfileId& id : layout_.of_file(demands_.of(k))) {
        if (id.subset.contains(k)) continue;
        auto it = delivered_.find({k, id});
        if (it == delivered_.end()) {
          fail(Constraint::MissingDelivery, -1, "user " + std::to_string(k) + " never receives " + id.to_string());
        } else if (it->second.size() > 1) {
          fail(Constraint::DuplicateDelivery, it->second[1],
               "user " + std::to_string(k) + " receives " + id.to_string() + " " +
                   std::to_string(it->second.size()) + " times");
        }
      }
    }
  }

  const Schedule& schedule_;
  const std::vector<CacheState>& caches_;
  const DemandVector& demands_;
  const DerivedParams& derived_;
  SubfileLayout layout_;
  bool caches_ok_ = true;
  ValidationReport report_;
  std::map<std::pair<int, SubfileId>, std::vector<std::int64_t>> delivered_;
};

}  // namespace

ValidationReport validate_schedule(const Schedule& schedule, const std::vector<CacheState>& caches,
                                   const DemandVector& demands, const DerivedParams& derived) {
  return Validator(schedule, caches, demands, derived).run();
}

}  // namespace coopcache
