#include "coopcache/delivery.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "coopcache/combinatorics.hpp"
#include "coopcache/error.hpp"

namespace coopcache {

bool DemandVector::all_distinct() const {
  std::set<int> seen(files.begin(), files.end());
  return seen.size() == files.size();
}

std::int64_t Schedule::server_symbol_count() const {
  return std::count_if(slots.begin(), slots.end(), [](const Slot& s) { return s.server_symbol.has_value(); });
}

std::int64_t Schedule::user_slot_count() const {
  return std::count_if(slots.begin(), slots.end(), [](const Slot& s) { return !s.user_symbols.empty(); });
}

DemandVector worst_case_demands(const SystemParams& params, std::uint64_t seed) {
  validate(params);
  std::vector<int> files(params.files);
  for (int n = 0; n < params.files; ++n) files[n] = n + 1;
  // Fisher-Yates with plain modular draws so the sequence does not depend on
  // the standard library's distribution implementation.
  std::mt19937_64 rng(seed);
  for (int i = params.files - 1; i > 0; --i) {
    auto j = static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1));
    std::swap(files[i], files[j]);
  }
  files.resize(params.users);
  return DemandVector{files};
}

std::vector<TransmissionSymbol> build_server_schedule(const DemandVector& demands, const DerivedParams& derived) {
  std::vector<TransmissionSymbol> out;
  const int K = derived.users;
  const int t = derived.replication;
  if (t + 1 > K) return out;
  const auto multicast_sets = subsets_of_size(K, t + 1);
  for (std::int64_t l = derived.loads.user_layers + 1; l <= derived.layers(); ++l) {
    for (UserSet S : multicast_sets) {
      TransmissionSymbol sym;
      sym.sender = kServer;
      for (int k : S.members()) {
        SubfileId id{demands.of(k), static_cast<int>(l), S.without(k)};
        sym.components.push_back(id);
        sym.recipients.emplace_back(k, id);
      }
      std::sort(sym.components.begin(), sym.components.end());
      out.push_back(std::move(sym));
    }
  }
  return out;
}

std::optional<std::int64_t> target_user_slots(const DerivedParams& derived) {
  if (!derived.cooperation_enabled()) return 0;
  const std::int64_t pairs =
      derived.users * binomial(derived.users - 1, derived.replication) * derived.loads.user_layers;
  const std::int64_t per_slot = static_cast<std::int64_t>(derived.alpha) * derived.multicast_size;
  if (pairs % per_slot != 0) return std::nullopt;
  return pairs / per_slot;
}

Schedule assemble_schedule(const DemandVector& demands, const DerivedParams& derived,
                           std::vector<TransmissionSymbol> server, std::vector<Slot> cooperation) {
  Schedule schedule;
  schedule.users = derived.users;
  schedule.files = derived.files;
  schedule.replication = derived.replication;
  schedule.alpha = derived.alpha;
  schedule.loads = derived.loads;
  schedule.demands = demands;
  const std::size_t n = std::max(server.size(), cooperation.size());
  schedule.slots.resize(n);
  for (std::size_t i = 0; i < cooperation.size(); ++i) schedule.slots[i] = std::move(cooperation[i]);
  for (std::size_t i = 0; i < server.size(); ++i) schedule.slots[i].server_symbol = std::move(server[i]);
  return schedule;
}

BuiltSchedule build_schedule(const DemandVector& demands, const DerivedParams& derived,
                             const SchedulerOptions& options) {
  if (demands.users() != derived.users) {
    throw ValidationError(ValidationError::Code::DemandOutOfRange, "demand vector length differs from K");
  }
  for (int d : demands.files) {
    if (d < 1 || d > derived.files) {
      throw ValidationError(ValidationError::Code::DemandOutOfRange, "demand " + std::to_string(d) + " outside [1, N]");
    }
  }
  auto server = build_server_schedule(demands, derived);
  CooperationPlan plan = build_cooperation_schedule(demands, derived, options);
  return {assemble_schedule(demands, derived, std::move(server), std::move(plan.slots)), plan.meets_target};
}

}  // namespace coopcache
