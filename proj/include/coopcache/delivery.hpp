#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coopcache/params.hpp"
#include "coopcache/placement.hpp"

namespace coopcache {

// d_k for k = 1..K, stored at index k-1. File indices are 1-based.
struct DemandVector {
  std::vector<int> files;

  int of(int user) const { return files.at(user - 1); }
  int users() const { return static_cast<int>(files.size()); }
  bool all_distinct() const;
  friend bool operator==(const DemandVector&, const DemandVector&) = default;
};

inline constexpr int kServer = 0;

// One XOR-coded transmission. `sender` is kServer or a user index.
struct TransmissionSymbol {
  int sender = kServer;
  std::vector<SubfileId> components;                  // sorted
  std::vector<std::pair<int, SubfileId>> recipients;  // sorted by user

  bool from_server() const { return sender == kServer; }
  friend bool operator==(const TransmissionSymbol&, const TransmissionSymbol&) = default;
};

struct Slot {
  std::optional<TransmissionSymbol> server_symbol;
  std::vector<UserSet> groups;                  // partition active in this slot
  std::vector<TransmissionSymbol> user_symbols;  // at most one per group

  friend bool operator==(const Slot&, const Slot&) = default;
};

// Self-describing delivery plan: enough context to validate and execute it
// without the parameters that produced it.
struct Schedule {
  int users = 0;
  int files = 0;
  int replication = 0;
  int alpha = 1;
  Loads loads;
  DemandVector demands;
  std::vector<Slot> slots;

  std::int64_t server_symbol_count() const;
  std::int64_t user_slot_count() const;  // slots carrying at least one user symbol

  friend bool operator==(const Schedule&, const Schedule&) = default;
};

// K distinct files drawn uniformly from [N] (worst case), seed-deterministic.
DemandVector worst_case_demands(const SystemParams& params, std::uint64_t seed);

// Server part: for every (t+1)-subset S and layer l in (L1, L], the symbol
// XOR_{k in S} W^l_{d_k, S\{k}}. Count C(K,t+1) * L2; empty when t == K.
std::vector<TransmissionSymbol> build_server_schedule(const DemandVector& demands, const DerivedParams& derived);

// K*C(K-1,t)*L1 / (alpha*g), the number of cooperation slots when every slot
// carries alpha full symbols; 0 when cooperation is off, nullopt when the
// ratio is not integral.
std::optional<std::int64_t> target_user_slots(const DerivedParams& derived);

struct CooperationPlan {
  std::vector<Slot> slots;       // no server symbols
  bool meets_target = false;     // slot count equals target_user_slots
  std::int64_t search_nodes = 0;
};

struct SchedulerOptions {
  // Backtracking budget for the exact search before falling back to the
  // greedy filler.
  std::int64_t node_budget = 2'000'000;
};

// Cooperation part for layers 1..L1. Tries to reach target_user_slots with a
// backtracking search over slot fillings; if the budget runs out or the
// target is not integral, completes with a greedy filler that may use
// partial symbols and more slots (meets_target = false).
// Throws SchedulerError when some pending pair cannot be served at all.
CooperationPlan build_cooperation_schedule(const DemandVector& demands, const DerivedParams& derived,
                                           const SchedulerOptions& options = {});

// Interleaves server symbols (one per slot) with cooperation slots.
Schedule assemble_schedule(const DemandVector& demands, const DerivedParams& derived,
                           std::vector<TransmissionSymbol> server, std::vector<Slot> cooperation);

// Convenience: server + cooperation + assemble.
struct BuiltSchedule {
  Schedule schedule;
  bool meets_target = false;
};
BuiltSchedule build_schedule(const DemandVector& demands, const DerivedParams& derived,
                             const SchedulerOptions& options = {});

enum class Constraint {
  HeaderMismatch,
  GroupOutOfRange,
  GroupsOverlap,
  TooManyUserSenders,
  SenderOutsideGroups,
  TwoSendersInGroup,
  RecipientOutsideGroup,
  SenderAlsoReceives,
  ReceivesFromTwoUsers,
  ServerSymbolFromUser,
  UserSymbolFromServer,
  SenderMissingComponent,
  ComponentCapExceeded,
  MalformedSymbol,
  RecipientNotDecodable,
  WrongLayerRoute,
  DuplicateDelivery,
  MissingDelivery,
};

std::string constraint_name(Constraint c);

struct Violation {
  Constraint constraint;
  std::int64_t slot = -1;  // 1-based, -1 when not slot-specific
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  std::int64_t user_slots = 0;
  std::int64_t server_symbols = 0;
  std::optional<std::int64_t> target_user_slots;
  std::int64_t expected_server_symbols = 0;

  bool ok() const { return violations.empty(); }
  bool counts_match() const {
    return server_symbols == expected_server_symbols && target_user_slots && user_slots == *target_user_slots;
  }
  bool has(Constraint c) const;
};

// Machine check of every channel-model constraint, the decodability of each
// symbol against the caches and demands, and exact-once coverage of the
// demanded uncached subfiles (layers <= L1 by users, the rest by the server).
ValidationReport validate_schedule(const Schedule& schedule, const std::vector<CacheState>& caches,
                                   const DemandVector& demands, const DerivedParams& derived);

}  // namespace coopcache
