#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "coopcache/delivery.hpp"
#include "coopcache/placement.hpp"

namespace coopcache {

// One observed transmission. `intended` is the component addressed to the
// logging user, if any.
struct Reception {
  std::int64_t slot = 0;  // 1-based
  int source = kServer;
  std::vector<std::uint8_t> payload;
  std::vector<SubfileId> components;
  std::optional<SubfileId> intended;
};

// Y_k together with the server signal: every server symbol plus the user
// symbols addressed to k, in slot order.
struct ReceptionLog {
  int user = 0;
  std::vector<Reception> entries;
};

// Each user's cache with its payload bytes. decode_user sees only this and
// the reception log.
struct CacheContents {
  CacheState state;
  std::vector<std::vector<std::uint8_t>> payloads;  // parallel to state.entries

  const std::vector<std::uint8_t>* find(const SubfileId& id) const;
};

std::vector<CacheContents> load_caches(const std::vector<CacheState>& caches, const SplitFiles& split,
                                       const FileLibrary& library);

// Transmits the schedule: the server XORs from the library, user senders XOR
// from their own caches. Throws DecodeError if a user sender lacks a
// component (the schedule was not validated).
std::vector<ReceptionLog> execute_schedule(const Schedule& schedule, const FileLibrary& library,
                                           const SplitFiles& split, const std::vector<CacheContents>& caches);

// psi_k: cancels cached components from every addressed symbol, then
// concatenates cached and decoded subfiles of W_{d_k} in canonical order.
// Throws DecodeError naming the first subfile it cannot recover.
std::vector<std::uint8_t> decode_user(int user, const ReceptionLog& log, const CacheContents& cache,
                                      const DemandVector& demands, const SubfileLayout& layout);

struct SimulationResult {
  std::vector<bool> decoded;  // per user, bit-exact match with the library
  std::vector<std::string> failures;
  std::int64_t user_slots = 0;
  std::int64_t server_symbols = 0;
  std::int64_t total_slots = 0;

  bool all_decoded() const;
};

// Executes and decodes every user, comparing against the library. Users are
// decoded in parallel when `threads` > 1.
SimulationResult simulate(const Schedule& schedule, const FileLibrary& library, const SplitFiles& split,
                          const std::vector<CacheContents>& caches, unsigned threads = 1);

}  // namespace coopcache
