#include "coopcache/simulator.hpp"

#include <algorithm>
#include <map>
#include <thread>

#include "coopcache/error.hpp"

namespace coopcache {

const std::vector<std::uint8_t>* CacheContents::find(const SubfileId& id) const {
  auto it = std::lower_bound(state.entries.begin(), state.entries.end(), id);
  if (it == state.entries.end() || *it != id) return nullptr;
  return &payloads[static_cast<std::size_t>(it - state.entries.begin())];
}

std::vector<CacheContents> load_caches(const std::vector<CacheState>& caches, const SplitFiles& split,
                                       const FileLibrary& library) {
  std::vector<CacheContents> out;
  out.reserve(caches.size());
  for (const CacheState& state : caches) {
    CacheContents c{state, {}};
    c.payloads.reserve(state.entries.size());
    for (const SubfileId& id : state.entries) {
      auto bytes = split.payload(library, id);
      c.payloads.emplace_back(bytes.begin(), bytes.end());
    }
    out.push_back(std::move(c));
  }
  return out;
}

namespace {

void xor_into(std::vector<std::uint8_t>& acc, std::span<const std::uint8_t> bytes) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] ^= bytes[i];
}

std::vector<std::uint8_t> encode_at_server(const TransmissionSymbol& sym, const FileLibrary& library,
                                           const SplitFiles& split) {
  std::vector<std::uint8_t> acc(split.subfile_bytes, 0);
  for (const auto& c : sym.components) xor_into(acc, split.payload(library, c));
  return acc;
}

std::vector<std::uint8_t> encode_at_user(const TransmissionSymbol& sym, const CacheContents& cache,
                                         std::size_t subfile_bytes) {
  std::vector<std::uint8_t> acc(subfile_bytes, 0);
  for (const auto& c : sym.components) {
    const auto* bytes = cache.find(c);
    if (!bytes) throw DecodeError("user " + std::to_string(sym.sender) + " cannot encode " + c.to_string());
    xor_into(acc, *bytes);
  }
  return acc;
}

std::optional<SubfileId> intended_for(const TransmissionSymbol& sym, int user) {
  for (const auto& [r, id] : sym.recipients) {
    if (r == user) return id;
  }
  return std::nullopt;
}

}  // namespace

std::vector<ReceptionLog> execute_schedule(const Schedule& schedule, const FileLibrary& library,
                                           const SplitFiles& split, const std::vector<CacheContents>& caches) {
  std::vector<ReceptionLog> logs(schedule.users);
  for (int k = 1; k <= schedule.users; ++k) logs[k - 1].user = k;
  for (std::size_t i = 0; i < schedule.slots.size(); ++i) {
    const Slot& slot = schedule.slots[i];
    const auto slot_no = static_cast<std::int64_t>(i + 1);
    if (slot.server_symbol) {
      const auto& sym = *slot.server_symbol;
      auto payload = encode_at_server(sym, library, split);
      for (auto& log : logs) {
        log.entries.push_back({slot_no, kServer, payload, sym.components, intended_for(sym, log.user)});
      }
    }
    UserSet senders;
    for (const auto& sym : slot.user_symbols) senders = senders.with(sym.sender);
    for (const auto& sym : slot.user_symbols) {
      auto payload = encode_at_user(sym, caches.at(sym.sender - 1), split.subfile_bytes);
      for (const auto& [r, id] : sym.recipients) {
        if (senders.contains(r)) continue;  // half-duplex: a sender hears no other user
        logs[r - 1].entries.push_back({slot_no, sym.sender, payload, sym.components, id});
      }
    }
  }
  return logs;
}

std::vector<std::uint8_t> decode_user(int user, const ReceptionLog& log, const CacheContents& cache,
                                      const DemandVector& demands, const SubfileLayout& layout) {
  std::map<SubfileId, std::vector<std::uint8_t>> decoded;
  for (const Reception& rx : log.entries) {
    if (!rx.intended) continue;
    std::vector<std::uint8_t> value = rx.payload;
    bool cancelled = true;
    for (const auto& c : rx.components) {
      if (c == *rx.intended) continue;
      const auto* bytes = cache.find(c);
      if (!bytes) {
        cancelled = false;
        break;
      }
      xor_into(value, *bytes);
    }
    if (cancelled) decoded.emplace(*rx.intended, std::move(value));
  }

  std::vector<std::uint8_t> file;
  for (const SubfileId& id : layout.of_file(demands.of(user))) {
    if (const auto* bytes = cache.find(id)) {
      file.insert(file.end(), bytes->begin(), bytes->end());
    } else if (auto it = decoded.find(id); it != decoded.end()) {
      file.insert(file.end(), it->second.begin(), it->second.end());
    } else {
      throw DecodeError("user " + std::to_string(user) + " cannot recover " + id.to_string());
    }
  }
  return file;
}

bool SimulationResult::all_decoded() const {
  return std::all_of(decoded.begin(), decoded.end(), [](bool b) { return b; });
}

SimulationResult simulate(const Schedule& schedule, const FileLibrary& library, const SplitFiles& split,
                          const std::vector<CacheContents>& caches, unsigned threads) {
  SimulationResult result;
  result.user_slots = schedule.user_slot_count();
  result.server_symbols = schedule.server_symbol_count();
  result.total_slots = static_cast<std::int64_t>(schedule.slots.size());
  const auto logs = execute_schedule(schedule, library, split, caches);

  const int K = schedule.users;
  std::vector<std::string> errors(K);
  std::vector<char> ok(K, 0);
  auto work = [&](int k) {
    try {
      auto file = decode_user(k, logs[k - 1], caches[k - 1], schedule.demands, split.layout);
      auto expected = library.file(schedule.demands.of(k));
      ok[k - 1] = std::equal(file.begin(), file.end(), expected.begin(), expected.end());
      if (!ok[k - 1]) errors[k - 1] = "user " + std::to_string(k) + " decoded a file that differs from the library";
    } catch (const DecodeError& e) {
      errors[k - 1] = e.what();
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(K)));
  if (threads == 1) {
    for (int k = 1; k <= K; ++k) work(k);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        for (int k = static_cast<int>(w) + 1; k <= K; k += static_cast<int>(threads)) work(k);
      });
    }
    for (auto& th : pool) th.join();
  }
  for (int k = 0; k < K; ++k) {
    result.decoded.push_back(ok[k] != 0);
    if (!errors[k].empty()) result.failures.push_back(errors[k]);
  }
  return result;
}

}  // namespace coopcache
