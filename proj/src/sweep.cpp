#include "coopcache/sweep.hpp"

#include <cstdlib>
#include <ostream>
#include <string>
#include <thread>

namespace coopcache {

std::vector<SweepRow> sweep(const SweepConfig& config, unsigned threads) {
  // Validate once up front so worker threads never throw.
  make_report({config.files, config.users, Rational(0), config.alpha_max, std::nullopt});
  std::vector<Rational> caches;
  const int K = config.users;
  for (int i = 0; i <= K; ++i) {
    const Rational grid_point(static_cast<std::int64_t>(i) * config.files, K);
    caches.push_back(grid_point);
    if (i == K) break;
    const Rational step(config.files, static_cast<std::int64_t>(K) * (config.samples_between + 1));
    for (int j = 1; j <= config.samples_between; ++j) caches.push_back(grid_point + step * Rational(j));
  }

  std::vector<SweepRow> rows(caches.size());
  auto work = [&](std::size_t i) {
    SystemParams p{config.files, config.users, caches[i], config.alpha_max, std::nullopt};
    rows[i] = SweepRow{caches[i], make_report(p)};
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(rows.size())));
  if (threads == 1) {
    for (std::size_t i = 0; i < rows.size(); ++i) work(i);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < rows.size(); i += threads) work(i);
      });
    }
    for (auto& th : pool) th.join();
  }
  return rows;
}

namespace {

constexpr const char* kColumns[] = {"M",           "t",    "alpha_star", "L1",   "L2",
                                    "R1",          "R2",   "R_C",        "envelope", "lower_bound",
                                    "R_MN",        "R_D2D", "G_c",       "G_p",  "gap_ratio"};
// Columns holding rationals, in output order; each gets an _exact twin.
constexpr const char* kExactColumns[] = {"M",    "t",     "R1",  "R2",  "R_C",      "envelope", "lower_bound",
                                         "R_MN", "R_D2D", "G_c", "G_p", "gap_ratio"};

std::string dec(const std::optional<Rational>& v) { return v ? to_decimal(*v) : std::string(); }
std::string exact(const std::optional<Rational>& v) { return v ? to_string(*v) : std::string(); }

}  // namespace

std::string csv_header() {
  std::string out;
  for (const char* c : kColumns) {
    if (!out.empty()) out += ',';
    out += c;
  }
  for (const char* c : kExactColumns) {
    out += ',';
    out += c;
    out += "_exact";
  }
  return out;
}

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << csv_header() << '\n';
  for (const SweepRow& row : rows) {
    const DelayReport& r = row.report;
    std::optional<Rational> r1, r2, gc, gp;
    if (r.rates) {
      r1 = r.rates->server;
      r2 = r.rates->users;
    }
    if (r.gains) {
      gc = r.gains->cooperation;
      gp = r.gains->parallel;
    }
    const std::optional<Rational> rationals[] = {row.cache,     r.t,           r1,  r2, r.rate_rc,
                                                 r.envelope,    r.lower_bound, r.baseline_mn,
                                                 r.baseline_d2d, gc,           gp,  r.gap_ratio};
    out << dec(row.cache) << ',' << dec(r.t) << ',';
    out << (r.alpha_star ? std::to_string(r.alpha_star->alpha) : "") << ',';
    out << (r.loads ? std::to_string(r.loads->user_layers) : "") << ',';
    out << (r.loads ? std::to_string(r.loads->server_layers) : "") << ',';
    out << dec(r1) << ',' << dec(r2) << ',' << dec(r.rate_rc) << ',' << dec(r.envelope) << ','
        << dec(r.lower_bound) << ',' << dec(r.baseline_mn) << ',' << dec(r.baseline_d2d) << ',' << dec(gc) << ','
        << dec(gp) << ',' << dec(r.gap_ratio);
    for (const auto& v : rationals) out << ',' << exact(v);
    out << '\n';
  }
}

unsigned configured_threads() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("COOPCACHE_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<unsigned>(std::min<long>(v, hw));
  }
  return hw;
}

}  // namespace coopcache
