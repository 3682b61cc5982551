// Prints one PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "coopcache/analysis.hpp"
#include "coopcache/combinatorics.hpp"
#include "coopcache/delivery.hpp"
#include "coopcache/placement.hpp"
#include "coopcache/simulator.hpp"
#include "reference_schedule.hpp"

using namespace coopcache;
namespace fx = coopcache::fixtures;

namespace {

SystemParams P(int n, int k, Rational m, int amax) { return SystemParams{n, k, m, amax, std::nullopt}; }

// Collects failed checks for one criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok && first_.empty()) first_ = what;
    failed_ |= !ok;
  }
  bool failed() const { return failed_; }
  const std::string& first() const { return first_; }
  std::ostringstream info;

 private:
  bool failed_ = false;
  std::string first_;
};

struct Run {
  SimulationResult result;
  ValidationReport report;
  bool meets_target = false;
};

Run run_instance(const SystemParams& p, const DerivedParams& d, std::uint64_t seed, std::uint64_t target_bits) {
  FileLibrary library(d.files, default_file_bits(d, target_bits), seed);
  SplitFiles split = split_files(library, d);
  auto states = fill_caches(split, d);
  auto caches = load_caches(states, split, library);
  DemandVector demands = worst_case_demands(p, seed);
  BuiltSchedule built = build_schedule(demands, d);
  Run run;
  run.meets_target = built.meets_target;
  run.report = validate_schedule(built.schedule, states, demands, d);
  run.result = simulate(built.schedule, library, split, caches);
  return run;
}

// Normalized delay: every slot carries one subfile of F / (L * C(K,t)) bits.
Rational normalized_delay(const SimulationResult& r, const DerivedParams& d) {
  const std::int64_t per_file = d.layers() * binomial(d.users, d.replication);
  return Rational(std::max(r.user_slots, r.server_symbols), per_file);
}

void criterion1(Check& c) {
  const SystemParams p = fx::example_params();
  const DerivedParams d = fx::example_derived();
  const Rates rates = rates_r1_r2(p, d.alpha, d.loads);
  c.expect(integral_t(p) == 4, "t");
  c.expect(d.loads == Loads{2, 1}, "loads");
  c.expect(SubfileLayout(d).per_file() == 45, "subfiles per file");
  c.expect(rates.users == Rational(1, 3), "R2");
  c.expect(rates.server == Rational(2, 15), "R1");
  c.expect(rates.delay() == Rational(1, 3), "R");
  Run run = run_instance(p, d, 1, 1 << 12);
  c.expect(run.report.ok() && run.report.counts_match(), "schedule validates");
  c.expect(run.result.user_slots == 15, "15 user slots");
  c.expect(run.result.server_symbols == 6, "6 server symbols");
  c.expect(normalized_delay(run.result, d) == Rational(1, 3), "simulated delay");
  c.expect(run.result.all_decoded(), "decode");
  const int decoded = static_cast<int>(std::count(run.result.decoded.begin(), run.result.decoded.end(), true));
  const Loads balanced = allocate_loads(p, 2);
  c.info << "t=4 L=(2,1) 45 subfiles/file, " << run.result.user_slots << " user slots, "
         << run.result.server_symbols << " server symbols, R2=" << to_string(rates.users)
         << " R1=" << to_string(rates.server) << " R=" << to_string(rates.delay()) << ", " << decoded
         << "/6 decoded; balanced loads (" << balanced.user_layers << "," << balanced.server_layers
         << ") give R_C=" << to_string(rate_rc(p));
}

void criterion2(Check& c) {
  const DerivedParams d = fx::example_derived();
  const DemandVector demands = fx::example_demands();
  FileLibrary library(6, default_file_bits(d, 1 << 12), 2);
  SplitFiles split = split_files(library, d);
  auto states = fill_caches(split, d);
  const Schedule table = fx::reference_schedule();
  ValidationReport r = validate_schedule(table, states, demands, d);
  c.expect(r.ok() && r.counts_match(), r.ok() ? "table counts" : constraint_name(r.violations.front().constraint));
  SimulationResult sim = simulate(table, library, split, load_caches(states, split, library));
  c.expect(sim.all_decoded(), "table decode");
  BuiltSchedule built = build_schedule(demands, d);
  ValidationReport own = validate_schedule(built.schedule, states, demands, d);
  c.expect(own.ok() && built.meets_target && own.user_slots == 15, "scheduler 15 slots");
  c.info << "table: " << r.violations.size() << " violations, " << r.user_slots << " user slots; scheduler: "
         << own.violations.size() << " violations, " << own.user_slots << " user slots";
}

void criterion3(Check& c) {
  c.expect(optimal_alpha(P(100, 10, 40, 5)) == 2, "N=100 K=10 M=40");
  c.expect(optimal_alpha(P(10, 10, 9, 5)) == 1 && optimal_alpha(P(12, 12, 12, 6)) == 1, "t >= K-1");
  c.expect(optimal_alpha(P(20, 10, 2, 5)) == 5 && optimal_alpha(P(30, 12, 5, 4)) == 4, "t <= K/alpha_max - 1");
  std::int64_t points = 0, closed = 0, fallback = 0;
  for (int n = 4; n <= 40; ++n) {
    for (int k = 2; k <= std::min(n, 12); ++k) {
      for (int amax = 1; amax <= k / 2; ++amax) {
        for (int t = 0; t <= k; ++t) {
          SystemParams p = P(n, k, Rational(static_cast<std::int64_t>(t) * n, k), amax);
          AlphaChoice a = choose_alpha(p);
          ++points;
          ++(a.closed_form ? closed : fallback);
          c.expect(delay_at_alpha(p, a.alpha) == delay_at_alpha(p, argmin_alpha(p)), "closed form vs argmin");
        }
      }
    }
  }
  c.info << points << " grid points: " << closed << " closed form matches argmin, " << fallback
         << " via fallback";
}

void criterion4(Check& c) {
  GapReport g = verify_gap(GapGrid{}, 4);
  c.expect(g.ok(), "ratio above 31");
  c.info << g.points << " points, " << g.violations.size() << " violations";
  if (g.worst) {
    c.info << ", max ratio " << to_string(g.worst->ratio) << " (" << to_decimal(g.worst->ratio) << ") at N="
           << g.worst->params.files << " K=" << g.worst->params.users << " alpha_max=" << g.worst->params.alpha_max
           << " M=" << to_string(g.worst->params.cache);
  }
}

void criterion5(Check& c) {
  Envelope env(20, 10, 5);
  for (int i = 0; i <= 10; ++i) {
    SystemParams p = P(20, 10, Rational(2 * i), 5);
    Rational e = env.at(p.cache);
    c.expect(lower_bound(p) <= e, "lower bound <= envelope");
    c.expect(e <= baseline_mn(p), "envelope <= MN");
    if (i > 0) c.expect(e <= *baseline_d2d(p), "envelope <= D2D");
  }
  c.info << "11 points of N=20 K=10 alpha_max=5";
}

void criterion6(Check& c) {
  std::int64_t points = 0;
  for (int n = 4; n <= 40; ++n) {
    for (int k = 2; k <= std::min(n, 12); ++k) {
      for (int amax = 1; amax <= k / 2; ++amax) {
        for (int t = 1; t <= k; ++t) {
          SystemParams p = P(n, k, Rational(static_cast<std::int64_t>(t) * n, k), amax);
          const Rational rc = rate_rc(p);
          const Gains g = gains(p);
          c.expect(rc == baseline_mn(p) * g.cooperation, "R_C = R_MN G_c");
          c.expect(g.parallel && rc == *baseline_d2d(p) * *g.parallel, "R_C = R_D2D G_p");
          const int a = optimal_alpha(p);
          const Loads l = allocate_loads(p, a);
          const Rates r = rates_r1_r2(p, a, l);
          c.expect(l.user_layers == 0 || r.server == r.users, "R1 = R2");
          c.expect(r.delay() == rc, "max(R1,R2) = R_C");
          ++points;
        }
      }
    }
  }
  c.info << points << " integral points with t >= 1";
}

void criterion7(Check& c) {
  int prev_alpha = 6;
  Rational prev_gp(0);
  std::ostringstream alphas;
  for (int i = 0; i <= 10; ++i) {
    SystemParams p = P(20, 10, Rational(2 * i), 5);
    const int a = optimal_alpha(p);
    c.expect(a <= prev_alpha, "alpha* non-increasing");
    prev_alpha = a;
    alphas << (i ? "," : "") << a;
    if (i > 0) {
      const Rational gp = *gains(p).parallel;
      c.expect(gp > prev_gp, "G_p strictly increasing");
      prev_gp = gp;
    }
  }
  c.info << "alpha* over M=0..20: " << alphas.str();
}

void criterion8(Check& c) {
  int configs = 0, runs = 0, failures = 0;
  for (int k = 2; k <= 6; ++k) {
    for (int alpha = 1; alpha <= k / 2; ++alpha) {
      for (int t = 0; t <= k; ++t) {
        const SystemParams p = P(k, k, Rational(t), alpha);
        const DerivedParams d = derive(p, alpha);
        ++configs;
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
          Run run = run_instance(p, d, seed * 7919 + static_cast<std::uint64_t>(k * 100 + alpha * 10 + t), 64);
          ++runs;
          const Rational delay = normalized_delay(run.result, d);
          bool ok = run.report.ok() && run.meets_target && run.result.all_decoded() &&
                    delay == delay_at_alpha(p, alpha) && (alpha != optimal_alpha(p) || delay == rate_rc(p));
          failures += !ok;
          c.expect(ok, "K=" + std::to_string(k) + " t=" + std::to_string(t) + " alpha=" + std::to_string(alpha) +
                           " seed=" + std::to_string(seed));
        }
      }
    }
  }
  c.info << configs << " (K,t,alpha) configs x 50 seeds = " << runs << " runs, " << failures << " failures";
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<void(Check&)> body;
  };
  const Criterion criteria[] = {
      {1, "example network golden values", criterion1},
      {2, "transcribed reference schedule", criterion2},
      {3, "optimal alpha", criterion3},
      {4, "constant gap on default grid", criterion4},
      {5, "bound sandwich, N=20 K=10 alpha_max=5", criterion5},
      {6, "gain identities", criterion6},
      {7, "monotonicity", criterion7},
      {8, "end-to-end K<=6 property suite", criterion8},
  };
  int failed = 0;
  for (const Criterion& cr : criteria) {
    Check check;
    const auto start = std::chrono::steady_clock::now();
    try {
      cr.body(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += check.failed();
    std::printf("criterion %d: %s - %s [%.2fs] %s%s\n", cr.id, check.failed() ? "FAIL" : "PASS", cr.name, secs,
                check.info.str().c_str(), check.failed() ? (" first failure: " + check.first()).c_str() : "");
  }
  return failed == 0 ? 0 : 1;
}
