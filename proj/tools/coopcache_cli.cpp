// coopcache: reports, schedules, simulations and sweeps for coded caching
// with user cooperation.
//
// Exit codes: 0 pass, 1 validation, 2 scheduler infeasibility, 3 decode failure.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "coopcache/analysis.hpp"
#include "coopcache/combinatorics.hpp"
#include "coopcache/delivery.hpp"
#include "coopcache/error.hpp"
#include "coopcache/placement.hpp"
#include "coopcache/schedule_io.hpp"
#include "coopcache/simulator.hpp"
#include "coopcache/sweep.hpp"

using namespace coopcache;

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitScheduler = 2;
constexpr int kExitDecode = 3;

struct ParamFlags {
  int files = 0;
  int users = 0;
  std::string cache = "0";
  int alpha_max = 1;
  std::optional<int> alpha;
  std::vector<std::int64_t> loads;

  void add_to(CLI::App* app, bool overrides) {
    app->add_option("--files,-N", files, "Number of files N")->required();
    app->add_option("--users,-K", users, "Number of users K")->required();
    app->add_option("--cache,-M", cache, "Cache size M in files, e.g. 4 or 7/2")->required();
    app->add_option("--alpha-max", alpha_max, "Maximum number of concurrent user senders")->required();
    if (overrides) {
      app->add_option("--alpha", alpha, "Use this many concurrent senders instead of the optimum");
      app->add_option("--loads", loads, "Explicit layer split L1,L2 instead of the balanced one")
          ->expected(2)
          ->delimiter(',');
    }
  }

  SystemParams params() const {
    SystemParams p{files, users, parse_cache(), alpha_max, std::nullopt};
    validate(p);
    return p;
  }

  bool overridden() const { return alpha.has_value() || !loads.empty(); }

  // Derived constants honouring --alpha / --loads.
  DerivedParams derived(const SystemParams& p) const {
    const int a = alpha ? *alpha : optimal_alpha(p);
    if (loads.empty()) return derive(p, a);
    return derive(p, a, Loads{loads[0], loads[1]});
  }

 private:
  Rational parse_cache() const {
    try {
      return parse_rational(cache);
    } catch (const std::invalid_argument&) {
      throw ValidationError(ValidationError::Code::CacheOutOfRange, "cannot parse cache size '" + cache + "'");
    }
  }
};

std::string show(const Rational& r) {
  if (is_integer(r)) return to_string(r);
  return to_string(r) + " (" + to_decimal(r) + ")";
}

std::string show(const std::optional<Rational>& r) { return r ? show(*r) : "undefined"; }

// Writes to --out when given, else stdout.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_.open(path, std::ios::binary);
    if (!file_) throw ValidationError(ValidationError::Code::LoadsInvalid, "cannot write " + path);
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

int cmd_report(const ParamFlags& flags) {
  const SystemParams p = flags.params();
  const DelayReport r = make_report(p);
  std::ostream& out = std::cout;
  out << "N = " << p.files << ", K = " << p.users << ", M = " << to_string(p.cache) << ", alpha_max = " << p.alpha_max
      << '\n';
  out << "t = KM/N = " << show(r.t) << '\n';
  if (!r.integral_t) {
    out << "t is not an integer: the scheme runs by memory sharing between neighbouring grid points\n";
  } else {
    out << "alpha* = " << r.alpha_star->alpha
        << (r.alpha_star->closed_form ? "" : " (closed form empty, exhaustive minimum)") << '\n';
    const bool coop = r.loads->user_layers > 0;
    out << "cooperation: " << (coop ? "enabled" : "disabled") << '\n';
    out << "loads (L1, L2) = (" << r.loads->user_layers << ", " << r.loads->server_layers << ")\n";
    out << "R1 = " << show(r.rates->server) << '\n';
    out << "R2 = " << show(r.rates->users) << '\n';
    out << "R_C = " << show(*r.rate_rc) << '\n';
    out << "G_c = " << show(r.gains->cooperation) << '\n';
    out << "G_p = " << show(r.gains->parallel) << '\n';
    out << "R_MN = " << show(*r.baseline_mn) << '\n';
  }
  if (r.integral_t && flags.overridden()) {
    const DerivedParams d = flags.derived(p);
    const Rates rates = rates_r1_r2(p, d.alpha, d.loads);
    out << "override: alpha = " << d.alpha << ", loads (L1, L2) = (" << d.loads.user_layers << ", "
        << d.loads.server_layers << ")" << (loads_balanced(d) ? "" : " (unbalanced)") << '\n';
    out << "override R1 = " << show(rates.server) << '\n';
    out << "override R2 = " << show(rates.users) << '\n';
    out << "override R = max(R1, R2) = " << show(rates.delay()) << '\n';
  }
  out << "R_D2D = " << show(r.baseline_d2d) << '\n';
  out << "envelope = " << show(r.envelope) << '\n';
  out << "lower bound = " << show(r.lower_bound) << '\n';
  out << "gap ratio = " << show(r.gap_ratio) << '\n';
  return 0;
}

struct SimulateFlags {
  std::uint64_t seed = 1;
  int seeds = 1;
  std::uint64_t file_bits = 8192;
  bool strict_file_bits = false;
  std::string schedule_out;
};

int cmd_simulate(const ParamFlags& flags, const SimulateFlags& sim) {
  const SystemParams p = flags.params();
  const DerivedParams d = flags.derived(p);
  if (sim.seeds < 1) throw ValidationError(ValidationError::Code::LoadsInvalid, "--seeds must be positive");
  const std::uint64_t bits = sim.strict_file_bits ? sim.file_bits : default_file_bits(d, sim.file_bits);
  // Cheap divisibility check before any payload is allocated.
  const std::uint64_t unit = 8ull * static_cast<std::uint64_t>(SubfileLayout(d).per_file());
  if (bits == 0 || bits % unit != 0) {
    throw ValidationError(ValidationError::Code::FileSizeNotDivisible,
                          "file size F=" + std::to_string(bits) + " bits is not a multiple of 8*L*C(K,t)=" +
                              std::to_string(unit));
  }
  const std::int64_t per_file = d.layers() * binomial(d.users, d.replication);
  std::cout << "N = " << p.files << ", K = " << p.users << ", M = " << to_string(p.cache) << ", t = " << d.replication
            << ", alpha = " << d.alpha << ", loads (L1, L2) = (" << d.loads.user_layers << ", "
            << d.loads.server_layers << "), F = " << bits << " bits, " << per_file << " subfiles per file\n";

  int exit_code = 0;
  int decoded_runs = 0;
  for (int i = 0; i < sim.seeds; ++i) {
    const std::uint64_t seed = sim.seed + static_cast<std::uint64_t>(i);
    FileLibrary library(p.files, bits, seed);
    SplitFiles split = split_files(library, d);
    auto states = fill_caches(split, d);
    DemandVector demands = worst_case_demands(p, seed);
    BuiltSchedule built = build_schedule(demands, d);
    ValidationReport report = validate_schedule(built.schedule, states, demands, d);
    if (i == 0 && !sim.schedule_out.empty()) {
      Output out(sim.schedule_out);
      write_schedule(out.stream(), built.schedule);
    }
    SimulationResult result = simulate(built.schedule, library, split, load_caches(states, split, library));
    const Rational delay(std::max(result.user_slots, result.server_symbols), per_file);
    std::cout << "seed " << seed << ": demands";
    for (int f : demands.files) std::cout << ' ' << f;
    std::cout << "; " << result.user_slots << " user slots, " << result.server_symbols << " server symbols"
              << (built.meets_target ? "" : " (cooperation target missed)") << "; delay " << show(delay) << "; "
              << std::count(result.decoded.begin(), result.decoded.end(), true) << "/" << p.users << " decoded\n";
    if (sim.seeds == 1) {
      for (int k = 1; k <= p.users; ++k) {
        std::cout << "  user " << k << " (file " << demands.of(k) << "): " << (result.decoded[k - 1] ? "ok" : "FAIL")
                  << '\n';
      }
    }
    for (const auto& v : report.violations) {
      std::cout << "  violation [" << constraint_name(v.constraint) << "] slot " << v.slot << ": " << v.detail << '\n';
    }
    for (const auto& f : result.failures) std::cout << "  decode failure: " << f << '\n';
    if (!report.ok() && exit_code == 0) exit_code = kExitScheduler;
    if (!result.all_decoded()) exit_code = kExitDecode;
    decoded_runs += result.all_decoded();
  }
  std::cout << "rate: R1 = " << show(rates_r1_r2(p, d.alpha, d.loads).server)
            << ", R2 = " << show(rates_r1_r2(p, d.alpha, d.loads).users) << '\n';
  std::cout << decoded_runs << "/" << sim.seeds << " runs decoded by every user\n";
  std::cout << (exit_code == 0 ? "PASS" : "FAIL") << '\n';
  return exit_code;
}

int cmd_schedule_export(const ParamFlags& flags, std::uint64_t seed, const std::string& out_path) {
  const SystemParams p = flags.params();
  const DerivedParams d = flags.derived(p);
  BuiltSchedule built = build_schedule(worst_case_demands(p, seed), d);
  Output out(out_path);
  write_schedule(out.stream(), built.schedule);
  if (!built.meets_target) std::cerr << "warning: cooperation slot target not met\n";
  return 0;
}

// Checks a schedule file against the parameters recorded in its header.
int check_schedule_file(const std::string& path) {
  Schedule s;
  try {
    s = read_schedule_file(path);
  } catch (const FormatError& e) {
    std::cout << "schedule " << path << ": format error: " << e.what() << '\n';
    return kExitValidation;
  }
  if (s.users < 2 || s.replication < 0 || s.replication > s.users) {
    std::cout << "schedule " << path << ": header out of range\n";
    return kExitValidation;
  }
  const SystemParams p{s.files, s.users, Rational(static_cast<std::int64_t>(s.replication) * s.files, s.users),
                       std::max(1, s.alpha), std::nullopt};
  const DerivedParams d = derive(p, s.alpha, s.loads);
  FileLibrary library(s.files, default_file_bits(d, 1), 1);
  SplitFiles split = split_files(library, d);
  const auto states = fill_caches(split, d);
  ValidationReport r = validate_schedule(s, states, s.demands, d);
  for (const auto& v : r.violations) {
    std::cout << "violation [" << constraint_name(v.constraint) << "] slot " << v.slot << ": " << v.detail << '\n';
  }
  std::cout << "schedule " << path << ": " << r.user_slots << " user slots, " << r.server_symbols
            << " server symbols, " << r.violations.size() << " violations\n";
  if (!r.ok()) return kExitValidation;
  SimulationResult sim = simulate(s, library, split, load_caches(states, split, library));
  for (const auto& f : sim.failures) std::cout << "decode failure: " << f << '\n';
  return sim.all_decoded() ? 0 : kExitDecode;
}

int cmd_sweep(const SweepConfig& config, const std::string& out_path) {
  validate({config.files, config.users, Rational(0), config.alpha_max, std::nullopt});
  if (config.samples_between < 0) {
    throw ValidationError(ValidationError::Code::CacheOutOfRange, "--samples must be non-negative");
  }
  auto rows = sweep(config, configured_threads());
  Output out(out_path);
  write_csv(out.stream(), rows);
  return 0;
}

struct VerifyFlags {
  GapGrid grid;
  std::vector<std::string> schedules;
};

int cmd_verify(const VerifyFlags& flags) {
  const GapGrid& g = flags.grid;
  if (g.files_min < 2 || g.files_max < g.files_min || g.users_min < 2 || g.users_max < g.users_min ||
      g.users_max > 31) {
    throw ValidationError(ValidationError::Code::TooFewUsers, "invalid grid bounds");
  }
  int failures = 0;
  auto fail = [&](const std::string& what) {
    if (++failures <= 20) std::cout << "violation: " << what << '\n';
  };

  const GapReport gap = verify_gap(g, configured_threads());
  for (const auto& v : gap.violations) {
    fail("gap " + to_string(v.ratio) + " > " + std::to_string(kGapConstant) + " at N=" + std::to_string(v.params.files) +
         " K=" + std::to_string(v.params.users) + " alpha_max=" + std::to_string(v.params.alpha_max) +
         " M=" + to_string(v.params.cache));
  }
  std::cout << "gap: " << gap.points << " points";
  if (gap.worst) {
    std::cout << ", max ratio " << show(gap.worst->ratio) << " at N=" << gap.worst->params.files
              << " K=" << gap.worst->params.users << " alpha_max=" << gap.worst->params.alpha_max
              << " M=" << to_string(gap.worst->params.cache);
  }
  std::cout << '\n';

  std::int64_t checked = 0;
  for (int n = g.files_min; n <= g.files_max; ++n) {
    for (int k = g.users_min; k <= std::min(n, g.users_max); ++k) {
      for (int amax = 1; amax <= k / 2; ++amax) {
        const Envelope env(n, k, amax);
        for (int t = 0; t <= k; ++t) {
          const SystemParams p{n, k, Rational(static_cast<std::int64_t>(t) * n, k), amax, std::nullopt};
          const std::string at = "N=" + std::to_string(n) + " K=" + std::to_string(k) +
                                 " alpha_max=" + std::to_string(amax) + " t=" + std::to_string(t);
          const Rational rc = rate_rc(p);
          const Rational e = env.at(p.cache);
          if (delay_at_alpha(p, optimal_alpha(p)) != rc) fail("alpha* is not a minimiser at " + at);
          if (lower_bound(p) > e) fail("lower bound above envelope at " + at);
          if (e > rc || e > baseline_mn(p)) fail("envelope above R_C or R_MN at " + at);
          if (t >= 1 && e > *baseline_d2d(p)) fail("envelope above R_D2D at " + at);
          const Gains gn = gains(p);
          if (rc != baseline_mn(p) * gn.cooperation) fail("R_C != R_MN * G_c at " + at);
          if (t >= 1 && rc != *baseline_d2d(p) * *gn.parallel) fail("R_C != R_D2D * G_p at " + at);
          const int a = optimal_alpha(p);
          const Loads l = allocate_loads(p, a);
          const Rates r = rates_r1_r2(p, a, l);
          if (r.delay() != rc || (l.user_layers > 0 && r.server != r.users)) fail("R1 != R2 at " + at);
          ++checked;
        }
      }
    }
  }
  std::cout << "invariants: " << checked << " integral points checked\n";

  int schedule_status = 0;
  for (const auto& path : flags.schedules) schedule_status = std::max(schedule_status, check_schedule_file(path));
  if (failures > 20) std::cout << "... " << failures - 20 << " more violations\n";
  const bool ok = failures == 0 && schedule_status == 0;
  std::cout << (ok ? "PASS" : "FAIL") << '\n';
  if (schedule_status != 0) return schedule_status;
  return ok ? 0 : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coded caching with user cooperation: delay analysis, schedules and simulation"};
  app.require_subcommand(1);

  ParamFlags report_flags;
  auto* report = app.add_subcommand("report", "Print t, alpha*, loads, rates, gains, bounds and baselines");
  report_flags.add_to(report, true);

  ParamFlags sim_flags;
  SimulateFlags sim;
  auto* simulate_cmd = app.add_subcommand("simulate", "Place, schedule, transmit and decode end to end");
  sim_flags.add_to(simulate_cmd, true);
  simulate_cmd->add_option("--seed", sim.seed, "Seed for file contents and demands");
  simulate_cmd->add_option("--seeds", sim.seeds, "Number of consecutive seeds to run");
  simulate_cmd->add_option("--file-bits", sim.file_bits, "Target file size F in bits (rounded up to a valid size)");
  simulate_cmd->add_flag("--strict-file-bits", sim.strict_file_bits, "Use --file-bits as F exactly");
  simulate_cmd->add_option("--out", sim.schedule_out, "Write the first seed's schedule here");

  auto* schedule = app.add_subcommand("schedule", "Export or validate delivery schedules");
  schedule->require_subcommand(1);
  ParamFlags export_flags;
  std::uint64_t export_seed = 1;
  std::string export_out;
  auto* export_cmd = schedule->add_subcommand("export", "Build a schedule and write it in text form");
  export_flags.add_to(export_cmd, true);
  export_cmd->add_option("--seed", export_seed, "Seed for the demand vector");
  export_cmd->add_option("--out", export_out, "Output path (default stdout)");
  std::string validate_in;
  auto* validate_cmd = schedule->add_subcommand("validate", "Check a schedule file and decode it");
  validate_cmd->add_option("schedule", validate_in, "Schedule file")->required();

  SweepConfig sweep_config;
  std::string sweep_out;
  auto* sweep_cmd = app.add_subcommand("sweep", "Write the delay curves over the cache grid as CSV");
  sweep_cmd->add_option("--files,-N", sweep_config.files, "Number of files N")->required();
  sweep_cmd->add_option("--users,-K", sweep_config.users, "Number of users K")->required();
  sweep_cmd->add_option("--alpha-max", sweep_config.alpha_max, "Maximum number of concurrent user senders")->required();
  sweep_cmd->add_option("--grid-samples", sweep_config.samples_between, "Envelope samples between grid points");
  sweep_cmd->add_option("--out", sweep_out, "CSV output path (default stdout)");

  VerifyFlags verify_flags;
  auto* verify = app.add_subcommand("verify", "Check the constant gap and scheme invariants over a grid");
  verify->add_option("--grid-files-min", verify_flags.grid.files_min, "Smallest N");
  verify->add_option("--grid-files-max", verify_flags.grid.files_max, "Largest N");
  verify->add_option("--grid-users-min", verify_flags.grid.users_min, "Smallest K");
  verify->add_option("--grid-users-max", verify_flags.grid.users_max, "Largest K");
  verify->add_option("--schedule", verify_flags.schedules, "Also validate these schedule files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitValidation;
  }

  try {
    if (*report) return cmd_report(report_flags);
    if (*simulate_cmd) return cmd_simulate(sim_flags, sim);
    if (*export_cmd) return cmd_schedule_export(export_flags, export_seed, export_out);
    if (*validate_cmd) return check_schedule_file(validate_in);
    if (*sweep_cmd) return cmd_sweep(sweep_config, sweep_out);
    if (*verify) return cmd_verify(verify_flags);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const SchedulerError& e) {
    std::cerr << "scheduler error: " << e.what() << '\n';
    return kExitScheduler;
  } catch (const DecodeError& e) {
    std::cerr << "decode error: " << e.what() << '\n';
    return kExitDecode;
  }
  return 0;
}
