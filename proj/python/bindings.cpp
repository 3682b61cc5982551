#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "coopcache/analysis.hpp"
#include "coopcache/combinatorics.hpp"
#include "coopcache/delivery.hpp"
#include "coopcache/error.hpp"
#include "coopcache/placement.hpp"
#include "coopcache/schedule_io.hpp"
#include "coopcache/simulator.hpp"
#include "coopcache/sweep.hpp"

namespace py = pybind11;
using namespace coopcache;

namespace {

// Rationals cross the boundary as (numerator, denominator); the Python
// package turns them into fractions.Fraction.
using Pair = std::pair<std::int64_t, std::int64_t>;

Pair pair(const Rational& r) { return {r.numerator(), r.denominator()}; }

std::optional<Pair> pair(const std::optional<Rational>& r) {
  if (!r) return std::nullopt;
  return pair(*r);
}

SystemParams make(int files, int users, const std::string& cache, int alpha_max) {
  SystemParams p{files, users, parse_rational(cache), alpha_max, std::nullopt};
  validate(p);
  return p;
}

py::dict report(int files, int users, const std::string& cache, int alpha_max) {
  const DelayReport r = make_report(make(files, users, cache, alpha_max));
  py::dict d;
  d["t"] = pair(r.t);
  d["integral_t"] = r.integral_t;
  if (r.integral_t) {
    d["alpha_star"] = r.alpha_star->alpha;
    d["alpha_closed_form"] = r.alpha_star->closed_form;
    d["loads"] = std::make_pair(r.loads->user_layers, r.loads->server_layers);
    d["R1"] = pair(r.rates->server);
    d["R2"] = pair(r.rates->users);
    d["R_C"] = pair(*r.rate_rc);
    d["G_c"] = pair(r.gains->cooperation);
    d["G_p"] = pair(r.gains->parallel);
    d["R_MN"] = pair(*r.baseline_mn);
  }
  d["R_D2D"] = pair(r.baseline_d2d);
  d["envelope"] = pair(r.envelope);
  d["lower_bound"] = pair(r.lower_bound);
  d["gap_ratio"] = pair(r.gap_ratio);
  return d;
}

DerivedParams derived_for(const SystemParams& p, std::optional<int> alpha, std::optional<Pair> loads) {
  const int a = alpha ? *alpha : optimal_alpha(p);
  if (!loads) return derive(p, a);
  return derive(p, a, Loads{loads->first, loads->second});
}

py::dict simulate_once(int files, int users, const std::string& cache, int alpha_max, std::uint64_t seed,
                       std::uint64_t file_bits, std::optional<int> alpha, std::optional<Pair> loads) {
  const SystemParams p = make(files, users, cache, alpha_max);
  const DerivedParams d = derived_for(p, alpha, loads);
  FileLibrary library(files, default_file_bits(d, file_bits), seed);
  SplitFiles split = split_files(library, d);
  auto states = fill_caches(split, d);
  DemandVector demands = worst_case_demands(p, seed);
  BuiltSchedule built = build_schedule(demands, d);
  ValidationReport report = validate_schedule(built.schedule, states, demands, d);
  SimulationResult sim = simulate(built.schedule, library, split, load_caches(states, split, library));
  py::dict out;
  out["demands"] = demands.files;
  out["user_slots"] = sim.user_slots;
  out["server_symbols"] = sim.server_symbols;
  out["subfiles_per_file"] = split.layout.per_file();
  out["decoded"] = sim.decoded;
  out["violations"] = report.violations.size();
  out["meets_target"] = built.meets_target;
  out["schedule"] = export_schedule(built.schedule);
  return out;
}

std::vector<std::string> check_schedule(const std::string& text) {
  const Schedule s = import_schedule(text);
  const SystemParams p{s.files, s.users, Rational(static_cast<std::int64_t>(s.replication) * s.files, s.users),
                       std::max(1, s.alpha), std::nullopt};
  const DerivedParams d = derive(p, s.alpha, s.loads);
  FileLibrary library(s.files, default_file_bits(d, 1), 1);
  const auto states = fill_caches(split_files(library, d), d);
  std::vector<std::string> ids;
  for (const auto& v : validate_schedule(s, states, s.demands, d).violations) ids.push_back(constraint_name(v.constraint));
  return ids;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Coded caching with user cooperation (C++ core)";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<SchedulerError>(m, "SchedulerError", PyExc_RuntimeError);
  py::register_exception<DecodeError>(m, "DecodeError", PyExc_RuntimeError);
  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);

  m.def("report", &report, py::arg("files"), py::arg("users"), py::arg("cache"), py::arg("alpha_max"));
  m.def(
      "rate_rc",
      [](int n, int k, const std::string& c, int a) { return pair(rate_rc(make(n, k, c, a))); },
      py::arg("files"), py::arg("users"), py::arg("cache"), py::arg("alpha_max"));
  m.def(
      "lower_bound",
      [](int n, int k, const std::string& c, int a) { return pair(lower_bound(make(n, k, c, a))); },
      py::arg("files"), py::arg("users"), py::arg("cache"), py::arg("alpha_max"));
  m.def(
      "optimal_alpha", [](int n, int k, const std::string& c, int a) { return optimal_alpha(make(n, k, c, a)); },
      py::arg("files"), py::arg("users"), py::arg("cache"), py::arg("alpha_max"));
  m.def(
      "allocate_loads",
      [](int n, int k, const std::string& c, int a, int alpha) {
        Loads l = allocate_loads(make(n, k, c, a), alpha);
        return std::make_pair(l.user_layers, l.server_layers);
      },
      py::arg("files"), py::arg("users"), py::arg("cache"), py::arg("alpha_max"), py::arg("alpha"));
  m.def(
      "rates",
      [](int n, int k, const std::string& c, int a, int alpha, Pair loads) {
        Rates r = rates_r1_r2(make(n, k, c, a), alpha, Loads{loads.first, loads.second});
        return std::make_pair(pair(r.server), pair(r.users));
      },
      py::arg("files"), py::arg("users"), py::arg("cache"), py::arg("alpha_max"), py::arg("alpha"), py::arg("loads"));
  m.def("simulate", &simulate_once, py::arg("files"), py::arg("users"), py::arg("cache"), py::arg("alpha_max"),
        py::arg("seed") = 1, py::arg("file_bits") = 8192, py::arg("alpha") = py::none(), py::arg("loads") = py::none());
  m.def("check_schedule", &check_schedule, py::arg("text"),
        "Constraint ids violated by a schedule in text form (empty when valid).");
  m.def(
      "sweep_csv",
      [](int n, int k, int a, int samples) {
        std::ostringstream out;
        write_csv(out, sweep({n, k, a, samples}, 1));
        return out.str();
      },
      py::arg("files"), py::arg("users"), py::arg("alpha_max"), py::arg("samples_between") = 0);
  m.def(
      "verify_gap",
      [](int files_min, int files_max, int users_min, int users_max) {
        GapReport g = verify_gap({files_min, files_max, users_min, users_max, false}, 1);
        py::dict d;
        d["points"] = g.points;
        d["violations"] = g.violations.size();
        d["max_ratio"] = g.worst ? py::cast(pair(g.worst->ratio)) : py::none();
        return d;
      },
      py::arg("files_min") = 4, py::arg("files_max") = 40, py::arg("users_min") = 2, py::arg("users_max") = 12);
}
