#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coopcache/params.hpp"
#include "coopcache/rational.hpp"

namespace coopcache {

// Achievable worst-case delay at integral t: delay_at_alpha minimised over
// alpha in [1, alpha_max].
Rational rate_rc(const SystemParams& params);

// Server rate R1 and per-user rate R2 for explicit loads.
struct Rates {
  Rational server;  // R1
  Rational users;   // R2
  Rational delay() const { return server > users ? server : users; }
};

// R2 = (L1/L) K(1-M/N) / (alpha*g), R1 = (L2/L) K(1-M/N) / (1+t).
// Throws ValidationError(LoadsInvalid) when g == 0 and L1 > 0.
Rates rates_r1_r2(const SystemParams& params, int alpha, Loads loads);

struct Gains {
  Rational cooperation;               // G_c
  std::optional<Rational> parallel;   // G_p, undefined at t = 0
};

Gains gains(const SystemParams& params);

// Server-only coded caching: K(1-M/N)/(1+t).
Rational baseline_mn(const SystemParams& params);
// Server-less D2D coded caching: (N/M)(1-M/N). Undefined at M = 0.
std::optional<Rational> baseline_d2d(const SystemParams& params);

// Cut-set style lower bound on the optimal delay, any 0 <= M <= N.
Rational lower_bound(const SystemParams& params);

// Lower convex envelope of (M, R_C(M)) over M in {0, N/K, ..., N}.
class Envelope {
 public:
  struct Point {
    Rational cache;
    Rational delay;
  };

  Envelope(int files, int users, int alpha_max);

  const std::vector<Point>& grid() const { return grid_; }
  const std::vector<Point>& vertices() const { return vertices_; }

  // Throws ValidationError(CacheOutOfRange) outside [0, N].
  Rational at(const Rational& cache) const;

 private:
  std::vector<Point> grid_;
  std::vector<Point> vertices_;
};

// Lower hull of points sorted by x. Exposed for testing.
std::vector<Envelope::Point> lower_hull(std::vector<Envelope::Point> points);

struct DelayReport {
  SystemParams params;
  Rational t;
  bool integral_t = false;
  // Fields below are set only for integral t.
  std::optional<AlphaChoice> alpha_star;
  std::optional<Loads> loads;
  std::optional<Rates> rates;
  std::optional<Rational> rate_rc;
  std::optional<Gains> gains;
  std::optional<Rational> baseline_mn;
  // Always set.
  std::optional<Rational> baseline_d2d;
  Rational envelope;
  Rational lower_bound;
  std::optional<Rational> gap_ratio;  // envelope / lower_bound; 1 at M = N
};

DelayReport make_report(const SystemParams& params);

// Envelope / lower bound, or 1 when both vanish (M = N).
Rational gap_ratio(const Rational& envelope_value, const Rational& bound);

struct GapGrid {
  int files_min = 4;
  int files_max = 40;
  int users_min = 2;
  int users_max = 12;
  bool include_full_cache = false;  // M = N points (ratio 1 by convention)
};

struct GapPoint {
  SystemParams params;
  Rational ratio;
};

struct GapReport {
  std::int64_t points = 0;
  std::vector<GapPoint> violations;  // ratio > 31
  std::optional<GapPoint> worst;

  bool ok() const { return violations.empty(); }
};

inline constexpr int kGapConstant = 31;

// Sweeps N, K in range, every alpha_max in [1, K/2] and every integral-t
// cache size; checks envelope / lower_bound <= 31. Parallel across N when
// threads > 1; results are merged in grid order.
GapReport verify_gap(const GapGrid& grid, unsigned threads = 1);

}  // namespace coopcache
