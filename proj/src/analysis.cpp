#include "coopcache/analysis.hpp"

#include <algorithm>
#include <thread>

#include "coopcache/error.hpp"

namespace coopcache {

namespace {

Rational uncached_load(const SystemParams& params) {
  return Rational(params.users) * (Rational(1) - params.cache / Rational(params.files));
}

}  // namespace

Rational rate_rc(const SystemParams& params) {
  Rational best = delay_at_alpha(params, 1);
  for (int a = 2; a <= params.alpha_max; ++a) best = std::min(best, delay_at_alpha(params, a));
  return best;
}

Rates rates_r1_r2(const SystemParams& params, int alpha, Loads loads) {
  const int t = integral_t(params);
  const int g = multicast_size(params.users, t, alpha);
  if (g == 0 && loads.user_layers > 0) {
    throw ValidationError(ValidationError::Code::LoadsInvalid, "L1 > 0 but no user can multicast (g = 0)");
  }
  const Rational total(loads.total());
  const Rational load = uncached_load(params);
  Rates r;
  r.server = Rational(loads.server_layers) / total * load / Rational(1 + t);
  r.users = loads.user_layers == 0
                ? Rational(0)
                : Rational(loads.user_layers) / total * load / Rational(static_cast<std::int64_t>(alpha) * g);
  return r;
}

Gains gains(const SystemParams& params) {
  const int t = integral_t(params);
  const int alpha = optimal_alpha(params);
  const Rational cooperative(static_cast<std::int64_t>(alpha) * multicast_size(params.users, t, alpha));
  Gains out;
  out.cooperation = Rational(1) / (Rational(1) + cooperative / Rational(1 + t));
  if (t > 0) out.parallel = Rational(1) / (Rational(1) + Rational(1, t) + cooperative / Rational(t));
  return out;
}

Rational baseline_mn(const SystemParams& params) {
  const int t = integral_t(params);
  return uncached_load(params) / Rational(1 + t);
}

std::optional<Rational> baseline_d2d(const SystemParams& params) {
  if (params.cache == Rational(0)) return std::nullopt;
  return Rational(params.files) / params.cache * (Rational(1) - params.cache / Rational(params.files));
}

Rational lower_bound(const SystemParams& params) {
  const Rational& M = params.cache;
  Rational best = (Rational(1) - M / Rational(params.files)) / Rational(2);
  for (int s = 1; s <= params.users; ++s) {
    const Rational blocks(params.files / s);
    const Rational server_cut = Rational(s) - Rational(params.users) * M / blocks;
    const Rational joint_cut = (Rational(s) - Rational(s) * M / blocks) / Rational(1 + params.alpha_max);
    best = std::max({best, server_cut, joint_cut});
  }
  return best;
}

std::vector<Envelope::Point> lower_hull(std::vector<Envelope::Point> points) {
  std::vector<Envelope::Point> hull;
  for (const auto& p : points) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      // Drop b when it lies on or above segment a-p.
      Rational cross = (b.cache - a.cache) * (p.delay - a.delay) - (b.delay - a.delay) * (p.cache - a.cache);
      if (cross <= 0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(p);
  }
  return hull;
}

Envelope::Envelope(int files, int users, int alpha_max) {
  for (int i = 0; i <= users; ++i) {
    SystemParams p{files, users, Rational(static_cast<std::int64_t>(i) * files, users), alpha_max, std::nullopt};
    grid_.push_back({p.cache, rate_rc(p)});
  }
  vertices_ = lower_hull(grid_);
}

Rational Envelope::at(const Rational& cache) const {
  const Rational& lo = vertices_.front().cache;
  const Rational& hi = vertices_.back().cache;
  if (cache < lo || cache > hi) {
    throw ValidationError(ValidationError::Code::CacheOutOfRange,
                          "M=" + to_string(cache) + " outside [" + to_string(lo) + ", " + to_string(hi) + "]");
  }
  for (std::size_t i = 1; i < vertices_.size(); ++i) {
    const auto& a = vertices_[i - 1];
    const auto& b = vertices_[i];
    if (cache <= b.cache) {
      return a.delay + (b.delay - a.delay) * (cache - a.cache) / (b.cache - a.cache);
    }
  }
  return vertices_.back().delay;
}

Rational gap_ratio(const Rational& envelope_value, const Rational& bound) {
  if (envelope_value == Rational(0) && bound == Rational(0)) return Rational(1);
  return envelope_value / bound;
}

DelayReport make_report(const SystemParams& params) {
  validate(params);
  DelayReport r;
  r.params = params;
  r.t = compute_t(params);
  r.integral_t = is_integer(r.t);
  if (r.integral_t) {
    r.alpha_star = choose_alpha(params);
    r.loads = allocate_loads(params, r.alpha_star->alpha);
    r.rates = rates_r1_r2(params, r.alpha_star->alpha, *r.loads);
    r.rate_rc = rate_rc(params);
    r.gains = gains(params);
    r.baseline_mn = baseline_mn(params);
  }
  r.baseline_d2d = baseline_d2d(params);
  r.envelope = Envelope(params.files, params.users, params.alpha_max).at(params.cache);
  r.lower_bound = lower_bound(params);
  if (r.lower_bound > 0 || r.envelope == Rational(0)) r.gap_ratio = gap_ratio(r.envelope, r.lower_bound);
  return r;
}

namespace {

GapReport gap_for_files(int N, const GapGrid& grid) {
  GapReport report;
  for (int K = grid.users_min; K <= std::min(N, grid.users_max); ++K) {
    for (int alpha_max = 1; alpha_max <= K / 2; ++alpha_max) {
      Envelope env(N, K, alpha_max);
      const int last = grid.include_full_cache ? K : K - 1;
      for (int i = 0; i <= last; ++i) {
        SystemParams p{N, K, Rational(static_cast<std::int64_t>(i) * N, K), alpha_max, std::nullopt};
        const Rational ratio = gap_ratio(env.at(p.cache), lower_bound(p));
        ++report.points;
        GapPoint point{p, ratio};
        if (ratio > Rational(kGapConstant)) report.violations.push_back(point);
        if (!report.worst || ratio > report.worst->ratio) report.worst = point;
      }
    }
  }
  return report;
}

}  // namespace

GapReport verify_gap(const GapGrid& grid, unsigned threads) {
  const int count = std::max(0, grid.files_max - grid.files_min + 1);
  std::vector<GapReport> parts(count);
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max(count, 1))));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) parts[i] = gap_for_files(grid.files_min + i, grid);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        for (int i = static_cast<int>(w); i < count; i += static_cast<int>(threads)) {
          parts[i] = gap_for_files(grid.files_min + i, grid);
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  GapReport merged;
  for (auto& part : parts) {
    merged.points += part.points;
    merged.violations.insert(merged.violations.end(), part.violations.begin(), part.violations.end());
    if (part.worst && (!merged.worst || part.worst->ratio > merged.worst->ratio)) merged.worst = part.worst;
  }
  return merged;
}

}  // namespace coopcache
