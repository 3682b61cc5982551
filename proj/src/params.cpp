#include "coopcache/params.hpp"

#include <numeric>
#include <string>

#include "coopcache/combinatorics.hpp"
#include "coopcache/error.hpp"

namespace coopcache {

using Code = ValidationError::Code;

void validate(const SystemParams& params) {
  const int K = params.users;
  const int N = params.files;
  if (K < 2) {
    throw ValidationError(Code::TooFewUsers, "need at least 2 users, got K=" + std::to_string(K));
  }
  if (N < K) {
    throw ValidationError(Code::UsersExceedFiles,
                          "K=" + std::to_string(K) + " exceeds N=" + std::to_string(N) + " (requires K <= N)");
  }
  if (params.alpha_max < 1 || params.alpha_max > K / 2) {
    throw ValidationError(Code::AlphaMaxOutOfRange, "alpha_max=" + std::to_string(params.alpha_max) +
                                                        " outside [1, floor(K/2)=" + std::to_string(K / 2) + "]");
  }
  if (params.cache < 0 || params.cache > Rational(N)) {
    throw ValidationError(Code::CacheOutOfRange,
                          "M=" + to_string(params.cache) + " outside [0, N=" + std::to_string(N) + "]");
  }
  if (params.file_bits && *params.file_bits == 0) {
    throw ValidationError(Code::FileSizeNotDivisible, "file size must be positive");
  }
}

Rational compute_t(const SystemParams& params) {
  return Rational(params.users) * params.cache / Rational(params.files);
}

int integral_t(const SystemParams& params) {
  Rational t = compute_t(params);
  if (!is_integer(t)) {
    throw ValidationError(Code::NonIntegralReplication,
                          "t = KM/N = " + to_string(t) + " is not an integer; use the envelope for this M");
  }
  return static_cast<int>(t.numerator());
}

int multicast_size(int users, int t, int alpha) {
  int g = std::min(users / alpha - 1, t);
  return g < 0 ? 0 : g;
}

Rational delay_at_alpha(const SystemParams& params, int alpha) {
  const int t = integral_t(params);
  const int K = params.users;
  Rational uncached = Rational(K) * (Rational(1) - params.cache / Rational(params.files));
  return uncached / Rational(1 + t + alpha * multicast_size(K, t, alpha));
}

int argmin_alpha(const SystemParams& params, std::optional<int> preferred) {
  int best = 1;
  Rational best_delay = delay_at_alpha(params, 1);
  for (int a = 2; a <= params.alpha_max; ++a) {
    Rational d = delay_at_alpha(params, a);
    if (d <= best_delay) {
      best = a;
      best_delay = d;
    }
  }
  if (preferred && *preferred >= 1 && *preferred <= params.alpha_max &&
      delay_at_alpha(params, *preferred) == best_delay) {
    return *preferred;
  }
  return best;
}

AlphaChoice choose_alpha(const SystemParams& params) {
  const int t = integral_t(params);
  const int K = params.users;
  if (t >= K - 1) return {1, true};
  if (t <= K / params.alpha_max - 1) return {params.alpha_max, true};
  for (int a = params.alpha_max; a >= 1; --a) {
    if (K / a - 1 == t) return {a, true};
  }
  return {argmin_alpha(params), false};
}

int optimal_alpha(const SystemParams& params) { return choose_alpha(params).alpha; }

bool slot_count_integral(int users, int t, int alpha, std::int64_t user_layers) {
  const int g = multicast_size(users, t, alpha);
  if (g <= 0 || user_layers <= 0) return false;
  const std::int64_t pairs = users * binomial(users - 1, t) * user_layers;
  return pairs > 0 && pairs % (static_cast<std::int64_t>(alpha) * g) == 0;
}

Loads allocate_loads(const SystemParams& params, int alpha) {
  const int t = integral_t(params);
  const int K = params.users;
  if (alpha < 1 || alpha > params.alpha_max) {
    throw ValidationError(Code::AlphaOutOfRange, "alpha=" + std::to_string(alpha) + " outside [1, alpha_max=" +
                                                     std::to_string(params.alpha_max) + "]");
  }
  const int g = multicast_size(K, t, alpha);
  if (g == 0 || t >= K) return {0, 1};
  Rational ratio(static_cast<std::int64_t>(alpha) * g, 1 + t);
  const std::int64_t a = ratio.numerator();
  const std::int64_t b = ratio.denominator();
  const std::int64_t per_layer = K * binomial(K - 1, t) * a;
  const std::int64_t divisor = static_cast<std::int64_t>(alpha) * g;
  const std::int64_t scale = divisor / std::gcd(per_layer, divisor);
  return {a * scale, b * scale};
}

DerivedParams derive(const SystemParams& params) { return derive(params, optimal_alpha(params)); }

DerivedParams derive(const SystemParams& params, int alpha) {
  return derive(params, alpha, allocate_loads(params, alpha));
}

DerivedParams derive(const SystemParams& params, int alpha, Loads loads) {
  validate(params);
  const int t = integral_t(params);
  if (alpha < 1 || alpha > params.alpha_max) {
    throw ValidationError(Code::AlphaOutOfRange, "alpha=" + std::to_string(alpha) + " outside [1, alpha_max=" +
                                                     std::to_string(params.alpha_max) + "]");
  }
  DerivedParams d;
  d.users = params.users;
  d.files = params.files;
  d.replication = t;
  d.alpha = alpha;
  d.group_size = params.users / alpha;
  d.multicast_size = multicast_size(params.users, t, alpha);
  if (loads.server_layers <= 0 || loads.user_layers < 0) {
    throw ValidationError(Code::LoadsInvalid, "loads need L2 > 0 and L1 >= 0");
  }
  if (loads.user_layers > 0 && d.multicast_size == 0) {
    throw ValidationError(Code::LoadsInvalid, "L1 > 0 but no user can multicast (g = 0)");
  }
  d.loads = loads;
  return d;
}

bool loads_balanced(const DerivedParams& d) {
  if (d.multicast_size == 0 || d.replication >= d.users) return d.loads.user_layers == 0;
  return Rational(d.loads.user_layers, d.loads.server_layers) ==
         Rational(static_cast<std::int64_t>(d.alpha) * d.multicast_size, 1 + d.replication);
}

}  // namespace coopcache
