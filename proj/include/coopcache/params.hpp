#pragma once

#include <cstdint>
#include <optional>

#include "coopcache/rational.hpp"

namespace coopcache {

// Model parameters: N files, K users with cache size M (in file units), at
// most alpha_max users transmitting concurrently on the cooperation network.
struct SystemParams {
  int files = 0;
  int users = 0;
  Rational cache{0};
  int alpha_max = 1;
  std::optional<std::uint64_t> file_bits;  // simulation only
};

// Split of the layers between the users (user_layers, L1) and the server
// (server_layers, L2).
struct Loads {
  std::int64_t user_layers = 0;
  std::int64_t server_layers = 1;

  std::int64_t total() const { return user_layers + server_layers; }
  friend bool operator==(const Loads&, const Loads&) = default;
};

// Structural constants of the scheme for a particular alpha.
struct DerivedParams {
  int users = 0;
  int files = 0;
  int replication = 0;  // t = KM/N
  int alpha = 1;
  int group_size = 0;      // floor(K / alpha)
  int multicast_size = 0;  // g = min(floor(K/alpha) - 1, t)
  Loads loads;

  std::int64_t layers() const { return loads.total(); }
  bool cooperation_enabled() const { return loads.user_layers > 0 && multicast_size > 0; }
};

// Throws ValidationError naming the first violated constraint.
void validate(const SystemParams& params);

// KM/N, exact.
Rational compute_t(const SystemParams& params);

// KM/N as an integer; throws ValidationError(NonIntegralReplication) otherwise.
int integral_t(const SystemParams& params);

// min(floor(K/alpha) - 1, t), floored at 0.
int multicast_size(int users, int t, int alpha);

// Worst-case delay of the scheme run with exactly `alpha` concurrent user
// senders: K(1 - M/N) / (1 + t + alpha * min(floor(K/alpha) - 1, t)).
Rational delay_at_alpha(const SystemParams& params, int alpha);

struct AlphaChoice {
  int alpha = 1;
  // False when the closed-form middle case has no solution and the choice
  // came from exhaustive minimisation instead.
  bool closed_form = true;
};

// Optimal number of concurrent senders. Uses the three-case closed form;
// when its middle case is empty (floor gaps) falls back to the largest
// minimiser of delay_at_alpha.
AlphaChoice choose_alpha(const SystemParams& params);
int optimal_alpha(const SystemParams& params);

// Exhaustive minimiser of delay_at_alpha over [1, alpha_max]. Ties prefer
// `preferred` when it is a minimiser, else the largest minimiser.
int argmin_alpha(const SystemParams& params, std::optional<int> preferred = std::nullopt);

// Smallest (L1, L2) with L1/L2 = alpha*g/(1+t) and K*C(K-1,t)*L1/(alpha*g)
// integral. Returns (0, 1) when g == 0.
Loads allocate_loads(const SystemParams& params, int alpha);

// True when K*C(K-1,t)*L1 is divisible by alpha*g (and L1 > 0, g > 0).
bool slot_count_integral(int users, int t, int alpha, std::int64_t user_layers);

// Derived constants for alpha = optimal_alpha(params) and allocated loads.
DerivedParams derive(const SystemParams& params);
DerivedParams derive(const SystemParams& params, int alpha);
// Explicit loads, e.g. a hand-picked split. Requires L2 > 0, L1 >= 0 and,
// when L1 > 0, g > 0; the balance ratio is not enforced.
DerivedParams derive(const SystemParams& params, int alpha, Loads loads);

// True when the loads satisfy L1/L2 = alpha*g/(1+t).
bool loads_balanced(const DerivedParams& derived);

}  // namespace coopcache
