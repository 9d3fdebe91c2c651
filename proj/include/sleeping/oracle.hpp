#pragma once

#include <span>
#include <stdexcept>

#include "sleeping/core.hpp"
#include "sleeping/rng.hpp"

namespace sleeping {

// Raised when a request exceeds the exact-enumeration capability.
struct CapabilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr int kDefaultEnumerationCap = 8;
inline constexpr int kRankingHedgeCap = 7;

struct OracleResult {
  Ranking ranking;  // lexicographically first optimum
  double loss = 0.0;
};

// Exact L* = min over all N! rankings of the cumulative comparator loss.
// Ties broken by lexicographic order of the ranking's order sequence.
// Throws CapabilityError when N exceeds the cap (use sample_ranking_loss).
OracleResult best_ranking(const Environment& env,
                          int cap = kDefaultEnumerationCap);

// Straightforward N! scan in std::next_permutation order; used as an
// independent cross-check of best_ranking.
OracleResult best_ranking_by_enumeration(const Environment& env);

// Best ranking among `samples` uniformly random rankings: an upper bound on
// L*, reported as approximate above the enumeration cap.
OracleResult sample_ranking_loss(const Environment& env, int samples,
                                 RngStream& rng);

// Footnote baseline: an independent Hedge (eta=1, R=1) per distinct
// available set, each fed the round's full loss vector.
RegretReport per_subset_baseline(const Environment& env, RngStream& rng,
                                 std::span<const double> alphas);

// One Hedge over all N! rankings with per-round loss l_t(sigma(A_t)).
RegretReport ranking_hedge_baseline(const Environment& env, RngStream& rng,
                                    std::span<const double> alphas);

// Uniformly random permutation of [0, n).
Ranking random_ranking(int n, RngStream& rng);

}  // namespace sleeping
