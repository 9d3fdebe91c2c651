#include "sleeping/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include "sleeping/hedge.hpp"

namespace sleeping {

namespace {

// Per distinct available-set bitmask, the loss of each action summed over the
// rounds showing that set. L* computations only ever need these aggregates.
struct SetAggregate {
  std::uint32_t mask = 0;
  std::vector<double> action_loss;  // indexed by action id
};

std::vector<SetAggregate> aggregate_by_set(const Environment& env) {
  std::map<std::uint32_t, std::vector<double>> by_mask;
  for (const RoundTrace& r : env.rounds) {
    std::uint32_t mask = 0;
    for (ActionId a : r.available) mask |= 1u << a;
    auto& sums = by_mask[mask];
    if (sums.empty()) sums.assign(static_cast<size_t>(env.num_actions), 0.0);
    for (size_t i = 0; i < r.available.size(); ++i)
      sums[static_cast<size_t>(r.available[i])] += r.losses[i];
  }
  std::vector<SetAggregate> out;
  out.reserve(by_mask.size());
  for (auto& [mask, sums] : by_mask) out.push_back({mask, std::move(sums)});
  return out;
}

double loss_of_order(std::span<const ActionId> order,
                     std::span<const SetAggregate> sets) {
  double total = 0.0;
  for (const SetAggregate& s : sets) {
    for (ActionId a : order) {
      if (s.mask & (1u << a)) {
        total += s.action_loss[static_cast<size_t>(a)];
        break;
      }
    }
  }
  return total;
}

}  // namespace

// Dynamic program over ranked-prefix sets: a round's cost is charged at the
// step where the first element of its available set enters the prefix, so the
// optimum decomposes over subsets. Reconstruction picks the smallest action at
// every step, yielding the lexicographically first optimal order.
OracleResult best_ranking(const Environment& env, int cap) {
  const int n = env.num_actions;
  if (n > cap)
    throw CapabilityError(
        "best_ranking: N=" + std::to_string(n) + " exceeds enumeration cap " +
        std::to_string(cap) + "; use sampling mode");
  const std::vector<SetAggregate> sets = aggregate_by_set(env);

  const std::uint32_t full = (n >= 32) ? ~0u : (1u << n) - 1u;
  // delta(S, a): cost of rounds resolved by placing a right after prefix S.
  auto delta = [&](std::uint32_t prefix, ActionId a) {
    double d = 0.0;
    for (const SetAggregate& s : sets)
      if ((s.mask & prefix) == 0 && (s.mask & (1u << a)))
        d += s.action_loss[static_cast<size_t>(a)];
    return d;
  };

  std::vector<double> best(static_cast<size_t>(full) + 1, 0.0);
  // Fill by descending popcount so completions are known before prefixes.
  std::vector<std::uint32_t> order_by_popcount(static_cast<size_t>(full) + 1);
  std::iota(order_by_popcount.begin(), order_by_popcount.end(), 0u);
  std::sort(order_by_popcount.begin(), order_by_popcount.end(),
            [](std::uint32_t a, std::uint32_t b) {
              return std::popcount(a) > std::popcount(b);
            });
  for (std::uint32_t prefix : order_by_popcount) {
    if (prefix == full) continue;
    double v = HUGE_VAL;
    for (ActionId a = 0; a < n; ++a) {
      if (prefix & (1u << a)) continue;
      v = std::min(v, delta(prefix, a) + best[prefix | (1u << a)]);
    }
    best[prefix] = v;
  }

  std::vector<ActionId> order;
  std::uint32_t prefix = 0;
  while (static_cast<int>(order.size()) < n) {
    for (ActionId a = 0; a < n; ++a) {
      if (prefix & (1u << a)) continue;
      if (delta(prefix, a) + best[prefix | (1u << a)] == best[prefix]) {
        order.push_back(a);
        prefix |= 1u << a;
        break;
      }
    }
  }
  return {Ranking(std::move(order)), best[0]};
}

OracleResult best_ranking_by_enumeration(const Environment& env) {
  const int n = env.num_actions;
  const std::vector<SetAggregate> sets = aggregate_by_set(env);
  std::vector<ActionId> perm(static_cast<size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<ActionId> best_order = perm;
  double best_loss = loss_of_order(perm, sets);
  while (std::next_permutation(perm.begin(), perm.end())) {
    const double loss = loss_of_order(perm, sets);
    if (loss < best_loss) {
      best_loss = loss;
      best_order = perm;
    }
  }
  return {Ranking(std::move(best_order)), best_loss};
}

Ranking random_ranking(int n, RngStream& rng) {
  std::vector<ActionId> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  for (size_t i = order.size(); i > 1; --i)
    std::swap(order[i - 1], order[rng.uniform_int(i)]);
  return Ranking(std::move(order));
}

OracleResult sample_ranking_loss(const Environment& env, int samples,
                                 RngStream& rng) {
  const std::vector<SetAggregate> sets = aggregate_by_set(env);
  OracleResult best;
  best.loss = HUGE_VAL;
  for (int s = 0; s < samples; ++s) {
    Ranking r = random_ranking(env.num_actions, rng);
    const double loss = loss_of_order(r.order(), sets);
    if (loss < best.loss) {
      best.loss = loss;
      best.ranking = std::move(r);
    }
  }
  return best;
}

RegretReport per_subset_baseline(const Environment& env, RngStream& rng,
                                 std::span<const double> alphas) {
  std::map<std::vector<ActionId>, Hedge<ActionId>> hedges;
  std::vector<double> learner(env.rounds.size(), 0.0);
  for (size_t idx = 0; idx < env.rounds.size(); ++idx) {
    const RoundTrace& r = env.rounds[idx];
    auto it = hedges.find(r.available);
    if (it == hedges.end())
      it = hedges.emplace(r.available, Hedge<ActionId>(r.available, 1.0, 1.0))
               .first;
    const ActionId chosen = it->second.sample(rng);
    learner[idx] = r.loss_of(chosen);
    it->second.update(r.losses);
  }

  const OracleResult oracle = best_ranking(env);
  std::vector<double> comparator(env.rounds.size(), 0.0);
  for (size_t idx = 0; idx < env.rounds.size(); ++idx) {
    const RoundTrace& r = env.rounds[idx];
    comparator[idx] = r.loss_of(sigma_choice(oracle.ranking, r.available));
  }
  return make_regret_report(learner, comparator, oracle.ranking, alphas);
}

RegretReport ranking_hedge_baseline(const Environment& env, RngStream& rng,
                                    std::span<const double> alphas) {
  const int n = env.num_actions;
  if (n > kRankingHedgeCap)
    throw CapabilityError("ranking_hedge_baseline: N=" + std::to_string(n) +
                          " exceeds the N! hedging cap of " +
                          std::to_string(kRankingHedgeCap));

  std::vector<Ranking> rankings;
  std::vector<ActionId> perm(static_cast<size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    rankings.emplace_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::vector<int> labels(rankings.size());
  std::iota(labels.begin(), labels.end(), 0);
  Hedge<int> hedge(std::move(labels), 1.0, 1.0);

  std::vector<double> learner(env.rounds.size(), 0.0);
  std::vector<double> round_loss(rankings.size());
  for (size_t idx = 0; idx < env.rounds.size(); ++idx) {
    const RoundTrace& r = env.rounds[idx];
    const int drawn = hedge.sample(rng);
    learner[idx] =
        r.loss_of(sigma_choice(rankings[static_cast<size_t>(drawn)], r.available));
    for (size_t s = 0; s < rankings.size(); ++s)
      round_loss[s] = r.loss_of(sigma_choice(rankings[s], r.available));
    hedge.update(round_loss);
  }

  const OracleResult oracle = best_ranking(env);
  std::vector<double> comparator(env.rounds.size(), 0.0);
  for (size_t idx = 0; idx < env.rounds.size(); ++idx) {
    const RoundTrace& r = env.rounds[idx];
    comparator[idx] = r.loss_of(sigma_choice(oracle.ranking, r.available));
  }
  return make_regret_report(learner, comparator, oracle.ranking, alphas);
}

}  // namespace sleeping
