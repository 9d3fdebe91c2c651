#include "sleeping/replay.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "sleeping/bandit.hpp"
#include "sleeping/hatt.hpp"
#include "sleeping/hopp.hpp"
#include "sleeping/oracle.hpp"
#include "sleeping/rng.hpp"

namespace sleeping {

namespace {

constexpr int kCheckRankings = 20;        // random rankings per certificate check
constexpr int kLevelCheckRankings = 50;   // random rankings for the level-bound check
constexpr int kLevelExhaustiveCap = 5;    // exhaustive rankings up to this N

std::vector<Ranking> check_rankings(int n, int count, bool with_identity,
                                    RngStream& rng) {
  std::vector<Ranking> out;
  if (with_identity) out.push_back(Ranking::identity(n));
  for (int i = 0; i < count; ++i) out.push_back(random_ranking(n, rng));
  return out;
}

std::vector<Ranking> all_rankings(int n) {
  std::vector<Ranking> out;
  std::vector<ActionId> perm(static_cast<size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    out.emplace_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

ReplayOutput replay_hatt(const Environment& env, std::uint64_t seed, int trial,
                         const ReplayOptions& opts) {
  RngStream alg_rng(seed, static_cast<std::uint64_t>(trial), "hatt");
  RngStream check_rng(seed, static_cast<std::uint64_t>(trial), "check");
  PairHedgeBank bank(opts.eta.value_or(1.0), 1.0);
  const int depth_cap = tournament_depth_bound(env.max_available);

  std::vector<Ranking> rankings;
  if (opts.check_invariants)
    rankings = check_rankings(env.num_actions, kCheckRankings, true, check_rng);

  ReplayOutput out;
  out.records.reserve(env.rounds.size());
  for (const RoundTrace& r : env.rounds) {
    const HattStepResult step = hatt_step(bank, r, alg_rng);
    out.records.push_back({r.t, step.chosen, r.loss_of(step.chosen)});

    if (!opts.check_invariants) continue;
    const auto& tour = step.tournament;
    if (tour.consulted.size() != r.available.size() - 1)
      throw InvariantViolation("tournament-structure", r.t,
                               "|consulted| != |A_t| - 1");
    std::map<ActionId, int> appearances;
    for (const ActionPair& pr : tour.consulted) {
      ++appearances[pr.first];
      ++appearances[pr.second];
    }
    for (const auto& [a, cnt] : appearances)
      if (cnt > depth_cap)
        throw InvariantViolation(
            "tournament-structure", r.t,
            "action " + std::to_string(a) + " consulted " +
                std::to_string(cnt) + " times > " + std::to_string(depth_cap));
    const double round_loss = r.loss_of(step.chosen);
    if (round_loss > certificate_subwinner_cost(step.certificate, tour))
      throw InvariantViolation("round-loss-cover", r.t,
                               "round loss exceeds certificate sample cost");
    for (const Ranking& sigma : rankings) {
      const double sigma_loss = r.loss_of(sigma_choice(sigma, r.available));
      if (certificate_comparator_cost(step.certificate, sigma) >
          depth_cap * sigma_loss)
        throw InvariantViolation("comparator-cap", r.t,
                                 "comparator cost exceeds (1+ceil(log2 K)) "
                                 "* sigma loss");
    }
  }
  return out;
}

ReplayOutput replay_hopp(const Environment& env, std::uint64_t seed, int trial,
                         const ReplayOptions& opts) {
  RngStream alg_rng(seed, static_cast<std::uint64_t>(trial), "hopp");
  RngStream check_rng(seed, static_cast<std::uint64_t>(trial), "check");
  PairPairHedgeBank bank(opts.eta.value_or(1.0));
  const int k = env.max_available;
  const long long pair_cap = (k - 2) * (k - 3) / 2;  // C(K-2, 2)
  const long long triple_cap = k - 2;

  std::vector<Ranking> rankings;
  if (opts.check_invariants)
    rankings = check_rankings(env.num_actions, kCheckRankings, true, check_rng);

  ReplayOutput out;
  out.records.reserve(env.rounds.size());
  for (const RoundTrace& r : env.rounds) {
    const HoppStepResult step = hopp_step(bank, r, alg_rng);
    out.records.push_back({r.t, step.chosen, r.loss_of(step.chosen)});

    if (!opts.check_invariants) continue;
    for (size_t i = 0; i < step.selection.good_pairs.size(); ++i)
      for (size_t j = i + 1; j < step.selection.good_pairs.size(); ++j) {
        const ActionPair a = step.selection.good_pairs[i];
        const ActionPair b = step.selection.good_pairs[j];
        const bool share = a.first == b.first || a.first == b.second ||
                           a.second == b.first || a.second == b.second;
        if (!share)
          throw InvariantViolation("good-pair", r.t,
                                   "two disjoint good pairs");
      }
    if (r.loss_of(step.chosen) >
        hopp_certificate_sample_cost(step.certificate, step.selection))
      throw InvariantViolation("sample-cover", r.t,
                               "round loss exceeds certificate sample cost");
    for (const Ranking& sigma : rankings) {
      const double sigma_loss = r.loss_of(sigma_choice(sigma, r.available));
      const HoppComparatorCost cost =
          hopp_certificate_comparator_cost(step.certificate, sigma);
      if (cost.pair_cost > pair_cap * sigma_loss ||
          cost.triple_cost > triple_cap * sigma_loss)
        throw InvariantViolation("pair-triple-cap", r.t,
                                 "comparator cost exceeds the K bound");
    }
  }
  return out;
}

ReplayOutput replay_bandit_hatt(const Environment& env, std::uint64_t seed,
                                int trial, const ReplayOptions& opts) {
  RngStream alg_rng(seed, static_cast<std::uint64_t>(trial), "bandit-hatt");
  const double mu = opts.mu.value_or(
      bandit_hatt_default_mu(env.num_actions, env.max_available, env.horizon));
  const double eta = opts.eta.value_or(mu / env.max_available);
  BanditHattState state(env.max_available, mu, eta);

  ReplayOutput out;
  out.records.reserve(env.rounds.size());
  for (const RoundTrace& r : env.rounds) {
    // Feedback boundary: the algorithm only ever sees the queried loss.
    const LossQuery query = [&r](ActionId a) { return r.loss_of(a); };
    const BanditHattStepResult step =
        bandit_hatt_step(state, r.available, query, alg_rng);
    out.records.push_back({r.t, step.chosen, step.observed_loss});

    if (!opts.check_invariants) continue;
    if (step.updated && !(step.explored && step.observed_loss == 0.0))
      throw InvariantViolation("bandit-update-gate", r.t,
                               "update outside rho=1 and zero observed loss");
    if (step.updated &&
        step.charge_value !=
            static_cast<double>(r.available.size()) / state.mu())
      throw InvariantViolation("bandit-charge", r.t,
                               "charge value != |A_t|/mu");
  }
  return out;
}

ReplayOutput replay_level(const Environment& env, std::uint64_t seed, int trial,
                          const ReplayOptions& opts) {
  ReplayOutput out;
  const Environment* run_env = &env;
  if (env.real_losses) {
    RngStream round_rng(seed, static_cast<std::uint64_t>(trial), "rounding");
    Environment rounded = env;
    rounded.real_losses = false;
    for (RoundTrace& r : rounded.rounds) r = round_losses(r, round_rng);
    out.rounded_env = std::move(rounded);
    run_env = &*out.rounded_env;
  }

  RngStream check_rng(seed, static_cast<std::uint64_t>(trial), "check");
  std::vector<Ranking> rankings;
  std::vector<double> cum_sigma_loss;
  if (opts.check_invariants) {
    rankings = env.num_actions <= kLevelExhaustiveCap
                   ? all_rankings(env.num_actions)
                   : check_rankings(env.num_actions, kLevelCheckRankings,
                                    false, check_rng);
    cum_sigma_loss.assign(rankings.size(), 0.0);
  }

  LevelState state(env.num_actions);
  double cum_loss = 0.0;
  out.records.reserve(run_env->rounds.size());
  for (const RoundTrace& r : run_env->rounds) {
    if (opts.check_invariants) {
      // The level bound holds at the beginning of the round.
      for (size_t s = 0; s < rankings.size(); ++s) {
        if (const auto v =
                level_certificate(state, rankings[s], cum_sigma_loss[s]))
          throw InvariantViolation(
              "level-bound", r.t,
              "action " + std::to_string(v->action) + " at level " +
                  std::to_string(v->level) + " > bound " +
                  std::to_string(v->bound));
      }
    }
    const LossQuery query = [&r](ActionId a) { return r.loss_of(a); };
    const ActionId chosen = level_step(state, r.available, query);
    const double loss = r.loss_of(chosen);
    cum_loss += loss;
    out.records.push_back({r.t, chosen, loss});

    if (opts.check_invariants) {
      if (static_cast<double>(state.total()) != cum_loss)
        throw InvariantViolation("level-sum", r.t,
                                 "sum of levels != cumulative loss");
      for (size_t s = 0; s < rankings.size(); ++s)
        cum_sigma_loss[s] += r.loss_of(sigma_choice(rankings[s], r.available));
    }
  }
  return out;
}

ReplayOutput replay_per_subset(const Environment& env, std::uint64_t seed,
                               int trial) {
  RngStream alg_rng(seed, static_cast<std::uint64_t>(trial), "per-subset");
  std::map<std::vector<ActionId>, Hedge<ActionId>> hedges;
  ReplayOutput out;
  out.records.reserve(env.rounds.size());
  for (const RoundTrace& r : env.rounds) {
    auto it = hedges.find(r.available);
    if (it == hedges.end())
      it = hedges.emplace(r.available, Hedge<ActionId>(r.available, 1.0, 1.0))
               .first;
    const ActionId chosen = it->second.sample(alg_rng);
    out.records.push_back({r.t, chosen, r.loss_of(chosen)});
    it->second.update(r.losses);
  }
  return out;
}

ReplayOutput replay_ranking_hedge(const Environment& env, std::uint64_t seed,
                                  int trial) {
  RngStream alg_rng(seed, static_cast<std::uint64_t>(trial), "ranking-hedge");
  if (env.num_actions > kRankingHedgeCap)
    throw CapabilityError("ranking-hedge: N exceeds the N! hedging cap");
  const std::vector<Ranking> rankings = all_rankings(env.num_actions);
  std::vector<int> labels(rankings.size());
  std::iota(labels.begin(), labels.end(), 0);
  Hedge<int> hedge(std::move(labels), 1.0, 1.0);

  ReplayOutput out;
  out.records.reserve(env.rounds.size());
  std::vector<double> round_loss(rankings.size());
  for (const RoundTrace& r : env.rounds) {
    const int drawn = hedge.sample(alg_rng);
    const ActionId chosen =
        sigma_choice(rankings[static_cast<size_t>(drawn)], r.available);
    out.records.push_back({r.t, chosen, r.loss_of(chosen)});
    for (size_t s = 0; s < rankings.size(); ++s)
      round_loss[s] = r.loss_of(sigma_choice(rankings[s], r.available));
    hedge.update(round_loss);
  }
  return out;
}

}  // namespace

std::optional<std::string> algorithm_env_mismatch(AlgorithmKind algorithm,
                                                  const Environment& env) {
  const std::string cls = to_string(env.zclass);
  switch (algorithm) {
    case AlgorithmKind::kHatt:
    case AlgorithmKind::kBanditHatt:
      if (env.real_losses || env.zclass != ZeroCountClass::kExactlyOne)
        return to_string(algorithm) +
               " requires binary exactly-one environments, got " + cls;
      return std::nullopt;
    case AlgorithmKind::kHopp:
      if (env.real_losses || env.zclass != ZeroCountClass::kExactlyTwo)
        return to_string(algorithm) +
               " requires binary exactly-two environments, got " + cls;
      return std::nullopt;
    case AlgorithmKind::kLevel:
      return std::nullopt;  // real losses handled by randomized rounding
    case AlgorithmKind::kPerSubset:
      if (env.real_losses) return std::string("per-subset requires binary losses");
      return std::nullopt;
    case AlgorithmKind::kRankingHedge:
      if (env.real_losses)
        return std::string("ranking-hedge requires binary losses");
      if (env.num_actions > kRankingHedgeCap)
        return std::string("ranking-hedge requires N <= ") +
               std::to_string(kRankingHedgeCap);
      return std::nullopt;
  }
  return std::string("unknown algorithm");
}

ReplayOutput replay(const Environment& env, AlgorithmKind algorithm,
                    std::uint64_t seed, int trial, const ReplayOptions& opts) {
  if (const auto why = algorithm_env_mismatch(algorithm, env))
    throw std::invalid_argument(*why);
  switch (algorithm) {
    case AlgorithmKind::kHatt:
      return replay_hatt(env, seed, trial, opts);
    case AlgorithmKind::kHopp:
      return replay_hopp(env, seed, trial, opts);
    case AlgorithmKind::kBanditHatt:
      return replay_bandit_hatt(env, seed, trial, opts);
    case AlgorithmKind::kLevel:
      return replay_level(env, seed, trial, opts);
    case AlgorithmKind::kPerSubset:
      return replay_per_subset(env, seed, trial);
    case AlgorithmKind::kRankingHedge:
      return replay_ranking_hedge(env, seed, trial);
  }
  throw std::logic_error("unknown algorithm");
}

}  // namespace sleeping
