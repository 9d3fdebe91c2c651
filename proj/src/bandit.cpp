#include "sleeping/bandit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace sleeping {

double bandit_hatt_default_mu(int num_actions, int max_available,
                              std::int64_t horizon) {
  const double mu = num_actions * std::sqrt(static_cast<double>(max_available) /
                                            static_cast<double>(horizon));
  return std::min(mu, 1.0);
}

BanditHattState::BanditHattState(int max_available, double mu, double eta)
    : max_available_(max_available),
      mu_(mu),
      eta_(eta),
      bank_(eta, static_cast<double>(max_available) / mu) {
  if (!(mu > 0.0 && mu <= 1.0))
    throw std::invalid_argument("BanditHattState: mu must be in (0,1]");
  if (!(eta > 0.0))
    throw std::invalid_argument("BanditHattState: eta must be > 0");
  if (max_available < 1)
    throw std::invalid_argument("BanditHattState: K must be >= 1");
}

BanditHattStepResult bandit_hatt_step(BanditHattState& state,
                                      std::span<const ActionId> available,
                                      const LossQuery& loss_query,
                                      RngStream& rng) {
  if (available.empty())
    throw std::invalid_argument("bandit_hatt_step: empty available set");
  if (static_cast<int>(available.size()) > state.max_available())
    throw std::invalid_argument(
        "bandit_hatt_step: available set exceeds declared K");

  BanditHattStepResult res;
  res.tournament = run_tournament(available, state.bank(), rng);
  res.tournament_winner = res.tournament.winner;

  res.explored = rng.bernoulli(state.mu());
  res.chosen = res.explored
                   ? available[rng.uniform_int(available.size())]
                   : res.tournament_winner;
  res.observed_loss = loss_query(res.chosen);

  if (res.explored && res.observed_loss == 0.0) {
    const ActionId z = res.chosen;
    res.updated = true;
    res.charge_value = static_cast<double>(available.size()) / state.mu();
    for (const ActionPair& pr : res.tournament.consulted) {
      if (pr.first != z && pr.second != z) continue;
      res.charged_pairs.push_back(pr);
      Hedge<ActionId>& h = state.bank().instance(pr.first, pr.second);
      const double c_first = pr.first == z ? 0.0 : res.charge_value;
      const double losses[2] = {c_first,
                                c_first == 0.0 ? res.charge_value : 0.0};
      h.update(losses);
    }
  }
  return res;
}

std::int64_t LevelState::total() const {
  return std::accumulate(levels.begin(), levels.end(), std::int64_t{0});
}

ActionId level_step(LevelState& state, std::span<const ActionId> available,
                    const LossQuery& loss_query) {
  if (available.empty())
    throw std::invalid_argument("level_step: empty available set");
  ActionId best = available[0];
  std::int64_t best_level = state.levels[static_cast<size_t>(best)];
  for (ActionId a : available.subspan(1)) {
    const std::int64_t lv = state.levels[static_cast<size_t>(a)];
    if (lv < best_level) {  // ties keep the lowest id (available is sorted)
      best = a;
      best_level = lv;
    }
  }
  if (loss_query(best) == 1.0) ++state.levels[static_cast<size_t>(best)];
  return best;
}

std::optional<LevelViolation> level_certificate(const LevelState& state,
                                                const Ranking& sigma,
                                                double cum_sigma_loss) {
  for (ActionId a = 0; a < static_cast<ActionId>(state.levels.size()); ++a) {
    const std::int64_t bound =
        sigma.rank_of(a) + static_cast<std::int64_t>(cum_sigma_loss);
    // rank_of is 0-based, so rank_of == m_sigma - 1.
    if (state.levels[static_cast<size_t>(a)] > bound)
      return LevelViolation{a, state.levels[static_cast<size_t>(a)], bound};
  }
  return std::nullopt;
}

RoundTrace round_losses(const RoundTrace& round, RngStream& rng) {
  RoundTrace out;
  out.t = round.t;
  out.available = round.available;
  out.losses.reserve(round.losses.size());
  for (double l : round.losses) {
    if (!(l >= 0.0 && l <= 1.0))
      throw std::invalid_argument("round_losses: loss outside [0,1]");
    out.losses.push_back(rng.bernoulli(l) ? 1.0 : 0.0);
  }
  return out;
}

}  // namespace sleeping
