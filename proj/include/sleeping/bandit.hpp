#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sleeping/core.hpp"
#include "sleeping/hatt.hpp"
#include "sleeping/rng.hpp"

namespace sleeping {

// Bandit algorithms only receive this capability: the loss of the one action
// they chose. Full loss vectors never cross into bandit code.
using LossQuery = std::function<double(ActionId)>;

// Guarantee-matching defaults: mu = min{N*sqrt(K/T), 1}, eta = mu/K.
double bandit_hatt_default_mu(int num_actions, int max_available,
                              std::int64_t horizon);

class BanditHattState {
 public:
  // Hedge loss range is K/mu; inverse-propensity certificate values are
  // |A_t|/mu <= K/mu.
  BanditHattState(int max_available, double mu, double eta);

  PairHedgeBank& bank() { return bank_; }
  const PairHedgeBank& bank() const { return bank_; }
  double mu() const { return mu_; }
  double eta() const { return eta_; }
  int max_available() const { return max_available_; }

 private:
  int max_available_;
  double mu_;
  double eta_;
  PairHedgeBank bank_;
};

struct BanditHattStepResult {
  ActionId chosen = -1;
  ActionId tournament_winner = -1;
  bool explored = false;   // rho_t = 1
  bool updated = false;    // rho_t = 1 and loss(chosen) = 0
  double observed_loss = 0.0;
  double charge_value = 0.0;               // |A_t|/mu when updated
  std::vector<ActionPair> charged_pairs;   // consulted pairs containing z_t
  TournamentOutcome tournament;
};

// One bandit round: tournament winner, exploration coin, single loss query,
// inverse-propensity update when the explored draw hits the zero-loss action.
BanditHattStepResult bandit_hatt_step(BanditHattState& state,
                                      std::span<const ActionId> available,
                                      const LossQuery& loss_query,
                                      RngStream& rng);

// Deterministic minimum-level rule; ties go to the lowest action id.
struct LevelState {
  std::vector<std::int64_t> levels;

  explicit LevelState(int num_actions = 0)
      : levels(static_cast<size_t>(num_actions), 0) {}

  std::int64_t total() const;
};

ActionId level_step(LevelState& state, std::span<const ActionId> available,
                    const LossQuery& loss_query);

struct LevelViolation {
  ActionId action = -1;
  std::int64_t level = 0;
  std::int64_t bound = 0;
};

// Checks level(a) <= m_sigma(a) - 1 + cum_sigma_loss for every action, with
// ranks counted from 1. Returns the first violating action, if any.
std::optional<LevelViolation> level_certificate(const LevelState& state,
                                                const Ranking& sigma,
                                                double cum_sigma_loss);

// Randomized rounding of a real-loss round to a binary one; each entry
// becomes 1 with probability equal to its loss.
RoundTrace round_losses(const RoundTrace& round, RngStream& rng);

}  // namespace sleeping
