#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "sleeping/core.hpp"
#include "sleeping/hedge.hpp"
#include "sleeping/rng.hpp"

namespace sleeping {

using ActionPair = std::pair<ActionId, ActionId>;  // first < second

inline ActionPair make_pair_key(ActionId i, ActionId j) {
  return i < j ? ActionPair{i, j} : ActionPair{j, i};
}

// One two-choice Hedge per unordered action pair, created lazily on first
// consultation (uniform at creation, identical to eager initialization).
class PairHedgeBank {
 public:
  explicit PairHedgeBank(double eta = 1.0, double loss_range = 1.0)
      : eta_(eta), range_(loss_range) {}

  Hedge<ActionId>& instance(ActionId i, ActionId j);
  const Hedge<ActionId>* find(ActionId i, ActionId j) const;
  std::size_t size() const { return hedges_.size(); }
  double eta() const { return eta_; }
  double loss_range() const { return range_; }

  const std::map<ActionPair, Hedge<ActionId>>& all() const { return hedges_; }

 private:
  double eta_;
  double range_;
  std::map<ActionPair, Hedge<ActionId>> hedges_;
};

struct TournamentOutcome {
  ActionId winner = -1;
  std::vector<ActionPair> consulted;                 // U_t
  std::map<ActionPair, ActionId> sub_winners;        // a_t^{i,j} for U_t
};

// Single-elimination bracket over the available set. Leaves take the actions
// in ascending id order; each node splits its range into sizes ceil(n/2) and
// floor(n/2); matches are sampled bottom-up, left to right within a level, so
// RNG consumption is deterministic.
TournamentOutcome run_tournament(std::span<const ActionId> available,
                                 PairHedgeBank& bank, RngStream& rng);

// Per-round loss certificate: nonzero only on consulted pairs containing the
// zero-loss action z_t, where the non-z action is charged 1.
struct PairLossCertificate {
  std::int64_t round = 0;
  ActionId zero_action = -1;
  std::vector<ActionPair> charged_pairs;  // pairs {i, z_t} in U_t
};

struct HattStepResult {
  ActionId chosen = -1;
  PairLossCertificate certificate;
  TournamentOutcome tournament;
};

// One full-information round: tournament, certificate, EWU on the consulted
// pairs containing z_t. The round must have exactly one zero-loss action.
HattStepResult hatt_step(PairHedgeBank& bank, const RoundTrace& round,
                         RngStream& rng);

// Sum over pairs of the certificate loss at sigma's choice within the pair
// (the quantity the log-K per-round bound controls).
int certificate_comparator_cost(const PairLossCertificate& certificate,
                                const Ranking& sigma);

// Certificate loss summed at the tournament's sampled sub-winners (the
// quantity that upper-bounds the learner's round loss).
int certificate_subwinner_cost(const PairLossCertificate& certificate,
                               const TournamentOutcome& tournament);

// 1 + ceil(log2(k)), the per-action consulted-pair cap.
int tournament_depth_bound(int k);

}  // namespace sleeping
