#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "sleeping/core.hpp"
#include "sleeping/hatt.hpp"  // ActionPair, make_pair_key
#include "sleeping/hedge.hpp"
#include "sleeping/rng.hpp"

namespace sleeping {

using ActionTriple = std::array<ActionId, 3>;  // sorted ascending

// Canonical key for an unordered matchup of two disjoint pairs: the
// lexicographically smaller pair comes first.
using PairMatchKey = std::pair<ActionPair, ActionPair>;

PairMatchKey make_match_key(ActionPair x, ActionPair y);
ActionTriple make_triple_key(ActionId i, ActionId j, ActionId k);

// Two-choice Hedges over disjoint pair matchups plus three-choice Hedges over
// triples, both created lazily (uniform at creation).
class PairPairHedgeBank {
 public:
  explicit PairPairHedgeBank(double eta = 1.0) : eta_(eta) {}

  Hedge<ActionPair>& pair_instance(ActionPair x, ActionPair y);
  Hedge<ActionId>& triple_instance(const ActionTriple& s);
  const Hedge<ActionPair>* find_pair(ActionPair x, ActionPair y) const;
  const Hedge<ActionId>* find_triple(const ActionTriple& s) const;

  const std::map<PairMatchKey, Hedge<ActionPair>>& pair_hedges() const {
    return pair_hedges_;
  }
  const std::map<ActionTriple, Hedge<ActionId>>& triple_hedges() const {
    return triple_hedges_;
  }

 private:
  double eta_;
  std::map<PairMatchKey, Hedge<ActionPair>> pair_hedges_;
  std::map<ActionTriple, Hedge<ActionId>> triple_hedges_;
};

enum class HoppBranch { kNoGoodPair, kCommonAction, kTriangle };

struct SelectionOutcome {
  ActionId chosen = -1;
  std::map<PairMatchKey, ActionPair> pair_samples;  // matchup -> winning pair
  std::optional<std::pair<ActionTriple, ActionId>> triple_sample;
  std::vector<ActionPair> good_pairs;
  HoppBranch branch = HoppBranch::kNoGoodPair;
};

// A pair X within A_t is good when it wins its sampled matchup against every
// disjoint pair Y within A_t (vacuously good if none exists).
std::vector<ActionPair> find_good_pairs(
    std::span<const ActionId> available,
    const std::map<PairMatchKey, ActionPair>& pair_samples);

// Certificate of one round: the zero pair Z_t charges every disjoint pair
// X within A_t through the matchup hedge {X, Z_t}, and every triple
// Z_t + {i}, i in A_t \ Z_t, charges its extra action.
struct HoppCertificate {
  std::int64_t round = 0;
  ActionPair zero_pair{-1, -1};
  std::vector<ActionPair> charged_pairs;     // X subset of A_t \ Z_t
  std::vector<ActionId> charged_triple_extras;  // i in A_t \ Z_t
};

struct HoppStepResult {
  ActionId chosen = -1;
  HoppCertificate certificate;
  SelectionOutcome selection;
};

// One full-information round with exactly two zero-loss actions.
HoppStepResult hopp_step(PairPairHedgeBank& bank, const RoundTrace& round,
                         RngStream& rng);

struct HoppComparatorCost {
  int pair_cost = 0;
  int triple_cost = 0;
};

// Certificate losses at sigma's choices: sigma picks X in matchup {X,Y} iff
// its top action of the four lies in X, and its top action within each triple.
HoppComparatorCost hopp_certificate_comparator_cost(
    const HoppCertificate& certificate, const Ranking& sigma);

// Certificate losses at the sampled winners (the quantity bounding the
// learner's round loss).
int hopp_certificate_sample_cost(const HoppCertificate& certificate,
                                 const SelectionOutcome& selection);

}  // namespace sleeping
