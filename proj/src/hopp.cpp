#include "sleeping/hopp.hpp"

#include <algorithm>
#include <stdexcept>

namespace sleeping {

PairMatchKey make_match_key(ActionPair x, ActionPair y) {
  return x < y ? PairMatchKey{x, y} : PairMatchKey{y, x};
}

ActionTriple make_triple_key(ActionId i, ActionId j, ActionId k) {
  ActionTriple t{i, j, k};
  std::sort(t.begin(), t.end());
  if (t[0] == t[1] || t[1] == t[2])
    throw std::invalid_argument("make_triple_key: actions must be distinct");
  return t;
}

namespace {

bool pairs_disjoint(ActionPair x, ActionPair y) {
  return x.first != y.first && x.first != y.second && x.second != y.first &&
         x.second != y.second;
}

std::vector<ActionPair> pairs_within(std::span<const ActionId> available) {
  std::vector<ActionPair> out;
  for (size_t i = 0; i < available.size(); ++i)
    for (size_t j = i + 1; j < available.size(); ++j)
      out.push_back({available[i], available[j]});
  return out;
}

bool contains(std::span<const ActionId> sorted, ActionId a) {
  return std::binary_search(sorted.begin(), sorted.end(), a);
}

}  // namespace

Hedge<ActionPair>& PairPairHedgeBank::pair_instance(ActionPair x,
                                                    ActionPair y) {
  if (!pairs_disjoint(x, y))
    throw std::invalid_argument("pair_instance: pairs must be disjoint");
  const PairMatchKey key = make_match_key(x, y);
  auto it = pair_hedges_.find(key);
  if (it == pair_hedges_.end()) {
    it = pair_hedges_
             .emplace(key, Hedge<ActionPair>({key.first, key.second}, eta_, 1.0))
             .first;
  }
  return it->second;
}

Hedge<ActionId>& PairPairHedgeBank::triple_instance(const ActionTriple& s) {
  auto it = triple_hedges_.find(s);
  if (it == triple_hedges_.end()) {
    it = triple_hedges_
             .emplace(s, Hedge<ActionId>({s[0], s[1], s[2]}, eta_, 1.0))
             .first;
  }
  return it->second;
}

const Hedge<ActionPair>* PairPairHedgeBank::find_pair(ActionPair x,
                                                      ActionPair y) const {
  const auto it = pair_hedges_.find(make_match_key(x, y));
  return it == pair_hedges_.end() ? nullptr : &it->second;
}

const Hedge<ActionId>* PairPairHedgeBank::find_triple(
    const ActionTriple& s) const {
  const auto it = triple_hedges_.find(s);
  return it == triple_hedges_.end() ? nullptr : &it->second;
}

std::vector<ActionPair> find_good_pairs(
    std::span<const ActionId> available,
    const std::map<PairMatchKey, ActionPair>& pair_samples) {
  std::vector<ActionPair> good;
  const std::vector<ActionPair> pairs = pairs_within(available);
  for (const ActionPair& x : pairs) {
    bool is_good = true;
    for (const ActionPair& y : pairs) {
      if (!pairs_disjoint(x, y)) continue;
      const auto it = pair_samples.find(make_match_key(x, y));
      if (it == pair_samples.end())
        throw std::logic_error("find_good_pairs: missing matchup sample");
      if (it->second != x) {
        is_good = false;
        break;
      }
    }
    if (is_good) good.push_back(x);
  }
  return good;
}

HoppStepResult hopp_step(PairPairHedgeBank& bank, const RoundTrace& round,
                         RngStream& rng) {
  std::vector<ActionId> zeros;
  for (size_t i = 0; i < round.available.size(); ++i) {
    if (round.losses[i] == 0.0) {
      zeros.push_back(round.available[i]);
    } else if (round.losses[i] != 1.0) {
      throw std::invalid_argument("hopp_step: non-binary loss in round " +
                                  std::to_string(round.t));
    }
  }
  if (zeros.size() != 2)
    throw std::invalid_argument("hopp_step: round " + std::to_string(round.t) +
                                " has " + std::to_string(zeros.size()) +
                                " zero-loss actions, expected exactly 2");
  const ActionPair zero_pair = make_pair_key(zeros[0], zeros[1]);

  HoppStepResult res;
  SelectionOutcome& sel = res.selection;

  // Sample every disjoint matchup within A_t, in key order.
  const std::vector<ActionPair> pairs = pairs_within(round.available);
  for (size_t i = 0; i < pairs.size(); ++i) {
    for (size_t j = i + 1; j < pairs.size(); ++j) {
      if (!pairs_disjoint(pairs[i], pairs[j])) continue;
      const PairMatchKey key = make_match_key(pairs[i], pairs[j]);
      sel.pair_samples[key] = bank.pair_instance(pairs[i], pairs[j]).sample(rng);
    }
  }

  sel.good_pairs = find_good_pairs(round.available, sel.pair_samples);

  if (sel.good_pairs.empty()) {
    sel.branch = HoppBranch::kNoGoodPair;
    sel.chosen = round.available.front();  // lowest id
  } else {
    // Intersection of all good pairs.
    std::vector<ActionId> common{sel.good_pairs[0].first,
                                 sel.good_pairs[0].second};
    for (const ActionPair& g : sel.good_pairs) {
      std::erase_if(common, [&](ActionId a) {
        return a != g.first && a != g.second;
      });
    }
    if (!common.empty()) {
      sel.branch = HoppBranch::kCommonAction;
      sel.chosen = *std::min_element(common.begin(), common.end());
    } else {
      if (sel.good_pairs.size() != 3)
        throw std::logic_error(
            "hopp_step: good pairs without a common action must form a "
            "triangle");
      sel.branch = HoppBranch::kTriangle;
      std::vector<ActionId> members;
      for (const ActionPair& g : sel.good_pairs) {
        members.push_back(g.first);
        members.push_back(g.second);
      }
      std::sort(members.begin(), members.end());
      members.erase(std::unique(members.begin(), members.end()), members.end());
      if (members.size() != 3)
        throw std::logic_error("hopp_step: triangle does not span 3 actions");
      const ActionTriple s = make_triple_key(members[0], members[1], members[2]);
      const ActionId b = bank.triple_instance(s).sample(rng);
      sel.triple_sample = {s, b};
      sel.chosen = b;
    }
  }
  res.chosen = sel.chosen;

  // Certificate and updates. Nonzero pair losses sit exactly on the matchups
  // {X, Z_t} with X within A_t \ Z_t; nonzero triple losses on Z_t + {i}.
  HoppCertificate& cert = res.certificate;
  cert.round = round.t;
  cert.zero_pair = zero_pair;
  std::vector<ActionId> rest;
  for (ActionId a : round.available)
    if (a != zero_pair.first && a != zero_pair.second) rest.push_back(a);

  for (size_t i = 0; i < rest.size(); ++i) {
    for (size_t j = i + 1; j < rest.size(); ++j) {
      const ActionPair x{rest[i], rest[j]};
      cert.charged_pairs.push_back(x);
      Hedge<ActionPair>& h = bank.pair_instance(x, zero_pair);
      const std::vector<ActionPair>& labels = h.labels();
      const double losses[2] = {labels[0] == x ? 1.0 : 0.0,
                                labels[1] == x ? 1.0 : 0.0};
      h.update(losses);
    }
  }
  for (ActionId i : rest) {
    cert.charged_triple_extras.push_back(i);
    const ActionTriple s = make_triple_key(zero_pair.first, zero_pair.second, i);
    Hedge<ActionId>& h = bank.triple_instance(s);
    const std::vector<ActionId>& labels = h.labels();
    double losses[3];
    for (int k = 0; k < 3; ++k)
      losses[k] = labels[static_cast<size_t>(k)] == i ? 1.0 : 0.0;
    h.update(losses);
  }
  return res;
}

HoppComparatorCost hopp_certificate_comparator_cost(
    const HoppCertificate& certificate, const Ranking& sigma) {
  HoppComparatorCost cost;
  const ActionPair z = certificate.zero_pair;
  for (const ActionPair& x : certificate.charged_pairs) {
    const ActionId four[4] = {x.first, x.second, z.first, z.second};
    const ActionId top = sigma_choice(sigma, four);
    if (top == x.first || top == x.second) ++cost.pair_cost;
  }
  for (ActionId extra : certificate.charged_triple_extras) {
    const ActionId three[3] = {z.first, z.second, extra};
    if (sigma_choice(sigma, three) == extra) ++cost.triple_cost;
  }
  return cost;
}

int hopp_certificate_sample_cost(const HoppCertificate& certificate,
                                 const SelectionOutcome& selection) {
  int cost = 0;
  const ActionPair z = certificate.zero_pair;
  for (const ActionPair& x : certificate.charged_pairs) {
    const auto it = selection.pair_samples.find(make_match_key(x, z));
    if (it != selection.pair_samples.end() && it->second == x) ++cost;
  }
  if (selection.triple_sample) {
    const auto& [s, b] = *selection.triple_sample;
    const bool covers_z = contains(s, z.first) && contains(s, z.second);
    if (covers_z && b != z.first && b != z.second) ++cost;
  }
  return cost;
}

}  // namespace sleeping
