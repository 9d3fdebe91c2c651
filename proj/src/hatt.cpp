#include "sleeping/hatt.hpp"

#include <algorithm>
#include <stdexcept>

namespace sleeping {

Hedge<ActionId>& PairHedgeBank::instance(ActionId i, ActionId j) {
  const ActionPair key = make_pair_key(i, j);
  auto it = hedges_.find(key);
  if (it == hedges_.end()) {
    it = hedges_
             .emplace(key, Hedge<ActionId>({key.first, key.second}, eta_, range_))
             .first;
  }
  return it->second;
}

const Hedge<ActionId>* PairHedgeBank::find(ActionId i, ActionId j) const {
  const auto it = hedges_.find(make_pair_key(i, j));
  return it == hedges_.end() ? nullptr : &it->second;
}

int tournament_depth_bound(int k) {
  int depth = 0;
  int span = 1;
  while (span < k) {
    span *= 2;
    ++depth;
  }
  return 1 + depth;
}

namespace {

struct BracketNode {
  int lo, hi;   // half-open range into the sorted available sequence
  int depth;
  int left = -1, right = -1;
  ActionId winner = -1;
};

// Recursively lay out the bracket: range [lo,hi) splits into ceil/floor halves.
int build_bracket(std::vector<BracketNode>& nodes, int lo, int hi, int depth) {
  const int id = static_cast<int>(nodes.size());
  nodes.push_back({lo, hi, depth});
  if (hi - lo > 1) {
    const int mid = lo + (hi - lo + 1) / 2;
    const int l = build_bracket(nodes, lo, mid, depth + 1);
    const int r = build_bracket(nodes, mid, hi, depth + 1);
    nodes[static_cast<size_t>(id)].left = l;
    nodes[static_cast<size_t>(id)].right = r;
  }
  return id;
}

}  // namespace

TournamentOutcome run_tournament(std::span<const ActionId> available,
                                 PairHedgeBank& bank, RngStream& rng) {
  if (available.empty())
    throw std::invalid_argument("run_tournament: empty available set");

  TournamentOutcome out;
  if (available.size() == 1) {
    out.winner = available[0];
    return out;
  }

  std::vector<BracketNode> nodes;
  nodes.reserve(2 * available.size());
  build_bracket(nodes, 0, static_cast<int>(available.size()), 0);

  for (BracketNode& n : nodes)
    if (n.hi - n.lo == 1) n.winner = available[static_cast<size_t>(n.lo)];

  // Match order: deepest level first, left to right (ascending lo).
  std::vector<int> internal;
  for (int i = 0; i < static_cast<int>(nodes.size()); ++i)
    if (nodes[static_cast<size_t>(i)].left >= 0) internal.push_back(i);
  std::sort(internal.begin(), internal.end(), [&](int a, int b) {
    const BracketNode& na = nodes[static_cast<size_t>(a)];
    const BracketNode& nb = nodes[static_cast<size_t>(b)];
    if (na.depth != nb.depth) return na.depth > nb.depth;
    return na.lo < nb.lo;
  });

  for (int id : internal) {
    BracketNode& n = nodes[static_cast<size_t>(id)];
    const ActionId i = nodes[static_cast<size_t>(n.left)].winner;
    const ActionId j = nodes[static_cast<size_t>(n.right)].winner;
    const Hedge<ActionId>& h = bank.instance(i, j);
    const ActionId w = h.sample(rng);
    const ActionPair key = make_pair_key(i, j);
    out.consulted.push_back(key);
    out.sub_winners[key] = w;
    n.winner = w;
  }
  out.winner = nodes[0].winner;
  return out;
}

HattStepResult hatt_step(PairHedgeBank& bank, const RoundTrace& round,
                         RngStream& rng) {
  ActionId zero_action = -1;
  int zero_count = 0;
  for (size_t i = 0; i < round.available.size(); ++i) {
    if (round.losses[i] == 0.0) {
      zero_action = round.available[i];
      ++zero_count;
    } else if (round.losses[i] != 1.0) {
      throw std::invalid_argument("hatt_step: non-binary loss in round " +
                                  std::to_string(round.t));
    }
  }
  if (zero_count != 1)
    throw std::invalid_argument("hatt_step: round " + std::to_string(round.t) +
                                " has " + std::to_string(zero_count) +
                                " zero-loss actions, expected exactly 1");

  HattStepResult res;
  res.tournament = run_tournament(round.available, bank, rng);
  res.chosen = res.tournament.winner;
  res.certificate.round = round.t;
  res.certificate.zero_action = zero_action;

  for (const ActionPair& pr : res.tournament.consulted) {
    if (pr.first != zero_action && pr.second != zero_action) continue;
    res.certificate.charged_pairs.push_back(pr);
    Hedge<ActionId>& h = bank.instance(pr.first, pr.second);
    // c(z_t) = 0, c(other) = 1, aligned with the instance's {min, max} labels.
    const double c_first = pr.first == zero_action ? 0.0 : 1.0;
    const double losses[2] = {c_first, 1.0 - c_first};
    h.update(losses);
  }
  return res;
}

int certificate_comparator_cost(const PairLossCertificate& certificate,
                                const Ranking& sigma) {
  int cost = 0;
  for (const ActionPair& pr : certificate.charged_pairs) {
    const ActionId other =
        pr.first == certificate.zero_action ? pr.second : pr.first;
    if (sigma.rank_of(other) < sigma.rank_of(certificate.zero_action)) ++cost;
  }
  return cost;
}

int certificate_subwinner_cost(const PairLossCertificate& certificate,
                               const TournamentOutcome& tournament) {
  int cost = 0;
  for (const ActionPair& pr : certificate.charged_pairs) {
    const auto it = tournament.sub_winners.find(pr);
    if (it != tournament.sub_winners.end() &&
        it->second != certificate.zero_action)
      ++cost;
  }
  return cost;
}

}  // namespace sleeping
