#include "sleeping/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sleeping {

Ranking::Ranking(std::vector<ActionId> order) : order_(std::move(order)) {
  const int n = static_cast<int>(order_.size());
  rank_of_.assign(static_cast<size_t>(n), -1);
  for (int k = 0; k < n; ++k) {
    const ActionId a = order_[static_cast<size_t>(k)];
    if (a < 0 || a >= n || rank_of_[static_cast<size_t>(a)] != -1)
      throw std::invalid_argument("Ranking: order is not a permutation of [0,N)");
    rank_of_[static_cast<size_t>(a)] = k;
  }
}

Ranking Ranking::identity(int num_actions) {
  std::vector<ActionId> order(static_cast<size_t>(num_actions));
  for (int i = 0; i < num_actions; ++i) order[static_cast<size_t>(i)] = i;
  return Ranking(std::move(order));
}

ActionId sigma_choice(const Ranking& sigma, std::span<const ActionId> actions) {
  if (actions.empty())
    throw std::invalid_argument("sigma_choice: empty action set");
  ActionId best = actions[0];
  int best_rank = sigma.rank_of(best);
  for (ActionId a : actions.subspan(1)) {
    const int r = sigma.rank_of(a);
    if (r < best_rank) {
      best = a;
      best_rank = r;
    }
  }
  return best;
}

std::string to_string(ZeroCountClass c) {
  switch (c) {
    case ZeroCountClass::kExactlyOne: return "exactly-one";
    case ZeroCountClass::kExactlyTwo: return "exactly-two";
    case ZeroCountClass::kUnconstrained: return "unconstrained";
  }
  throw std::logic_error("unknown ZeroCountClass");
}

ZeroCountClass zero_count_class_from_string(const std::string& s) {
  if (s == "exactly-one") return ZeroCountClass::kExactlyOne;
  if (s == "exactly-two") return ZeroCountClass::kExactlyTwo;
  if (s == "unconstrained") return ZeroCountClass::kUnconstrained;
  throw std::invalid_argument("unknown zero_count_class: " + s);
}

int required_zero_count(ZeroCountClass c) {
  switch (c) {
    case ZeroCountClass::kExactlyOne: return 1;
    case ZeroCountClass::kExactlyTwo: return 2;
    case ZeroCountClass::kUnconstrained: return 0;
  }
  throw std::logic_error("unknown ZeroCountClass");
}

double RoundTrace::loss_of(ActionId a) const {
  const auto it = std::lower_bound(available.begin(), available.end(), a);
  if (it == available.end() || *it != a)
    throw std::invalid_argument("RoundTrace::loss_of: action not available");
  return losses[static_cast<size_t>(it - available.begin())];
}

std::vector<std::string> validate_environment(const Environment& env) {
  std::vector<std::string> issues;
  auto complain = [&](std::int64_t t, const std::string& what) {
    issues.push_back("round " + std::to_string(t) + ": " + what);
  };

  if (env.num_actions <= 0) issues.push_back("N must be positive");
  if (static_cast<std::int64_t>(env.rounds.size()) != env.horizon)
    issues.push_back("round count " + std::to_string(env.rounds.size()) +
                     " does not match T=" + std::to_string(env.horizon));

  const int want_zeros = required_zero_count(env.zclass);
  for (size_t idx = 0; idx < env.rounds.size(); ++idx) {
    const RoundTrace& r = env.rounds[idx];
    const std::int64_t t = r.t;
    if (r.t != static_cast<std::int64_t>(idx) + 1)
      complain(t, "round index out of sequence (expected " +
                      std::to_string(idx + 1) + ")");
    if (r.available.empty()) {
      complain(t, "empty available set");
      continue;
    }
    if (static_cast<int>(r.available.size()) > env.max_available)
      complain(t, "available set larger than K");
    if (!std::is_sorted(r.available.begin(), r.available.end()))
      complain(t, "available set not sorted");
    if (std::adjacent_find(r.available.begin(), r.available.end()) !=
        r.available.end())
      complain(t, "duplicate action in available set");
    if (r.available.front() < 0 || r.available.back() >= env.num_actions)
      complain(t, "action id outside [0,N)");
    if (r.losses.size() != r.available.size()) {
      complain(t, "loss vector not aligned with available set");
      continue;
    }
    int zeros = 0;
    for (double l : r.losses) {
      if (env.real_losses) {
        if (!(l >= 0.0 && l <= 1.0)) complain(t, "loss outside [0,1]");
      } else if (l != 0.0 && l != 1.0) {
        complain(t, "non-binary loss in binary mode");
      }
      if (l == 0.0) ++zeros;
    }
    if (!env.real_losses && want_zeros > 0 && zeros != want_zeros)
      complain(t, "zero count " + std::to_string(zeros) + " violates class " +
                      to_string(env.zclass));
  }
  return issues;
}

double comparator_loss_of(const Ranking& sigma, const Environment& env) {
  double total = 0.0;
  for (const RoundTrace& r : env.rounds)
    total += r.loss_of(sigma_choice(sigma, r.available));
  return total;
}

RegretReport make_regret_report(std::span<const double> learner_round_losses,
                                std::span<const double> comparator_round_losses,
                                const Ranking& best_ranking,
                                std::span<const double> alphas,
                                bool comparator_exact) {
  if (learner_round_losses.size() != comparator_round_losses.size())
    throw std::invalid_argument(
        "make_regret_report: learner/comparator length mismatch");
  RegretReport rep;
  rep.best_ranking = best_ranking;
  rep.comparator_exact = comparator_exact;
  rep.per_round_cumulative.reserve(learner_round_losses.size());
  double cum_l = 0.0, cum_c = 0.0;
  for (size_t i = 0; i < learner_round_losses.size(); ++i) {
    cum_l += learner_round_losses[i];
    cum_c += comparator_round_losses[i];
    rep.per_round_cumulative.emplace_back(cum_l, cum_c);
  }
  rep.learner_loss = cum_l;
  rep.comparator_loss = cum_c;
  rep.approx_regret.reserve(alphas.size());
  for (double a : alphas)
    rep.approx_regret.emplace_back(a, cum_l - a * cum_c);
  return rep;
}

}  // namespace sleeping
