#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace sleeping {

using ActionId = int;

// A total order on the N actions. order[k] is the k-th-ranked action
// (position 0 = highest); rank_of is the inverse map.
class Ranking {
 public:
  Ranking() = default;
  explicit Ranking(std::vector<ActionId> order);

  static Ranking identity(int num_actions);

  ActionId at_position(int k) const { return order_[k]; }
  int rank_of(ActionId a) const { return rank_of_[static_cast<size_t>(a)]; }
  const std::vector<ActionId>& order() const { return order_; }
  int size() const { return static_cast<int>(order_.size()); }

  bool operator==(const Ranking&) const = default;

 private:
  std::vector<ActionId> order_;
  std::vector<int> rank_of_;
};

// Highest-ranked element of a nonempty action set.
ActionId sigma_choice(const Ranking& sigma, std::span<const ActionId> actions);

enum class ZeroCountClass { kExactlyOne, kExactlyTwo, kUnconstrained };

std::string to_string(ZeroCountClass c);
ZeroCountClass zero_count_class_from_string(const std::string& s);

// How many zero-loss actions the class requires per round (0 = no constraint).
int required_zero_count(ZeroCountClass c);

// One round of play: the available set and its loss vector.
struct RoundTrace {
  std::int64_t t = 0;                 // 1-based round index
  std::vector<ActionId> available;    // sorted, distinct
  std::vector<double> losses;         // aligned with `available`

  double loss_of(ActionId a) const;
};

struct Environment {
  int num_actions = 0;                // N
  int max_available = 0;              // K = max_t |A_t|
  std::int64_t horizon = 0;           // T
  ZeroCountClass zclass = ZeroCountClass::kUnconstrained;
  bool real_losses = false;           // false: losses must be in {0,1}
  std::vector<RoundTrace> rounds;
};

// All invariant violations found, empty if the environment is valid.
std::vector<std::string> validate_environment(const Environment& env);

// Cumulative loss of always playing sigma's top available action.
double comparator_loss_of(const Ranking& sigma, const Environment& env);

struct RegretReport {
  double learner_loss = 0.0;
  double comparator_loss = 0.0;       // L*
  bool comparator_exact = true;       // false when L* came from sampled rankings
  Ranking best_ranking;
  std::vector<std::pair<double, double>> approx_regret;  // (alpha, loss - alpha*L*)
  std::vector<std::pair<double, double>> per_round_cumulative;  // (learner, comparator)
};

RegretReport make_regret_report(std::span<const double> learner_round_losses,
                                std::span<const double> comparator_round_losses,
                                const Ranking& best_ranking,
                                std::span<const double> alphas,
                                bool comparator_exact = true);

}  // namespace sleeping
