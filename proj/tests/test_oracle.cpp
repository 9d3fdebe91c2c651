#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "sleeping/envgen.hpp"
#include "sleeping/oracle.hpp"

using namespace sleeping;

namespace {

Environment hand_env() {
  // Best ranking must put 2 first (wins both rounds it appears in), then 0.
  Environment env;
  env.num_actions = 3;
  env.max_available = 2;
  env.horizon = 3;
  env.zclass = ZeroCountClass::kExactlyOne;
  env.rounds = {
      {1, {0, 1}, {0.0, 1.0}},
      {2, {1, 2}, {1.0, 0.0}},
      {3, {0, 2}, {1.0, 0.0}},
  };
  return env;
}

Environment random_env(int n, int t, RngStream& rng) {
  Environment env;
  env.num_actions = n;
  env.max_available = n;
  env.horizon = t;
  env.zclass = ZeroCountClass::kUnconstrained;
  for (int i = 1; i <= t; ++i) {
    RoundTrace r;
    r.t = i;
    for (ActionId a = 0; a < n; ++a)
      if (rng.bernoulli(0.7)) r.available.push_back(a);
    if (r.available.empty()) r.available.push_back(static_cast<ActionId>(
        rng.uniform_int(static_cast<std::uint64_t>(n))));
    for (size_t j = 0; j < r.available.size(); ++j)
      r.losses.push_back(rng.bernoulli(0.5) ? 1.0 : 0.0);
    env.rounds.push_back(std::move(r));
  }
  return env;
}

}  // namespace

TEST_CASE("hand-checked optimum") {
  OracleResult best = best_ranking(hand_env());
  CHECK(best.loss == 0.0);
  CHECK(best.ranking.rank_of(2) == 0);
  CHECK(comparator_loss_of(best.ranking, hand_env()) == best.loss);
}

TEST_CASE("ties resolve to the lexicographically first ranking") {
  // All losses zero: every ranking is optimal, so (0,1,2) must be returned.
  Environment env = hand_env();
  for (RoundTrace& r : env.rounds)
    for (double& l : r.losses) l = 0.0;
  env.zclass = ZeroCountClass::kUnconstrained;
  OracleResult best = best_ranking(env);
  CHECK(best.ranking == Ranking::identity(3));
  CHECK(best.loss == 0.0);

  OracleResult enumerated = best_ranking_by_enumeration(env);
  CHECK(enumerated.ranking == best.ranking);
}

TEST_CASE("dynamic program agrees with plain enumeration") {
  RngStream rng(21, 0, "t");
  for (int n = 2; n <= 4; ++n) {
    for (int rep = 0; rep < 25; ++rep) {
      const Environment env = random_env(n, 40, rng);
      OracleResult a = best_ranking(env);
      OracleResult b = best_ranking_by_enumeration(env);
      CHECK(a.loss == b.loss);
      CHECK(a.ranking == b.ranking);
    }
  }
}

TEST_CASE("no random ranking beats the optimum") {
  RngStream rng(22, 0, "t");
  const Environment env = random_env(6, 200, rng);
  OracleResult best = best_ranking(env);
  for (int i = 0; i < 1000; ++i) {
    const Ranking sigma = random_ranking(6, rng);
    CHECK(comparator_loss_of(sigma, env) >= best.loss);
  }
}

TEST_CASE("enumeration cap raises a capability error") {
  RngStream rng(23, 0, "t");
  const Environment env = random_env(9, 5, rng);
  CHECK_THROWS_AS(best_ranking(env), CapabilityError);
  CHECK_NOTHROW(best_ranking(env, 9));
}

TEST_CASE("sampled oracle upper-bounds and sometimes matches the optimum") {
  RngStream rng(24, 0, "t");
  const Environment env = random_env(4, 100, rng);
  const OracleResult exact = best_ranking(env);
  RngStream sample_rng(25, 0, "t");
  const OracleResult sampled = sample_ranking_loss(env, 2000, sample_rng);
  CHECK(sampled.loss >= exact.loss);
  // 2000 samples over 24 rankings: the optimum is hit almost surely.
  CHECK(sampled.loss == exact.loss);
}

TEST_CASE("random_ranking is a permutation and roughly uniform") {
  RngStream rng(26, 0, "t");
  int first_is_zero = 0;
  const int n = 30000;
  for (int i = 0; i < n; ++i) {
    const Ranking r = random_ranking(3, rng);
    CHECK(r.size() == 3);
    first_is_zero += r.at_position(0) == 0;
  }
  CHECK(std::abs(first_is_zero / double(n) - 1.0 / 3) < 0.01);
}

TEST_CASE("per-subset baseline reports a valid regret line") {
  RngStream env_rng(27, 0, "t");
  const Environment env = random_env(4, 300, env_rng);
  RngStream rng(28, 0, "t");
  const std::vector<double> alphas{1.0};
  const RegretReport rep = per_subset_baseline(env, rng, alphas);
  CHECK(rep.learner_loss >= 0.0);
  CHECK(rep.learner_loss <= static_cast<double>(env.rounds.size()));
  CHECK(rep.comparator_loss == best_ranking(env).loss);
}

TEST_CASE("ranking hedge enforces its factorial cap") {
  RngStream env_rng(29, 0, "t");
  const Environment small = random_env(4, 100, env_rng);
  RngStream rng(30, 0, "t");
  const std::vector<double> alphas{1.0};
  CHECK_NOTHROW(ranking_hedge_baseline(small, rng, alphas));
  const Environment big = random_env(8, 5, env_rng);
  RngStream rng2(31, 0, "t");
  CHECK_THROWS_AS(ranking_hedge_baseline(big, rng2, alphas), CapabilityError);
}
