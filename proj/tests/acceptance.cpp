// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each check derives its expected values from first principles
// (closed-form bounds, hand-computed constants, independent enumerations)
// rather than from the code under test.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "sleeping/bandit.hpp"
#include "sleeping/config.hpp"
#include "sleeping/envgen.hpp"
#include "sleeping/hatt.hpp"
#include "sleeping/hedge.hpp"
#include "sleeping/hopp.hpp"
#include "sleeping/oracle.hpp"
#include "sleeping/replay.hpp"
#include "sleeping/runner.hpp"

using namespace sleeping;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
  std::printf("criterion %2d: %s  %s\n", criterion, pass ? "PASS" : "FAIL",
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

double binom2(double n) { return n * (n - 1) / 2.0; }

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

MeanSe mean_se(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  double var = 0.0;
  for (double x : xs) var += (x - mean) * (x - mean);
  var /= std::max(1.0, n - 1);
  return {mean, std::sqrt(var / n)};
}

Environment make_env(GeneratorKind kind, int n, int k, std::int64_t t,
                     ZeroCountClass zclass, double eps, std::uint64_t seed) {
  GeneratorSpec spec;
  spec.kind = kind;
  spec.num_actions = n;
  spec.max_available = k;
  spec.horizon = t;
  spec.zclass = zclass;
  spec.epsilon = eps;
  spec.seed = seed;
  RngStream rng(seed, 0, "env");
  return generate(spec, rng);
}

// --- Criteria 1 & 2: deterministic level bound + per-round level certificate ----

void criteria_level() {
  const auto start = std::chrono::steady_clock::now();
  bool bound_ok = true, cert_ok = true;
  std::string witness1, witness2;
  RngStream pick(20260826, 0, "acceptance-level");

  const ZeroCountClass classes[] = {ZeroCountClass::kExactlyOne,
                                    ZeroCountClass::kExactlyTwo,
                                    ZeroCountClass::kUnconstrained};
  const GeneratorKind kinds[] = {GeneratorKind::kPlantedRanking,
                                 GeneratorKind::kUniformRandom,
                                 GeneratorKind::kAdversarialRotation};
  for (int i = 0; i < 500; ++i) {
    const ZeroCountClass zclass = classes[i % 3];
    const GeneratorKind kind = kinds[(i / 3) % 3];
    const int n = 2 + static_cast<int>(pick.uniform_int(7));  // 2..8
    const int zmin = std::max(1, required_zero_count(zclass));
    const int k = std::max(std::min(n, 2), zmin) +
                  static_cast<int>(pick.uniform_int(static_cast<std::uint64_t>(
                      n - std::max(std::min(n, 2), zmin) + 1)));
    const std::int64_t t = 100 + static_cast<std::int64_t>(
                                     pick.uniform_int(1901));  // 100..2000
    const double eps = kind == GeneratorKind::kPlantedRanking
                           ? 0.1 * static_cast<double>(pick.uniform_int(4))
                           : 0.0;
    const Environment env =
        make_env(kind, n, k, t, zclass, eps, 1000 + static_cast<std::uint64_t>(i));

    const double lstar = best_ranking(env).loss;

    // All rankings for N <= 5, else 50 random ones (criterion 2).
    std::vector<Ranking> sigmas;
    if (n <= 5) {
      std::vector<ActionId> perm(static_cast<size_t>(n));
      std::iota(perm.begin(), perm.end(), 0);
      do {
        sigmas.emplace_back(perm);
      } while (std::next_permutation(perm.begin(), perm.end()));
    } else {
      for (int s = 0; s < 50; ++s) sigmas.push_back(random_ranking(n, pick));
    }
    std::vector<double> cum_sigma(sigmas.size(), 0.0);

    LevelState state(n);
    double total = 0.0;
    for (const RoundTrace& r : env.rounds) {
      // The level certificate must hold entering every round.
      for (size_t s = 0; s < sigmas.size() && cert_ok; ++s) {
        if (level_certificate(state, sigmas[s], cum_sigma[s])) {
          cert_ok = false;
          witness2 = "env " + std::to_string(i) + " round " +
                     std::to_string(r.t);
        }
      }
      const ActionId a =
          level_step(state, r.available, [&](ActionId x) { return r.loss_of(x); });
      total += r.loss_of(a);
      for (size_t s = 0; s < sigmas.size(); ++s)
        cum_sigma[s] += r.loss_of(sigma_choice(sigmas[s], r.available));
    }
    for (size_t s = 0; s < sigmas.size() && cert_ok; ++s) {
      if (level_certificate(state, sigmas[s], cum_sigma[s])) {
        cert_ok = false;
        witness2 = "env " + std::to_string(i) + " final state";
      }
    }

    const double bound = n * lstar + binom2(n);
    if (total > bound) {
      bound_ok = false;
      witness1 = "env " + std::to_string(i) + ": loss " +
                 std::to_string(total) + " > " + std::to_string(bound);
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  report(1, bound_ok && secs < 60.0,
         bound_ok ? "level total <= N*L* + N(N-1)/2 on 500 environments (" +
                        std::to_string(secs) + " s)"
                  : witness1);
  report(2, cert_ok,
         cert_ok ? "per-round level certificate held for every ranking"
                  : witness2);
}

// --- Criterion 3 & first half of 4: HATT guarantee + step certificates ------

struct HalfResult {
  bool ok = true;
  std::string witness;
};

HalfResult criteria_hatt() {
  const auto start = std::chrono::steady_clock::now();
  bool bound_ok3 = true, certs_ok = true;
  std::string witness3, witness4;
  RngStream pick(20260826, 0, "acceptance-hatt");
  const double ratio = 1.0 / (1.0 - std::exp(-1.0));  // e/(e-1)

  for (int i = 0; i < 100; ++i) {
    const int n = 3 + static_cast<int>(pick.uniform_int(8));  // 3..10
    const int k = 2 + static_cast<int>(pick.uniform_int(
                          static_cast<std::uint64_t>(std::min(n, 6) - 1)));
    const std::int64_t t = 2000;
    const GeneratorKind kind = i % 2 == 0 ? GeneratorKind::kPlantedRanking
                                          : GeneratorKind::kUniformRandom;
    const double eps = i % 2 == 0 ? 0.05 : 0.0;
    const Environment env = make_env(kind, n, k, t, ZeroCountClass::kExactlyOne,
                                     eps, 2000 + static_cast<std::uint64_t>(i));
    const double lstar = best_ranking(env, 10).loss;

    std::vector<Ranking> sigmas{Ranking::identity(n)};
    for (int s = 0; s < 5; ++s) sigmas.push_back(random_ranking(n, pick));

    std::vector<double> totals;
    for (int rep = 0; rep < 50; ++rep) {
      PairHedgeBank bank(1.0, 1.0);
      RngStream rng(static_cast<std::uint64_t>(rep), 0, "acc-hatt-run");
      double total = 0.0;
      for (const RoundTrace& r : env.rounds) {
        const HattStepResult res = hatt_step(bank, r, rng);
        const double loss = r.loss_of(res.chosen);
        total += loss;
        if (certs_ok) {
          // Round loss is covered by certificate losses at the sub-winners.
          if (loss > certificate_subwinner_cost(res.certificate,
                                                res.tournament)) {
            certs_ok = false;
            witness4 = "sub-winner cover failed, env " + std::to_string(i);
          }
          // Comparator certificate cost <= (1+ceil(log2 K)) * sigma's loss.
          const int cap = tournament_depth_bound(
              static_cast<int>(r.available.size()));
          for (const Ranking& sigma : sigmas) {
            const double sl = r.loss_of(sigma_choice(sigma, r.available));
            if (certificate_comparator_cost(res.certificate, sigma) >
                cap * sl) {
              certs_ok = false;
              witness4 = "comparator cap failed, env " + std::to_string(i);
            }
          }
        }
      }
      totals.push_back(total);
    }
    const MeanSe ms = mean_se(totals);
    const int depth = 1 + static_cast<int>(std::ceil(std::log2(k)));
    const double bound =
        ratio * depth * lstar + binom2(n) * std::log(2.0) * ratio;
    if (ms.mean > bound + 3 * ms.se) {
      bound_ok3 = false;
      witness3 = "env " + std::to_string(i) + ": mean " +
                 std::to_string(ms.mean) + " > " + std::to_string(bound) +
                 " + 3se";
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  report(3, bound_ok3 && secs < 120.0,
         bound_ok3 ? "mean loss within the log-K guarantee on 100x50 runs (" +
                          std::to_string(secs) + " s)"
                    : witness3);
  // Criterion 4 is reported after the HOPP half runs.
  return {certs_ok, witness4};
}

// --- Second half of criterion 4: HOPP certificates + guarantee ---------------------

void criteria_hopp(const HalfResult& hatt_half) {
  bool ok = hatt_half.ok;
  std::string witness = hatt_half.witness;
  RngStream pick(20260826, 0, "acceptance-hopp");
  const double ratio = 1.0 / (1.0 - std::exp(-1.0));

  for (int i = 0; i < 100 && ok; ++i) {
    const int n = 4 + static_cast<int>(pick.uniform_int(7));  // 4..10
    const int k = 3 + static_cast<int>(pick.uniform_int(
                          static_cast<std::uint64_t>(std::min(n, 6) - 2)));
    const std::int64_t t = 1000;
    const Environment env =
        make_env(GeneratorKind::kUniformRandom, n, k, t,
                 ZeroCountClass::kExactlyTwo, 0.0,
                 3000 + static_cast<std::uint64_t>(i));
    const double lstar = best_ranking(env, 10).loss;

    std::vector<Ranking> sigmas{Ranking::identity(n)};
    for (int s = 0; s < 5; ++s) sigmas.push_back(random_ranking(n, pick));

    std::vector<double> totals;
    for (int rep = 0; rep < 10; ++rep) {
      PairPairHedgeBank bank(1.0);
      RngStream rng(static_cast<std::uint64_t>(rep), 0, "acc-hopp-run");
      double total = 0.0;
      for (const RoundTrace& r : env.rounds) {
        const HoppStepResult res = hopp_step(bank, r, rng);
        const double loss = r.loss_of(res.chosen);
        total += loss;

        // Good pairs either share a common action or form a triangle.
        if (res.selection.good_pairs.size() > 1 &&
            res.selection.branch == HoppBranch::kNoGoodPair) {
          ok = false;
          witness = "branch classification failed";
        }
        // Round loss covered by certificate losses at the samples.
        if (loss > hopp_certificate_sample_cost(res.certificate,
                                                res.selection)) {
          ok = false;
          witness = "sample cover failed, env " + std::to_string(i);
        }
        // Comparator certificate costs within the K-dependent caps.
        const double kk = static_cast<double>(r.available.size());
        for (const Ranking& sigma : sigmas) {
          const double sl = r.loss_of(sigma_choice(sigma, r.available));
          const HoppComparatorCost cost =
              hopp_certificate_comparator_cost(res.certificate, sigma);
          if (cost.pair_cost > binom2(kk - 2) * sl ||
              cost.triple_cost > (kk - 2) * sl) {
            ok = false;
            witness = "comparator caps failed, env " + std::to_string(i);
          }
        }
        if (!ok) break;
      }
      totals.push_back(total);
    }
    const MeanSe ms = mean_se(totals);
    const double nn = n;
    const double additive =
        (binom2(nn) + 3.0 * nn * (nn - 1) * (nn - 2) * (nn - 3) / 24.0) *
            std::log(2.0) * ratio +
        nn * (nn - 1) * (nn - 2) / 6.0 * std::log(3.0) * ratio;
    const double bound =
        ratio * (binom2(k - 2) + (k - 2)) * lstar + additive;
    if (ok && ms.mean > bound + 3 * ms.se) {
      ok = false;
      witness = "guarantee bound failed, env " + std::to_string(i) + ": mean " +
                std::to_string(ms.mean) + " > " + std::to_string(bound);
    }
  }
  report(4, ok,
         ok ? "step certificates and the K^2 guarantee held for HATT and HOPP"
            : witness);
}

// --- Criterion 5: exponential-weights guarantee for general R --------------

void criterion_hedge_bound() {
  const auto start = std::chrono::steady_clock::now();
  bool ok = true;
  std::string witness;
  for (int n : {2, 3}) {
    for (double r : {1.0, 4.0}) {
      for (double eta : {0.5, 1.0}) {
        std::vector<double> regimes;  // hedge loss minus the bound, per repeat
        std::vector<double> gaps;
        for (int rep = 0; rep < 200; ++rep) {
          RngStream rng(static_cast<std::uint64_t>(rep), 0, "acc-hedge");
          std::vector<int> labels(static_cast<size_t>(n));
          std::iota(labels.begin(), labels.end(), 0);
          Hedge<int> h(labels, eta, r);
          double hedge_loss = 0.0;
          std::vector<double> cum(static_cast<size_t>(n), 0.0);
          std::vector<double> losses(static_cast<size_t>(n));
          for (int t = 0; t < 2000; ++t) {
            for (int a = 0; a < n; ++a)
              losses[static_cast<size_t>(a)] = r * rng.uniform();
            hedge_loss += h.expected_loss(losses);
            h.update(losses);
            for (int a = 0; a < n; ++a)
              cum[static_cast<size_t>(a)] += losses[static_cast<size_t>(a)];
          }
          const double best = *std::min_element(cum.begin(), cum.end());
          gaps.push_back(hedge_loss -
                         hedge_bound(eta, r, static_cast<size_t>(n), best));
        }
        const MeanSe ms = mean_se(gaps);
        if (ms.mean > 3 * ms.se) {
          ok = false;
          witness = "n=" + std::to_string(n) + " R=" + std::to_string(r) +
                    " eta=" + std::to_string(eta);
        }
        (void)regimes;
      }
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  report(5, ok && secs < 30.0,
         ok ? "empirical hedge loss within the closed-form guarantee (" +
                  std::to_string(secs) + " s)"
            : witness);
}

// --- Criterion 6: bandit guarantee with default parameters -------------------

void criterion_bandit() {
  const auto start = std::chrono::steady_clock::now();
  bool ok = true;
  std::string witness;
  RngStream pick(20260826, 0, "acceptance-bandit");

  for (int i = 0; i < 50 && ok; ++i) {
    const int n = 3 + static_cast<int>(pick.uniform_int(6));  // 3..8
    const int k = 2 + static_cast<int>(pick.uniform_int(
                          static_cast<std::uint64_t>(std::min(n, 5) - 1)));
    const std::int64_t t = 5000;
    const GeneratorKind kind = i % 2 == 0 ? GeneratorKind::kPlantedRanking
                                          : GeneratorKind::kUniformRandom;
    const Environment env =
        make_env(kind, n, k, t, ZeroCountClass::kExactlyOne,
                 i % 2 == 0 ? 0.02 : 0.0, 4000 + static_cast<std::uint64_t>(i));
    const double lstar = best_ranking(env).loss;

    const double mu = bandit_hatt_default_mu(n, k, t);
    const double eta = mu / k;
    std::vector<double> totals;
    for (int rep = 0; rep < 100; ++rep) {
      BanditHattState state(k, mu, eta);
      RngStream rng(static_cast<std::uint64_t>(rep), 0, "acc-bandit-run");
      double total = 0.0;
      for (const RoundTrace& r : env.rounds) {
        const BanditHattStepResult res = bandit_hatt_step(
            state, r.available, [&](ActionId a) { return r.loss_of(a); }, rng);
        total += res.observed_loss;
        if (res.updated &&
            res.charge_value !=
                static_cast<double>(r.available.size()) / mu) {
          ok = false;
          witness = "charge value mismatch, env " + std::to_string(i);
        }
      }
      totals.push_back(total);
    }
    const MeanSe ms = mean_se(totals);
    // K*eta/mu = 1 with the defaults.
    const double denom = 1.0 - std::exp(-1.0);
    const int depth = 1 + static_cast<int>(std::ceil(std::log2(k)));
    const double bound = depth / denom * lstar +
                         binom2(n) * std::log(2.0) * (k / mu) / denom + mu * t;
    if (ok && ms.mean > bound + 3 * ms.se) {
      ok = false;
      witness = "env " + std::to_string(i) + ": mean " +
                std::to_string(ms.mean) + " > " + std::to_string(bound) +
                " + 3se";
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  report(6, ok && secs < 300.0,
         ok ? "bandit mean loss within its guarantee on 50x100 runs (" +
                  std::to_string(secs) + " s)"
            : witness);
}

// --- Criterion 7: inverse-propensity estimator unbiasedness ----------------

void criterion_unbiased() {
  bool ok = true;
  std::string witness;
  for (int k : {3, 5}) {
    std::vector<ActionId> avail;
    for (ActionId a = 0; a < k; ++a) avail.push_back(a);
    const ActionId zero = 1;
    const double mu = 0.4;
    BanditHattState proto(k, mu, 0.1);
    // Warm the bank so that pair weights are non-trivial.
    {
      RngStream warm(77, 0, "acc-unbiased-warm");
      for (int t = 0; t < 30; ++t) {
        bandit_hatt_step(
            proto, avail,
            [&](ActionId a) { return a == (t % k) ? 0.0 : 1.0; }, warm);
      }
    }

    const int samples = 100000;
    // Monte Carlo over the full step (tournament, rho, exploration draw):
    // mean charge on pair {0, zero}, against the full-information certificate
    // frequency for the same pair under the same tournament distribution.
    const ActionPair target = make_pair_key(0, zero);
    double bandit_sum = 0.0, bandit_sq = 0.0;
    double full_sum = 0.0, full_sq = 0.0;
    RngStream rng(78, 0, "acc-unbiased");
    for (int s = 0; s < samples; ++s) {
      BanditHattState state = proto;  // identical hedge weights each resample
      const BanditHattStepResult res = bandit_hatt_step(
          state, avail, [&](ActionId a) { return a == zero ? 0.0 : 1.0; },
          rng);
      double charge = 0.0;
      if (res.updated) {
        for (const ActionPair& p : res.charged_pairs)
          if (p == target) charge = res.charge_value;
      }
      bandit_sum += charge;
      bandit_sq += charge * charge;

      // Full-information certificate for the same pair: 1 iff consulted.
      // Drawn from a fresh copy so the bandit update above cannot leak in.
      BanditHattState fresh = proto;
      TournamentOutcome tour = run_tournament(avail, fresh.bank(), rng);
      const double cert =
          std::find(tour.consulted.begin(), tour.consulted.end(), target) !=
                  tour.consulted.end()
              ? 1.0
              : 0.0;
      full_sum += cert;
      full_sq += cert * cert;
    }
    const double bm = bandit_sum / samples;
    const double fm = full_sum / samples;
    const double bv = (bandit_sq / samples - bm * bm) / samples;
    const double fv = (full_sq / samples - fm * fm) / samples;
    const double se = std::sqrt(bv + fv);
    if (std::abs(bm - fm) > 3 * se) {
      ok = false;
      witness = "K=" + std::to_string(k) + ": bandit mean " +
                std::to_string(bm) + " vs certificate mean " +
                std::to_string(fm) + " (3se=" + std::to_string(3 * se) + ")";
    }
  }
  report(7, ok,
         ok ? "inverse-propensity charge matches the certificate mean"
            : witness);
}

// --- Criterion 8: loss-vector randomization ---------------------------------

void criterion_z01() {
  bool ok = true;
  std::string witness;

  // Exact property: every output has exactly one zero (10^6 calls).
  {
    RngStream rng(81, 0, "acc-z01-exact");
    const RoundTrace e0{1, {0, 1, 2}, {0.0, 1.0, 1.0}};
    const RoundTrace e1{2, {0, 1, 2}, {0.0, 0.0, 1.0}};
    for (int i = 0; i < 500000 && ok; ++i) {
      for (const RoundTrace* r : {&e0, &e1}) {
        const RoundTrace out = z01_to_z0(*r, 3, rng);
        int zeros = 0;
        for (double l : out.losses) zeros += l == 0.0;
        if (zeros != 1) {
          ok = false;
          witness = "zero count " + std::to_string(zeros);
        }
      }
    }
  }

  // Conditional means for K in {3,5,8}, separately for l' = 0 and l' = 1.
  for (int k : {3, 5, 8}) {
    if (!ok) break;
    std::vector<ActionId> avail;
    for (ActionId a = 0; a < k; ++a) avail.push_back(a);
    RoundTrace e0{1, avail, std::vector<double>(avail.size(), 1.0)};
    e0.losses[0] = 0.0;
    RoundTrace e1{2, avail, std::vector<double>(avail.size(), 0.0)};
    e1.losses[1] = 1.0;
    const int n = 100000;
    RngStream rng(82, 0, "acc-z01-mean");
    double e0_z = 0, e0_o = 0, e1_z = 0, e1_o = 0;
    for (int i = 0; i < n; ++i) {
      const RoundTrace a = z01_to_z0(e0, k, rng);
      e0_z += a.loss_of(0);  // original loss 0
      e0_o += a.loss_of(1);  // original loss 1
      const RoundTrace b = z01_to_z0(e1, k, rng);
      e1_z += b.loss_of(0);  // original loss 0
      e1_o += b.loss_of(1);  // original loss 1
    }
    const double K = k;
    struct Case {
      double mean, expect;
    } cases[] = {
        {e0_z / n, (K - 2) / K},
        {e0_o / n, (K - 2) / K + 1 / (K - 1)},
        {e1_z / n, (K - 2) / (K - 1)},
        {e1_o / n, (K - 2) / (K - 1) + 1 / (K - 1)},
    };
    for (const Case& c : cases) {
      const double se =
          std::sqrt(std::max(c.expect * (1 - c.expect), 1e-12) / n);
      if (std::abs(c.mean - c.expect) > 3 * se + 1e-9) {
        ok = false;
        witness = "K=" + std::to_string(k) + ": mean " +
                  std::to_string(c.mean) + " vs " + std::to_string(c.expect);
      }
    }
  }
  report(8, ok,
         ok ? "randomized reduction keeps one zero and the conditional means"
            : witness);
}

// --- Criterion 9: oracle soundness ------------------------------------------

void criterion_oracle() {
  bool ok = true;
  std::string witness;
  RngStream pick(91, 0, "acc-oracle");
  for (int n = 2; n <= 4 && ok; ++n) {
    for (int rep = 0; rep < 20 && ok; ++rep) {
      const Environment env =
          make_env(GeneratorKind::kUniformRandom, n, n, 60,
                   ZeroCountClass::kUnconstrained, 0.0,
                   5000 + static_cast<std::uint64_t>(n * 100 + rep));
      const OracleResult a = best_ranking(env);
      const OracleResult b = best_ranking_by_enumeration(env);
      if (a.loss != b.loss || !(a.ranking == b.ranking)) {
        ok = false;
        witness = "dp/enumeration disagree at N=" + std::to_string(n);
      }
    }
  }
  if (ok) {
    const Environment env =
        make_env(GeneratorKind::kUniformRandom, 6, 6, 300,
                 ZeroCountClass::kUnconstrained, 0.0, 5999);
    const double lstar = best_ranking(env).loss;
    for (int i = 0; i < 1000; ++i) {
      const Ranking sigma = random_ranking(6, pick);
      if (comparator_loss_of(sigma, env) < lstar) {
        ok = false;
        witness = "a random ranking beat the reported optimum";
        break;
      }
    }
  }
  report(9, ok,
         ok ? "independent enumeration and 1000 random rankings agree"
            : witness);
}

// --- Criterion 10: randomized rounding for real losses ----------------------

void criterion_rounding() {
  bool ok = true;
  std::string witness;

  // Rounding is mean-preserving per entry.
  {
    RngStream rng(101, 0, "acc-round-mean");
    const RoundTrace round{1, {0, 1}, {0.37, 0.9}};
    double s0 = 0, s1 = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
      const RoundTrace out = round_losses(round, rng);
      s0 += out.losses[0];
      s1 += out.losses[1];
    }
    if (std::abs(s0 / n - 0.37) > 0.01 || std::abs(s1 / n - 0.9) > 0.01) {
      ok = false;
      witness = "per-entry rounding mean off";
    }
  }

  // Level on the rounded environment obeys its bound per realization; compare
  // mean loss against N * mean(rounded L*) + N(N-1)/2.
  if (ok) {
    RngStream pick(102, 0, "acc-round-env");
    for (int i = 0; i < 10 && ok; ++i) {
      const int n = 3 + static_cast<int>(pick.uniform_int(4));  // 3..6
      const Environment env =
          make_env(GeneratorKind::kRealValued, n, n, 2000,
                   ZeroCountClass::kUnconstrained, 0.0,
                   6000 + static_cast<std::uint64_t>(i));
      std::vector<double> losses, lstars;
      bool exact_ok = true;
      for (int rep = 0; rep < 10; ++rep) {
        RngStream round_rng(static_cast<std::uint64_t>(rep), 0, "acc-round");
        Environment rounded = env;
        rounded.real_losses = false;
        rounded.zclass = ZeroCountClass::kUnconstrained;
        for (RoundTrace& r : rounded.rounds) r = round_losses(r, round_rng);
        LevelState state(n);
        double total = 0.0;
        for (const RoundTrace& r : rounded.rounds) {
          const ActionId a = level_step(state, r.available, [&](ActionId x) {
            return r.loss_of(x);
          });
          total += r.loss_of(a);
        }
        const double lstar = best_ranking(rounded).loss;
        // The deterministic guarantee also holds realization by realization.
        if (total > n * lstar + binom2(n)) exact_ok = false;
        losses.push_back(total);
        lstars.push_back(lstar);
      }
      const MeanSe ml = mean_se(losses);
      const MeanSe mo = mean_se(lstars);
      if (!exact_ok ||
          ml.mean > n * mo.mean + binom2(n) + 3 * (ml.se + n * mo.se)) {
        ok = false;
        witness = "rounded level bound failed on env " + std::to_string(i);
      }
    }
  }
  report(10, ok,
         ok ? "rounding is mean-preserving and keeps the level guarantee"
            : witness);
}

// --- Criterion 11: byte-identical reruns ------------------------------------

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void criterion_reproducible() {
  bool ok = true;
  std::string witness;
  const char* configs[] = {
      "algorithm = hatt\nenv.kind = uniform-random\nenv.N = 6\nenv.K = 4\n"
      "env.T = 400\nenv.zero_count_class = exactly-one\ntrials = 8\n"
      "seed = 31\nalphas = 1.0, 2.0\n",
      "algorithm = level\nenv.kind = real-valued\nenv.N = 5\nenv.K = 5\n"
      "env.T = 300\nenv.zero_count_class = unconstrained\ntrials = 8\n"
      "seed = 32\n",
      "algorithm = bandit-hatt\nenv.kind = planted-ranking\nenv.N = 5\n"
      "env.K = 4\nenv.T = 500\nenv.zero_count_class = exactly-one\n"
      "trials = 8\nseed = 33\n",
  };
  const auto base = std::filesystem::temp_directory_path() / "acc_repro";
  for (int c = 0; c < 3 && ok; ++c) {
    ExperimentConfig cfg = parse_config(configs[c]);
    const auto d1 = base / ("a" + std::to_string(c));
    const auto d2 = base / ("b" + std::to_string(c));
    std::filesystem::remove_all(d1);
    std::filesystem::remove_all(d2);
    cfg.out_dir = d1.string();
    run_experiment(cfg);
    cfg.out_dir = d2.string();
    run_experiment(cfg);
    for (const char* name : {"summary.csv", "rounds.csv", "report.jsonl"}) {
      const std::string x = slurp(d1 / name);
      if (x.empty() || x != slurp(d2 / name)) {
        ok = false;
        witness = std::string(name) + " differed for config " +
                  std::to_string(c);
      }
    }
  }
  report(11, ok,
         ok ? "reruns byte-identical across 3 configs with 8 parallel trials"
            : witness);
}

}  // namespace

int main() {
  criteria_level();                // criteria 1, 2
  const HalfResult hatt_half = criteria_hatt();  // criterion 3 + half of 4
  criteria_hopp(hatt_half);        // criterion 4 line
  criterion_hedge_bound(); // criterion 5
  criterion_bandit();      // criterion 6
  criterion_unbiased();    // criterion 7
  criterion_z01();         // criterion 8
  criterion_oracle();      // criterion 9
  criterion_rounding();    // criterion 10
  criterion_reproducible();// criterion 11
  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all 11 criteria passed\n");
  return 0;
}
