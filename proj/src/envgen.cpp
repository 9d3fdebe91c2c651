#include "sleeping/envgen.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "sleeping/oracle.hpp"

namespace sleeping {

GeneratorKind generator_kind_from_string(const std::string& s) {
  if (s == "planted-ranking") return GeneratorKind::kPlantedRanking;
  if (s == "uniform-random") return GeneratorKind::kUniformRandom;
  if (s == "adversarial-rotation") return GeneratorKind::kAdversarialRotation;
  if (s == "real-valued") return GeneratorKind::kRealValued;
  throw std::invalid_argument("unknown generator kind: " + s);
}

std::string to_string(GeneratorKind k) {
  switch (k) {
    case GeneratorKind::kPlantedRanking: return "planted-ranking";
    case GeneratorKind::kUniformRandom: return "uniform-random";
    case GeneratorKind::kAdversarialRotation: return "adversarial-rotation";
    case GeneratorKind::kRealValued: return "real-valued";
  }
  throw std::logic_error("unknown GeneratorKind");
}

namespace {

// Uniform random size-k subset of [0, n), sorted.
std::vector<ActionId> draw_subset(int n, int k, RngStream& rng) {
  std::vector<ActionId> pool(static_cast<size_t>(n));
  std::iota(pool.begin(), pool.end(), 0);
  for (int i = 0; i < k; ++i) {
    const size_t j = i + rng.uniform_int(static_cast<std::uint64_t>(n - i));
    std::swap(pool[static_cast<size_t>(i)], pool[j]);
  }
  pool.resize(static_cast<size_t>(k));
  std::sort(pool.begin(), pool.end());
  return pool;
}

// Set zeros at `zero_positions` (indices into available), ones elsewhere.
void assign_binary(RoundTrace& r, std::span<const size_t> zero_positions) {
  r.losses.assign(r.available.size(), 1.0);
  for (size_t p : zero_positions) r.losses[p] = 0.0;
}

// k distinct uniform positions in [0, n).
std::vector<size_t> draw_positions(size_t n, int k, RngStream& rng) {
  std::vector<size_t> pool(n);
  std::iota(pool.begin(), pool.end(), size_t{0});
  for (int i = 0; i < k; ++i) {
    const size_t j = i + rng.uniform_int(static_cast<std::uint64_t>(n - i));
    std::swap(pool[static_cast<size_t>(i)], pool[j]);
  }
  pool.resize(static_cast<size_t>(k));
  return pool;
}

}  // namespace

Environment generate(const GeneratorSpec& spec, RngStream& rng) {
  const int n = spec.num_actions;
  const int k = spec.max_available;
  if (n < 1 || k < 1 || k > n || spec.horizon < 1)
    throw std::invalid_argument("generate: need 1 <= K <= N and T >= 1");
  const int zeros = required_zero_count(spec.zclass);
  if (k < zeros)
    throw std::invalid_argument(
        "generate: zero-count class infeasible for K=" + std::to_string(k));
  if (spec.kind == GeneratorKind::kRealValued &&
      spec.zclass != ZeroCountClass::kUnconstrained)
    throw std::invalid_argument(
        "generate: real-valued losses require the unconstrained class");
  if (!(spec.epsilon >= 0.0 && spec.epsilon <= 1.0))
    throw std::invalid_argument("generate: epsilon outside [0,1]");

  // Available-set sizes vary uniformly on [max(2, zeros), K], clamped to K.
  const int lo_size = std::min(k, std::max(2, std::max(1, zeros)));

  Environment env;
  env.num_actions = n;
  env.max_available = k;
  env.horizon = spec.horizon;
  env.zclass = spec.zclass;
  env.real_losses = spec.kind == GeneratorKind::kRealValued;
  env.rounds.reserve(static_cast<size_t>(spec.horizon));

  const Ranking planted = random_ranking(n, rng);
  // How many actions get zero loss in a binary round: the class count, or one
  // for unconstrained kinds that plant/rotate a single winner.
  const int zeros_per_round = zeros > 0 ? zeros : 1;

  for (std::int64_t t = 1; t <= spec.horizon; ++t) {
    RoundTrace r;
    r.t = t;
    const int size =
        lo_size + static_cast<int>(rng.uniform_int(
                      static_cast<std::uint64_t>(k - lo_size + 1)));
    r.available = draw_subset(n, size, rng);

    switch (spec.kind) {
      case GeneratorKind::kRealValued: {
        r.losses.reserve(r.available.size());
        for (size_t i = 0; i < r.available.size(); ++i)
          r.losses.push_back(rng.uniform());
        break;
      }
      case GeneratorKind::kUniformRandom: {
        if (spec.zclass == ZeroCountClass::kUnconstrained) {
          r.losses.reserve(r.available.size());
          for (size_t i = 0; i < r.available.size(); ++i)
            r.losses.push_back(rng.bernoulli(0.5) ? 1.0 : 0.0);
        } else {
          const auto pos = draw_positions(r.available.size(), zeros, rng);
          assign_binary(r, pos);
        }
        break;
      }
      case GeneratorKind::kAdversarialRotation: {
        std::vector<size_t> pos;
        for (int z = 0; z < zeros_per_round; ++z)
          pos.push_back(static_cast<size_t>((t - 1 + z) %
                                            static_cast<std::int64_t>(
                                                r.available.size())));
        std::sort(pos.begin(), pos.end());
        pos.erase(std::unique(pos.begin(), pos.end()), pos.end());
        while (static_cast<int>(pos.size()) < zeros_per_round) {
          // |A_t| < zeros_per_round cannot happen (size >= lo_size >= zeros),
          // but guard wrap-around collisions for tiny sets.
          for (size_t p = 0; p < r.available.size() &&
                             static_cast<int>(pos.size()) < zeros_per_round;
               ++p)
            if (!std::binary_search(pos.begin(), pos.end(), p)) {
              pos.push_back(p);
              std::sort(pos.begin(), pos.end());
            }
        }
        assign_binary(r, pos);
        break;
      }
      case GeneratorKind::kPlantedRanking: {
        // Zeros go to the top-ranked available actions under the hidden
        // ranking; with probability eps the round's zeros move uniformly.
        std::vector<size_t> idx(r.available.size());
        std::iota(idx.begin(), idx.end(), size_t{0});
        std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
          return planted.rank_of(r.available[a]) <
                 planted.rank_of(r.available[b]);
        });
        std::vector<size_t> pos(idx.begin(), idx.begin() + zeros_per_round);
        if (spec.epsilon > 0.0 && rng.bernoulli(spec.epsilon))
          pos = draw_positions(r.available.size(), zeros_per_round, rng);
        std::sort(pos.begin(), pos.end());
        assign_binary(r, pos);
        break;
      }
    }
    env.rounds.push_back(std::move(r));
  }
  return env;
}

RoundTrace z01_to_z0(const RoundTrace& round, int K, RngStream& rng) {
  if (static_cast<int>(round.available.size()) != K)
    throw std::invalid_argument("z01_to_z0: requires |available| == K");
  int zeros = 0, ones = 0;
  for (double l : round.losses) {
    if (l == 0.0)
      ++zeros;
    else if (l == 1.0)
      ++ones;
    else
      throw std::invalid_argument("z01_to_z0: losses must be binary");
  }

  RoundTrace out;
  out.t = round.t;
  out.available = round.available;

  auto all_one_except = [&](size_t zero_pos) {
    out.losses.assign(out.available.size(), 1.0);
    out.losses[zero_pos] = 0.0;
  };

  if (zeros == 1) {  // E0: pass through w.p. 1/(K-1), else uniform fresh zero
    if (rng.uniform() < 1.0 / (K - 1)) {
      out.losses = round.losses;
    } else {
      all_one_except(rng.uniform_int(out.available.size()));
    }
    return out;
  }
  if (ones == 1) {  // E1: uniform zero among the K-1 zero-loss actions
    std::vector<size_t> zero_pos;
    for (size_t i = 0; i < round.losses.size(); ++i)
      if (round.losses[i] == 0.0) zero_pos.push_back(i);
    all_one_except(zero_pos[rng.uniform_int(zero_pos.size())]);
    return out;
  }
  throw std::invalid_argument(
      "z01_to_z0: round has neither exactly one zero nor exactly one one");
}

}  // namespace sleeping
