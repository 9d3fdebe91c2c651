#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "sleeping/core.hpp"
#include "sleeping/rng.hpp"

namespace sleeping {

enum class GeneratorKind {
  kPlantedRanking,      // zeros track a hidden ranking, flipped with prob eps
  kUniformRandom,       // zero positions uniform per round
  kAdversarialRotation, // zero position cycles through the available set
  kRealValued           // losses i.i.d. uniform on [0,1]
};

GeneratorKind generator_kind_from_string(const std::string& s);
std::string to_string(GeneratorKind k);

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::kUniformRandom;
  int num_actions = 0;       // N
  int max_available = 0;     // K
  std::int64_t horizon = 0;  // T
  double epsilon = 0.0;      // planted-ranking noise
  ZeroCountClass zclass = ZeroCountClass::kExactlyOne;
  std::uint64_t seed = 0;
};

// Deterministic given (spec, rng state); the output always validates against
// its declared zero-count class.
Environment generate(const GeneratorSpec& spec, RngStream& rng);

// Adaptive adversaries for library tests only: given the round index and the
// learner's previous action (-1 before the first round), produce the next
// round. Never serialized.
using AdaptiveAdversary =
    std::function<RoundTrace(std::int64_t t, ActionId last_action)>;

// Appendix-style loss-vector randomization: maps a round with exactly one
// zero (E0) or exactly one one (E1) to a round with exactly one zero.
// Requires |available| == K.
RoundTrace z01_to_z0(const RoundTrace& round, int K, RngStream& rng);

}  // namespace sleeping
