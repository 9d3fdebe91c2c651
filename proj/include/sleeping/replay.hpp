#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sleeping/config.hpp"
#include "sleeping/core.hpp"

namespace sleeping {

// A per-round certificate assertion failed during a checked replay.
struct InvariantViolation : std::runtime_error {
  InvariantViolation(std::string invariant_, std::int64_t round_,
                     std::string witness_)
      : std::runtime_error("invariant `" + invariant_ + "` violated at round " +
                           std::to_string(round_) + ": " + witness_),
        invariant(std::move(invariant_)),
        round(round_),
        witness(std::move(witness_)) {}

  std::string invariant;
  std::int64_t round;
  std::string witness;
};

struct RoundRecord {
  std::int64_t t = 0;
  ActionId chosen = -1;
  double loss = 0.0;
};

struct ReplayOptions {
  std::optional<double> eta;  // full-info default 1; bandit default mu/K
  std::optional<double> mu;   // bandit default min{N*sqrt(K/T), 1}
  bool check_invariants = false;
};

struct ReplayOutput {
  std::vector<RoundRecord> records;
  // Set when randomized rounding was applied; regret is then measured on the
  // rounded losses.
  std::optional<Environment> rounded_env;
};

// Throws std::invalid_argument when the algorithm and environment class are
// incompatible, and InvariantViolation when a checked certificate bound fails.
ReplayOutput replay(const Environment& env, AlgorithmKind algorithm,
                    std::uint64_t seed, int trial, const ReplayOptions& opts);

// Config-time guard: is this algorithm runnable on this environment class?
// Returns a diagnostic, or nullopt when compatible.
std::optional<std::string> algorithm_env_mismatch(AlgorithmKind algorithm,
                                                  const Environment& env);

}  // namespace sleeping
