#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sleeping/envgen.hpp"

namespace sleeping {

enum class AlgorithmKind {
  kHatt,
  kHopp,
  kBanditHatt,
  kLevel,
  kPerSubset,
  kRankingHedge
};

AlgorithmKind algorithm_from_string(const std::string& s);
std::string to_string(AlgorithmKind a);

// Experiment configuration, parsed from a flat `key = value` file with dotted
// section keys (env.*). Lines starting with '#' are comments.
struct ExperimentConfig {
  AlgorithmKind algorithm = AlgorithmKind::kLevel;
  std::optional<GeneratorSpec> generator;  // env.kind & friends
  std::optional<std::string> trace_path;   // env.trace_path
  int trials = 1;
  std::uint64_t seed = 0;
  std::optional<double> eta;  // default 1 for full-info, mu/K for bandit
  std::optional<double> mu;   // default min{N*sqrt(K/T), 1}
  bool check_invariants = false;
  std::vector<double> alphas{1.0};
  std::string out_dir = ".";
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config_file(const std::string& path);

}  // namespace sleeping
