#pragma once

#include <string>
#include <vector>

#include "sleeping/config.hpp"
#include "sleeping/core.hpp"
#include "sleeping/replay.hpp"

namespace sleeping {

struct TrialResult {
  int trial = 0;
  ReplayOutput output;
  RegretReport report;
};

struct ExperimentResult {
  Environment env;
  std::vector<TrialResult> trials;
};

// Runs all trials (parallel across trials, deterministic per trial key) and
// writes summary.csv, rounds.csv and report.jsonl into cfg.out_dir.
// Invariant violations and config errors propagate as exceptions.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

// The generator/trace resolution used by run_experiment, exposed for the
// `generate`, `verify` and `oracle` subcommands.
Environment resolve_environment(const ExperimentConfig& cfg);

}  // namespace sleeping
