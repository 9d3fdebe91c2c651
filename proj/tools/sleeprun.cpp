// Command-line experiment runner.
//
//   sleeprun run <config>       run an experiment, write CSV/JSONL outputs
//   sleeprun generate <config>  generate a trace and print it (or --out FILE)
//   sleeprun verify <trace>     validate a trace file against its header
//   sleeprun oracle <trace>     print the optimal ranking and its loss

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "sleeping/oracle.hpp"
#include "sleeping/runner.hpp"
#include "sleeping/trace_io.hpp"

namespace {

using namespace sleeping;

struct CommonFlags {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  bool check_invariants = false;
};

ExperimentConfig load_with_overrides(const std::string& path,
                                     const CommonFlags& flags) {
  ExperimentConfig cfg = load_config_file(path);
  if (flags.seed) {
    cfg.seed = *flags.seed;
    if (cfg.generator) cfg.generator->seed = *flags.seed;
  }
  if (flags.out) cfg.out_dir = *flags.out;
  if (flags.check_invariants) cfg.check_invariants = true;
  return cfg;
}

int cmd_run(const std::string& config_path, const CommonFlags& flags) {
  ExperimentConfig cfg = load_with_overrides(config_path, flags);
  ExperimentResult result = run_experiment(cfg);
  for (const TrialResult& tr : result.trials) {
    std::cout << "trial " << tr.trial << ": loss " << tr.report.learner_loss
              << ", L* " << tr.report.comparator_loss
              << (tr.report.comparator_exact ? "" : " (sampled)") << '\n';
  }
  std::cout << "wrote " << cfg.out_dir << "/summary.csv, rounds.csv, "
            << "report.jsonl\n";
  return 0;
}

int cmd_generate(const std::string& config_path, const CommonFlags& flags) {
  ExperimentConfig cfg = load_with_overrides(config_path, flags);
  if (!cfg.generator) {
    throw std::invalid_argument("generate requires env.kind in the config");
  }
  Environment env = resolve_environment(cfg);
  if (flags.out) {
    write_trace_file(*flags.out, env);
    std::cout << "wrote " << *flags.out << " (" << env.horizon << " rounds)\n";
  } else {
    write_trace(std::cout, env);
  }
  return 0;
}

int cmd_verify(const std::string& trace_path) {
  Environment env = read_trace_file(trace_path);
  std::vector<std::string> problems = validate_environment(env);
  if (problems.empty()) {
    std::cout << "ok: N=" << env.num_actions << " K=" << env.max_available
              << " T=" << env.horizon << " class="
              << to_string(env.zclass) << '\n';
    return 0;
  }
  for (const std::string& p : problems) std::cerr << p << '\n';
  return 1;
}

int cmd_oracle(const std::string& trace_path, const CommonFlags& flags) {
  Environment env = read_trace_file(trace_path);
  nlohmann::json out;
  if (env.num_actions <= kDefaultEnumerationCap) {
    OracleResult best = best_ranking(env);
    out = {{"exact", true},
           {"ranking", best.ranking.order()},
           {"loss", best.loss}};
  } else {
    RngStream rng(flags.seed.value_or(0), 0, "oracle");
    OracleResult best = sample_ranking_loss(env, 20000, rng);
    out = {{"exact", false},
           {"ranking", best.ranking.order()},
           {"loss", best.loss}};
  }
  std::cout << out.dump() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sleeping-experts experiment runner"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string config_path;
  std::string trace_path;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", flags.seed, "override the config seed");
    sub->add_option("--out", flags.out, "override the output directory/file");
    sub->add_flag("--check-invariants", flags.check_invariants,
                  "assert per-round certificate invariants during replay");
  };

  CLI::App* run = app.add_subcommand("run", "run an experiment from a config");
  run->add_option("config", config_path, "config file")->required();
  add_common(run);

  CLI::App* gen = app.add_subcommand("generate", "generate a trace");
  gen->add_option("config", config_path, "config file")->required();
  add_common(gen);

  CLI::App* verify = app.add_subcommand("verify", "validate a trace file");
  verify->add_option("trace", trace_path, "trace file")->required();

  CLI::App* oracle =
      app.add_subcommand("oracle", "optimal ranking for a trace");
  oracle->add_option("trace", trace_path, "trace file")->required();
  add_common(oracle);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(config_path, flags);
    if (gen->parsed()) return cmd_generate(config_path, flags);
    if (verify->parsed()) return cmd_verify(trace_path);
    if (oracle->parsed()) return cmd_oracle(trace_path, flags);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
