#include "sleeping/runner.hpp"

#include <atomic>
#include <exception>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "sleeping/oracle.hpp"
#include "sleeping/rng.hpp"
#include "sleeping/trace_io.hpp"

namespace sleeping {
namespace {

using nlohmann::json;

// Shortest round-trip representation; keeps reruns byte-identical.
std::string num(double x) { return json(x).dump(); }

struct OracleOutcome {
  OracleResult result;
  bool exact = true;
};

OracleOutcome compute_oracle(const Environment& env, std::uint64_t seed,
                             int trial) {
  if (env.num_actions <= kDefaultEnumerationCap) {
    return {best_ranking(env), true};
  }
  RngStream rng(seed, static_cast<std::uint64_t>(trial), "oracle");
  return {sample_ranking_loss(env, 20000, rng), false};
}

std::vector<double> comparator_round_losses(const Ranking& sigma,
                                            const Environment& env) {
  std::vector<double> out;
  out.reserve(env.rounds.size());
  for (const RoundTrace& r : env.rounds) {
    out.push_back(r.loss_of(sigma_choice(sigma, r.available)));
  }
  return out;
}

TrialResult run_trial(const ExperimentConfig& cfg, const Environment& env,
                      int trial) {
  ReplayOptions opts;
  opts.eta = cfg.eta;
  opts.mu = cfg.mu;
  opts.check_invariants = cfg.check_invariants;

  TrialResult tr;
  tr.trial = trial;
  tr.output = replay(env, cfg.algorithm, cfg.seed, trial, opts);

  // Regret is measured on the losses the learner was actually charged, which
  // are the rounded ones when randomized rounding was applied.
  const Environment& measured =
      tr.output.rounded_env ? *tr.output.rounded_env : env;
  OracleOutcome oracle = compute_oracle(measured, cfg.seed, trial);

  std::vector<double> learner;
  learner.reserve(tr.output.records.size());
  for (const RoundRecord& r : tr.output.records) learner.push_back(r.loss);

  std::vector<double> comparator =
      comparator_round_losses(oracle.result.ranking, measured);
  tr.report = make_regret_report(learner, comparator, oracle.result.ranking,
                                 cfg.alphas, oracle.exact);
  return tr;
}

void write_summary_csv(const std::filesystem::path& path,
                       const ExperimentConfig& cfg, const Environment& env,
                       const std::vector<TrialResult>& trials) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "trial,algorithm,N,K,T,total_loss,lstar,alpha,approx_regret,seed\n";
  for (const TrialResult& tr : trials) {
    for (const auto& [alpha, regret] : tr.report.approx_regret) {
      out << tr.trial << ',' << to_string(cfg.algorithm) << ','
          << env.num_actions << ',' << env.max_available << ',' << env.horizon
          << ',' << num(tr.report.learner_loss) << ','
          << num(tr.report.comparator_loss) << ',' << num(alpha) << ','
          << num(regret) << ',' << cfg.seed << '\n';
    }
  }
}

void write_rounds_csv(const std::filesystem::path& path,
                      const std::vector<TrialResult>& trials) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "trial,t,chosen,loss,cum_loss,cum_comparator\n";
  for (const TrialResult& tr : trials) {
    for (size_t i = 0; i < tr.output.records.size(); ++i) {
      const RoundRecord& r = tr.output.records[i];
      const auto& [cum_loss, cum_cmp] = tr.report.per_round_cumulative[i];
      out << tr.trial << ',' << r.t << ',' << r.chosen << ',' << num(r.loss)
          << ',' << num(cum_loss) << ',' << num(cum_cmp) << '\n';
    }
  }
}

void write_report_jsonl(const std::filesystem::path& path,
                        const ExperimentConfig& cfg, const Environment& env,
                        const std::vector<TrialResult>& trials) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  for (const TrialResult& tr : trials) {
    json line;
    line["trial"] = tr.trial;
    line["algorithm"] = to_string(cfg.algorithm);
    line["N"] = env.num_actions;
    line["K"] = env.max_available;
    line["T"] = env.horizon;
    line["seed"] = cfg.seed;
    line["learner_loss"] = tr.report.learner_loss;
    line["comparator_loss"] = tr.report.comparator_loss;
    line["comparator_exact"] = tr.report.comparator_exact;
    line["best_ranking"] = tr.report.best_ranking.order();
    json regrets = json::array();
    for (const auto& [alpha, regret] : tr.report.approx_regret) {
      regrets.push_back({{"alpha", alpha}, {"regret", regret}});
    }
    line["approx_regret"] = std::move(regrets);
    json cum = json::array();
    for (const auto& [learner, comparator] : tr.report.per_round_cumulative) {
      cum.push_back({learner, comparator});
    }
    line["per_round_cumulative"] = std::move(cum);
    out << line.dump() << '\n';
  }
}

}  // namespace

Environment resolve_environment(const ExperimentConfig& cfg) {
  Environment env;
  if (cfg.trace_path) {
    env = read_trace_file(*cfg.trace_path);
  } else if (cfg.generator) {
    RngStream rng(cfg.generator->seed, 0, "env");
    env = generate(*cfg.generator, rng);
  } else {
    throw std::invalid_argument(
        "config must set either env.kind or env.trace_path");
  }
  std::vector<std::string> problems = validate_environment(env);
  if (!problems.empty()) {
    std::string msg = "invalid environment:";
    for (const std::string& p : problems) msg += "\n  " + p;
    throw std::invalid_argument(msg);
  }
  return env;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");

  ExperimentResult result;
  result.env = resolve_environment(cfg);
  if (auto mismatch = algorithm_env_mismatch(cfg.algorithm, result.env)) {
    throw std::invalid_argument(*mismatch);
  }

  result.trials.resize(static_cast<size_t>(cfg.trials));
  std::vector<std::exception_ptr> errors(static_cast<size_t>(cfg.trials));
  std::atomic<int> next{0};
  unsigned workers = std::min<unsigned>(
      std::max(1u, std::thread::hardware_concurrency()),
      static_cast<unsigned>(cfg.trials));

  auto work = [&] {
    for (int trial = next.fetch_add(1); trial < cfg.trials;
         trial = next.fetch_add(1)) {
      try {
        result.trials[static_cast<size_t>(trial)] =
            run_trial(cfg, result.env, trial);
      } catch (...) {
        errors[static_cast<size_t>(trial)] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(work);
    for (std::thread& th : pool) th.join();
  }
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::filesystem::path dir(cfg.out_dir);
  std::filesystem::create_directories(dir);
  write_summary_csv(dir / "summary.csv", cfg, result.env, result.trials);
  write_rounds_csv(dir / "rounds.csv", result.trials);
  write_report_jsonl(dir / "report.jsonl", cfg, result.env, result.trials);
  return result;
}

}  // namespace sleeping
