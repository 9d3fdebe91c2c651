#include "sleeping/config.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace sleeping {

AlgorithmKind algorithm_from_string(const std::string& s) {
  if (s == "hatt") return AlgorithmKind::kHatt;
  if (s == "hopp") return AlgorithmKind::kHopp;
  if (s == "bandit-hatt") return AlgorithmKind::kBanditHatt;
  if (s == "level") return AlgorithmKind::kLevel;
  if (s == "per-subset") return AlgorithmKind::kPerSubset;
  if (s == "ranking-hedge") return AlgorithmKind::kRankingHedge;
  throw std::invalid_argument("unknown algorithm: " + s);
}

std::string to_string(AlgorithmKind a) {
  switch (a) {
    case AlgorithmKind::kHatt: return "hatt";
    case AlgorithmKind::kHopp: return "hopp";
    case AlgorithmKind::kBanditHatt: return "bandit-hatt";
    case AlgorithmKind::kLevel: return "level";
    case AlgorithmKind::kPerSubset: return "per-subset";
    case AlgorithmKind::kRankingHedge: return "ranking-hedge";
  }
  throw std::logic_error("unknown AlgorithmKind");
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool parse_bool(const std::string& v, const std::string& key) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw std::invalid_argument("config: bad boolean for " + key + ": " + v);
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected key = value");
    kv[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
  }

  ExperimentConfig cfg;
  auto take = [&](const char* key) -> std::optional<std::string> {
    const auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    std::string v = it->second;
    kv.erase(it);
    return v;
  };

  const auto algorithm = take("algorithm");
  if (!algorithm) throw std::invalid_argument("config: missing `algorithm`");
  cfg.algorithm = algorithm_from_string(*algorithm);

  if (const auto v = take("env.trace_path")) cfg.trace_path = *v;

  const auto kind = take("env.kind");
  if (kind) {
    GeneratorSpec spec;
    spec.kind = generator_kind_from_string(*kind);
    const auto n = take("env.N"), k = take("env.K"), t = take("env.T");
    if (!n || !k || !t)
      throw std::invalid_argument("config: env.kind requires env.N/K/T");
    spec.num_actions = std::stoi(*n);
    spec.max_available = std::stoi(*k);
    spec.horizon = std::stoll(*t);
    if (const auto e = take("env.epsilon")) spec.epsilon = std::stod(*e);
    if (const auto z = take("env.zero_count_class"))
      spec.zclass = zero_count_class_from_string(*z);
    else if (spec.kind == GeneratorKind::kRealValued)
      spec.zclass = ZeroCountClass::kUnconstrained;
    cfg.generator = spec;
  }
  if (!cfg.generator && !cfg.trace_path)
    throw std::invalid_argument(
        "config: need either env.kind (generator) or env.trace_path");
  if (cfg.generator && cfg.trace_path)
    throw std::invalid_argument(
        "config: env.kind and env.trace_path are mutually exclusive");

  if (const auto v = take("trials")) cfg.trials = std::stoi(*v);
  if (cfg.trials < 1) throw std::invalid_argument("config: trials must be >= 1");
  if (const auto v = take("seed")) cfg.seed = std::stoull(*v);
  if (cfg.generator) cfg.generator->seed = cfg.seed;
  if (const auto v = take("eta")) cfg.eta = std::stod(*v);
  if (const auto v = take("mu")) cfg.mu = std::stod(*v);
  if (const auto v = take("check_invariants"))
    cfg.check_invariants = parse_bool(*v, "check_invariants");
  if (const auto v = take("out_dir")) cfg.out_dir = *v;
  if (const auto v = take("alphas")) {
    cfg.alphas.clear();
    std::istringstream as(*v);
    std::string tok;
    while (std::getline(as, tok, ',')) {
      const std::string tt = trim(tok);
      if (!tt.empty()) cfg.alphas.push_back(std::stod(tt));
    }
    if (cfg.alphas.empty())
      throw std::invalid_argument("config: alphas list is empty");
  }

  if (!kv.empty())
    throw std::invalid_argument("config: unknown key `" + kv.begin()->first + "`");
  return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace sleeping
