#include "sleeping/trace_io.hpp"

#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace sleeping {

namespace {

using nlohmann::json;

bool losses_are_binary(const Environment& env) {
  for (const RoundTrace& r : env.rounds)
    for (double l : r.losses)
      if (l != 0.0 && l != 1.0) return false;
  return true;
}

}  // namespace

void write_trace(std::ostream& out, const Environment& env) {
  json header;
  header["N"] = env.num_actions;
  header["K"] = env.max_available;
  header["T"] = env.horizon;
  header["zero_count_class"] = to_string(env.zclass);
  out << header.dump() << '\n';
  for (const RoundTrace& r : env.rounds) {
    json rec;
    rec["t"] = r.t;
    rec["available"] = r.available;
    rec["loss"] = r.losses;
    out << rec.dump() << '\n';
  }
}

void write_trace_file(const std::string& path, const Environment& env) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open trace file for writing: " + path);
  write_trace(out, env);
}

Environment read_trace(std::istream& in) {
  std::string line;
  std::int64_t line_no = 0;
  auto fail = [&](const std::string& what) -> std::runtime_error {
    return std::runtime_error("trace line " + std::to_string(line_no) + ": " + what);
  };

  Environment env;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::parse_error& e) {
      throw fail(e.what());
    }
    if (!have_header) {
      if (!rec.contains("N") || !rec.contains("K") || !rec.contains("T") ||
          !rec.contains("zero_count_class"))
        throw fail("header must carry N, K, T and zero_count_class");
      env.num_actions = rec["N"].get<int>();
      env.max_available = rec["K"].get<int>();
      env.horizon = rec["T"].get<std::int64_t>();
      env.zclass = zero_count_class_from_string(
          rec["zero_count_class"].get<std::string>());
      have_header = true;
      continue;
    }
    if (!rec.contains("t") || !rec.contains("available") || !rec.contains("loss"))
      throw fail("round record must carry t, available and loss");
    RoundTrace r;
    r.t = rec["t"].get<std::int64_t>();
    r.available = rec["available"].get<std::vector<ActionId>>();
    r.losses = rec["loss"].get<std::vector<double>>();
    if (r.losses.size() != r.available.size())
      throw fail("loss vector not aligned with available set");
    env.rounds.push_back(std::move(r));
  }
  if (!have_header) throw std::runtime_error("trace is empty (no header line)");
  env.real_losses = !losses_are_binary(env);
  return env;
}

Environment read_trace_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open trace file: " + path);
  return read_trace(in);
}

}  // namespace sleeping
