#include "lsynth/cegis/config.hpp"

#include <sstream>
#include <stdexcept>

namespace lsynth::cegis {

const char *strategy_name(StrategyKind k) {
  switch (k) {
    case StrategyKind::Explicit: return "explicit";
    case StrategyKind::Gp: return "gp";
    case StrategyKind::Symbolic: return "symbolic";
  }
  return "?";
}

std::vector<lvm::Opcode> SolverConfig::effective_opcodes() const {
  if (allowed_opcodes.empty()) {
    auto all = lvm::all_opcodes();
    return {all.begin(), all.end()};
  }
  return allowed_opcodes;
}

bool SolverConfig::full_opcode_set() const {
  return allowed_opcodes.empty() ||
         allowed_opcodes.size() == lvm::kNumOpcodes;
}

namespace {

StrategyKind strategy_from_name(const std::string &s) {
  if (s == "explicit") return StrategyKind::Explicit;
  if (s == "gp") return StrategyKind::Gp;
  if (s == "symbolic") return StrategyKind::Symbolic;
  throw std::invalid_argument("unknown strategy '" + s + "'");
}

std::vector<std::string> split_csv(const std::string &s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace

void SolverConfig::apply_kv(const std::string &key, const std::string &value) {
  auto as_u64 = [&] { return std::stoull(value); };
  auto as_i = [&] { return std::stoi(value); };
  auto as_d = [&] { return std::stod(value); };
  auto as_b = [&] { return value == "1" || value == "true" || value == "on"; };
  if (key == "seed") {
    seed = as_u64();
  } else if (key == "strategies") {
    strategies.clear();
    for (const std::string &s : split_csv(value)) {
      strategies.push_back(strategy_from_name(s));
    }
    if (strategies.empty()) {
      throw std::invalid_argument("strategies list must not be empty");
    }
  } else if (key == "population") {
    population_size = as_i();
  } else if (key == "crossover_prob") {
    crossover_prob = as_d();
  } else if (key == "mutation_prob") {
    mutation_prob = as_d();
  } else if (key == "elitism") {
    elitism = as_i();
  } else if (key == "exhaustive_cap") {
    exhaustive_cap = as_u64();
  } else if (key == "samples") {
    sample_count = as_u64();
  } else if (key == "symbolic_verify") {
    symbolic_verify = as_b();
  } else if (key == "initial_length") {
    initial_length = as_i();
  } else if (key == "initial_consts") {
    initial_consts = as_i();
  } else if (key == "initial_width") {
    initial_width = as_i();
  } else if (key == "max_length") {
    max_length_override = as_i();
  } else if (key == "generalize_cap") {
    generalize_cap = as_i();
  } else if (key == "canonicalize") {
    canonicalize = as_b();
  } else if (key == "target_width") {
    target_width_override = as_i();
  } else if (key == "rank_dim") {
    rank_dim = as_i();
  } else if (key == "timeout_ms") {
    timeout_ms = static_cast<int64_t>(as_u64());
  } else if (key == "parallel_race") {
    parallel_race = as_b();
  } else if (key == "opcodes") {
    allowed_opcodes.clear();
    for (const std::string &s : split_csv(value)) {
      auto op = lvm::opcode_from_name(s);
      if (!op) throw std::invalid_argument("unknown opcode '" + s + "'");
      allowed_opcodes.push_back(*op);
    }
  } else if (key == "symbolic_disabled") {
    symbolic_disabled.clear();
    for (const std::string &s : split_csv(value)) {
      auto op = lvm::opcode_from_name(s);
      if (!op) throw std::invalid_argument("unknown opcode '" + s + "'");
      symbolic_disabled.push_back(*op);
    }
  } else {
    throw std::invalid_argument("unknown config key '" + key + "'");
  }
}

SolverConfig SolverConfig::from_kv(const std::string &text) {
  SolverConfig cfg;
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) {
    if (tok.empty() || tok[0] == '#') {
      std::string rest;
      std::getline(is, rest);
      continue;
    }
    size_t eq = tok.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("expected key=value, got '" + tok + "'");
    }
    cfg.apply_kv(tok.substr(0, eq), tok.substr(eq + 1));
  }
  return cfg;
}

}  // namespace lsynth::cegis
