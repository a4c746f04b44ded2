#ifndef LSYNTH_CEGIS_CONFIG_HPP
#define LSYNTH_CEGIS_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "lsynth/lvm/opcode.hpp"

namespace lsynth::cegis {

enum class StrategyKind { Explicit, Gp, Symbolic };

const char *strategy_name(StrategyKind k);

struct SolverConfig {
  // Candidate strategies raced during synth, in priority order (the order
  // breaks ties when several return in the same round).
  std::vector<StrategyKind> strategies = {
      StrategyKind::Explicit, StrategyKind::Gp, StrategyKind::Symbolic};

  uint64_t seed = 1;

  // Genetic programming.
  int population_size = 200;
  double crossover_prob = 0.8;
  double mutation_prob = 0.05;
  int elitism = 1;
  uint64_t gp_stall_generations = 400;  // give up on a params point after this

  // Verification: exhaustive up to this many domain points, otherwise
  // random sampling races the symbolic falsification check.
  uint64_t exhaustive_cap = uint64_t{1} << 20;
  uint64_t sample_count = 100000;
  bool symbolic_verify = true;

  // Lattice.
  int initial_length = 1;
  int initial_consts = 0;
  int initial_width = 4;
  int max_length_override = 0;          // 0: the 2^input_bits bound
  uint64_t max_length_cap = uint64_t{1} << 20;
  int generalize_cap = 216;             // 6^k product cutoff

  // Language.
  std::vector<lvm::Opcode> allowed_opcodes;   // empty: all 22
  std::vector<lvm::Opcode> symbolic_disabled; // opcodes the encoder must skip
  bool canonicalize = true;                   // explicit-strategy pruning

  int target_width_override = 0;  // 0: max declared universal width
  int rank_dim = 1;               // lexicographic rank dimension (frontends)

  int64_t timeout_ms = 180000;

  // Race stepping: work done by each strategy per deterministic round.
  int step_candidates = 8192;
  int64_t step_conflicts = 3000;
  uint64_t step_samples = 8192;
  bool parallel_race = true;

  std::vector<lvm::Opcode> effective_opcodes() const;
  bool full_opcode_set() const;

  // key=value configuration text, one pair per line or whitespace-separated.
  static SolverConfig from_kv(const std::string &text);
  void apply_kv(const std::string &key, const std::string &value);
};

}  // namespace lsynth::cegis

#endif
