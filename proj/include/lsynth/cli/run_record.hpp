#ifndef LSYNTH_CLI_RUN_RECORD_HPP
#define LSYNTH_CLI_RUN_RECORD_HPP

#include <cstdint>
#include <map>
#include <string>

#include "lsynth/cegis/types.hpp"

namespace lsynth::cli {

// One structured result per solved instance: a single self-describing
// key=value line, diffable across runs (wall-time fields aside).
struct RunRecord {
  std::string instance;
  std::string category;  // superopt | termination | safety | synthesis
  std::string verdict;   // SAT | UNSAT | BOUND_EXHAUSTED
  std::string detail;    // e.g. the proven disjunct for --task auto
  std::string witness;   // serialized program blocks, newlines as ';'
  uint64_t size = 0;     // total witness instructions
  uint64_t iterations = 0;
  std::map<std::string, uint64_t> synth_wins;
  std::map<std::string, uint64_t> verif_wins;
  int64_t time_synth_ms = 0;
  int64_t time_verif_ms = 0;
  int64_t time_generalize_ms = 0;
  int64_t time_total_ms = 0;
  uint64_t seed = 0;
  std::string trajectory;
  std::string note;

  std::string to_line() const;
  // to_line with the wall-time fields blanked, for replay comparisons.
  std::string stable_line() const;
};

std::string verdict_name(cegis::Verdict v);

// Fills the statistics fields from a solver result.
void fill_from_result(RunRecord &rec, const cegis::SynthesisResult &res,
                      const specir::SpecProblem &prob, int target_width);

}  // namespace lsynth::cli

#endif
