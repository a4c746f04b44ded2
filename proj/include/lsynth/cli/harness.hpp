#ifndef LSYNTH_CLI_HARNESS_HPP
#define LSYNTH_CLI_HARNESS_HPP

#include <string>
#include <vector>

#include "lsynth/cegis/solver.hpp"
#include "lsynth/cli/run_record.hpp"
#include "lsynth/frontends/encode.hpp"

namespace lsynth::cli {

// A benchmark instance on disk:
//   *.spec - synthesis-fragment formula, solved directly
//   *.loop - loop system; with an assertion it is a safety task, without
//            one the combined termination-or-not task
//   *.sopt - reference program, superoptimisation task
struct Instance {
  enum class Kind { Spec, Loop, Superopt };
  Kind kind = Kind::Spec;
  std::string path;
  std::string name;
  std::string category;
};

Instance classify_instance(const std::string &path);

enum class AnalysisTask { Safety, Terminate, NonTerminate, Auto };

struct SolveOutput {
  cegis::SynthesisResult result;
  specir::SpecProblem problem;
  int target_width = 0;
  RunRecord record;
};

// Runs one instance end to end and assembles its record.
SolveOutput run_spec_file(const std::string &path,
                          const cegis::SolverConfig &cfg);
SolveOutput run_loop_file(const std::string &path, AnalysisTask task,
                          const cegis::SolverConfig &cfg);
SolveOutput run_superopt_file(const std::string &path,
                              const cegis::SolverConfig &cfg);
SolveOutput run_instance(const Instance &inst, const cegis::SolverConfig &cfg);

// Witness files: one `program NAME` header per block, then the textual
// program form.
std::string witness_to_text(const specir::Witness &w, int width);
specir::Witness witness_from_text(const std::string &text, int *width_out);

// Re-verifies a witness against a problem with the complete check; VALID
// or a counterexample.
cegis::VerifOutcome check_witness(const specir::SpecProblem &prob,
                                  const specir::Witness &witness,
                                  int target_width,
                                  const cegis::SolverConfig &cfg);

struct BenchReport {
  std::vector<RunRecord> records;  // deterministically ordered by name
  std::string table;
};

// Runs every instance in a directory under the per-instance timeout;
// individual failures are recorded, never abort the batch. `jobs` > 1 runs
// instances concurrently; records are merged by instance name.
BenchReport run_bench(const std::string &dir, const cegis::SolverConfig &cfg,
                      int jobs = 1);

}  // namespace lsynth::cli

#endif
