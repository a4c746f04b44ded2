#ifndef LSYNTH_CEGIS_VERIFY_HPP
#define LSYNTH_CEGIS_VERIFY_HPP

#include <chrono>
#include <optional>

#include "lsynth/cegis/types.hpp"

namespace lsynth::cegis {

using Deadline = std::optional<std::chrono::steady_clock::time_point>;

// Verdict of a verification call. Valid is only ever produced by a
// complete method (exhaustive enumeration or an unsatisfiable symbolic
// falsification); Incomplete reports that no complete method was
// available or the deadline was hit, never a silent pass.
struct VerifOutcome {
  enum class Kind { Valid, Counterexample, Incomplete };
  Kind kind = Kind::Incomplete;
  std::vector<uint64_t> cex;
  const char *winner = "";  // "exhaustive", "sampling", or "symbolic"
  std::string note;
};

// Checks a witness against the whole domain at width w: exhaustively when
// the domain fits under cfg.exhaustive_cap points (the counterexample is
// then the first in enumeration order), otherwise by seeded random
// sampling interleaved with the symbolic falsification check.
VerifOutcome verif(const specir::SpecProblem &prob,
                   const specir::Witness &witness, lvm::WordWidth w,
                   const SolverConfig &cfg, uint64_t sample_seed,
                   const Deadline &deadline = std::nullopt);

}  // namespace lsynth::cegis

#endif
