#ifndef LSYNTH_CEGIS_SOLVER_HPP
#define LSYNTH_CEGIS_SOLVER_HPP

#include <stdexcept>

#include "lsynth/cegis/types.hpp"
#include "lsynth/cegis/verify.hpp"

namespace lsynth::cegis {

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Target machine width for a problem: the configured override, otherwise
// the widest declared universal (8 when there are none).
int resolve_target_width(const specir::SpecProblem &prob,
                         const SolverConfig &cfg);

// The counterexample-guided refinement loop over the parameter lattice.
// Racing candidate strategies are stepped in deterministic rounds, so the
// verdict, witness, iteration count, and win tallies are a pure function
// of the problem and configuration (wall-clock timeouts aside).
SynthesisResult refinement_loop(const specir::SpecProblem &prob,
                                const SolverConfig &cfg);

}  // namespace lsynth::cegis

#endif
