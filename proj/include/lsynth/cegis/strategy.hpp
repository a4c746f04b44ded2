#ifndef LSYNTH_CEGIS_STRATEGY_HPP
#define LSYNTH_CEGIS_STRATEGY_HPP

#include <memory>

#include "lsynth/cegis/types.hpp"

namespace lsynth::cegis {

// One bounded unit of work from a candidate strategy.
//   Found    - candidate satisfying every bank test at the synthesis width
//   None     - the whole space at these params is refuted (complete
//              strategies only)
//   Continue - budget spent, call again
//   Inactive - strategy cannot run at these params/config; drop it
struct StepOutcome {
  enum class Kind { Found, None, Continue, Inactive };
  Kind kind = Kind::Continue;
  Candidate candidate;
};

class SynthStrategy {
 public:
  virtual ~SynthStrategy() = default;
  virtual StepOutcome step() = 0;
  virtual StrategyKind kind() const = 0;
};

// Factory for one synth call: strategies see an immutable snapshot of
// (problem, bank, params).
std::unique_ptr<SynthStrategy> make_explicit_strategy(
    const specir::SpecProblem &prob, const InputBank &bank,
    const lattice::ParamSet &params, const SolverConfig &cfg);

std::unique_ptr<SynthStrategy> make_symbolic_strategy(
    const specir::SpecProblem &prob, const InputBank &bank,
    const lattice::ParamSet &params, const SolverConfig &cfg);

}  // namespace lsynth::cegis

#endif
