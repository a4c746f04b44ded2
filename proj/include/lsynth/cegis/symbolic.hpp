#ifndef LSYNTH_CEGIS_SYMBOLIC_HPP
#define LSYNTH_CEGIS_SYMBOLIC_HPP

#include <memory>
#include <optional>

#include "lsynth/cegis/strategy.hpp"
#include "lsynth/cegis/types.hpp"
#include "lsynth/sat/circuit.hpp"

namespace lsynth::cegis {

// Builds the propositional falsification query "exists x . not sigma(x, P)"
// for a fixed witness at width w, by bit-blasting the interpreter and the
// matrix. Unsat means the witness is valid at w - this is the complete
// verification route for domains too large to enumerate.
class SymbolicFalsifier {
 public:
  SymbolicFalsifier(const specir::SpecProblem &prob,
                    const specir::Witness &witness, lvm::WordWidth w);

  sat::Result step(int64_t conflict_budget);
  // Valid after step() returned Sat: a falsifying full assignment.
  std::vector<uint64_t> counterexample() const;

 private:
  sat::Solver solver_;
  std::unique_ptr<sat::CircuitBuilder> cb_;
  std::vector<sat::Bv> var_values_;
};

}  // namespace lsynth::cegis

#endif
