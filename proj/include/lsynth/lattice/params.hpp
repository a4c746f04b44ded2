#ifndef LSYNTH_LATTICE_PARAMS_HPP
#define LSYNTH_LATTICE_PARAMS_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "lsynth/lvm/program.hpp"

namespace lsynth::lattice {

// A point on the language lattice: programs of length l with at most c
// constants, synthesized at width w_syn, verified at width w_target.
struct ParamSet {
  int length = 1;
  int num_consts = 0;
  int w_syn = 4;
  int w_target = 8;

  bool operator==(const ParamSet &) const = default;
  std::string text() const;
};

// The edge taken out of a refinement iteration, matching the parameter
// decision tree: synthesis failed, verification failed even at the small
// width, verification passed at the small width but generalization failed,
// or the instance is solved.
enum class SearchOutcome {
  SynthFailed,
  VerifFailedSmallToo,
  VerifSmallOkGenFailed,
  Done,
};

// Applies the decision-tree edges:
//   SynthFailed, c < l        -> c := c+1
//   SynthFailed, c = l        -> c := 0, l := l+1
//   VerifSmallOkGenFailed     -> w_syn := w_syn+1 (clamped at w_target)
//   VerifFailedSmallToo       -> unchanged (the new counterexample drives
//                                the next iteration)
// Exceeding max_length exhausts the lattice, except that at a small
// synthesis width the exhaustion instead bumps w_syn and restarts the
// (l, c) ladder: a synthesis failure below the target width says nothing
// about target-width programs, so only target-width exhaustion may back
// the unsatisfiability verdict.
std::optional<ParamSet> next_params(const ParamSet &p, SearchOutcome outcome,
                                    uint64_t max_length);

// Initial lattice point for a target width: l=1, c=0, w_syn=min(4,target).
ParamSet initial_params(int w_target);

// The six constant-extension rules for lifting an m-bit value to n bits
// (m <= n):
//   1: m       -> n            2: m-1     -> n-1       3: m+1 -> n+1
//   4: zero-extend v           5: v * 0^(n-m)          6: repeat v, truncate
// Rules 1-3 only apply when v matches their pattern; an inapplicable rule
// yields nullopt.
std::optional<uint64_t> extend_constant(uint64_t v, lvm::WordWidth m,
                                        lvm::WordWidth n, int rule);

}  // namespace lsynth::lattice

#endif
