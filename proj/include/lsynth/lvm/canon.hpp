#ifndef LSYNTH_LVM_CANON_HPP
#define LSYNTH_LVM_CANON_HPP

#include "lsynth/lvm/program.hpp"

namespace lsynth::lvm {

// Canonical-form check used by the explicit strategy to prune the search.
// An instruction is non-canonical if it is a recognizable no-op (e.g.
// `add x 0`, `mul x 1`, `and x mask`) or a commutative instruction whose
// operands are out of order. Every pruned instruction has a semantically
// equal canonical replacement of the same length, so pruning loses no
// functions. The ordering key is (kind, index) with Input < Temp < Const.
bool instruction_is_canonical(const Instruction &ins,
                              const std::vector<uint64_t> &constants,
                              WordWidth w);

bool program_is_canonical(const Program &p, WordWidth w);

}  // namespace lsynth::lvm

#endif
