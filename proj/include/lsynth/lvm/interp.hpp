#ifndef LSYNTH_LVM_INTERP_HPP
#define LSYNTH_LVM_INTERP_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "lsynth/lvm/program.hpp"

namespace lsynth::lvm {

// Semantics of a single instruction at width w. Operands must already be
// reduced modulo 2^w; unused operands are ignored. Total: div by zero
// yields 2^w - 1, mod by zero yields a. Comparisons return 0/1.
uint64_t eval_instruction(Opcode op, uint64_t a, uint64_t b, uint64_t c,
                          WordWidth w);

// Runs a well-formed program on an input vector. Total and deterministic;
// every intermediate value is reduced modulo 2^w. Returns one word per
// output designator.
std::vector<uint64_t> exec(const Program &p, std::span<const uint64_t> inputs,
                           WordWidth w);

// exec variant that reuses a scratch buffer for the temps, for hot loops.
void exec_into(const Program &p, std::span<const uint64_t> inputs, WordWidth w,
               std::vector<uint64_t> &temps, std::vector<uint64_t> &out);

}  // namespace lsynth::lvm

#endif
