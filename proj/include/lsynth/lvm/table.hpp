#ifndef LSYNTH_LVM_TABLE_HPP
#define LSYNTH_LVM_TABLE_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "lsynth/lvm/program.hpp"

namespace lsynth::lvm {

// Compiles a total function table over {0..2^n-1} (n <= w) into a program
// built from an eq/ite chain. The result validates and agrees with the
// table on every domain point; its length is linear in the domain size.
// Throws std::invalid_argument for non-total or duplicate-keyed tables.
Program compile_table(const std::vector<std::pair<uint64_t, uint64_t>> &table,
                      WordWidth w);

// 2^input_bits, saturating at `cap`: the length beyond which absence of a
// witness proves a specification unsatisfiable.
uint64_t max_length_bound(int input_bits, uint64_t cap = uint64_t{1} << 20);

}  // namespace lsynth::lvm

#endif
