#include "lsynth/lvm/table.hpp"

#include <stdexcept>

namespace lsynth::lvm {

Program compile_table(const std::vector<std::pair<uint64_t, uint64_t>> &table,
                      WordWidth w) {
  if (table.empty()) throw std::invalid_argument("compile_table: empty table");
  // The domain must be exactly {0..2^n-1} for some n <= w.
  size_t n = table.size();
  if ((n & (n - 1)) != 0) {
    throw std::invalid_argument(
        "compile_table: table size is not a power of two");
  }
  std::vector<uint64_t> by_key(n, 0);
  std::vector<bool> seen(n, false);
  for (const auto &[k, v] : table) {
    if (k >= n) {
      throw std::invalid_argument("compile_table: key out of domain range");
    }
    if (seen[k]) throw std::invalid_argument("compile_table: duplicate key");
    if ((v & w.mask()) != v) {
      throw std::invalid_argument("compile_table: value exceeds word width");
    }
    seen[k] = true;
    by_key[k] = v;
  }

  Program p;
  p.arity = 1;
  if (n == 1) {
    p.constants.push_back(by_key[0]);
    p.outputs.push_back(Operand::constant(0));
    return p;
  }

  // Chain accumulator:  t = eq(x, k); t' = ite(t, f(k), acc)
  p.constants.push_back(1);          // c0 = key 1
  p.constants.push_back(by_key[1]);  // c1 = f(1)
  p.constants.push_back(by_key[0]);  // c2 = f(0)
  p.instructions.push_back(
      {Opcode::Eq, {Operand::input(0), Operand::constant(0)}});
  p.instructions.push_back({Opcode::Ite,
                            {Operand::temp(0), Operand::constant(1),
                             Operand::constant(2)}});
  for (uint64_t k = 2; k < n; ++k) {
    uint32_t key_c = static_cast<uint32_t>(p.constants.size());
    p.constants.push_back(k);
    uint32_t val_c = static_cast<uint32_t>(p.constants.size());
    p.constants.push_back(by_key[k]);
    uint32_t prev = static_cast<uint32_t>(p.instructions.size() - 1);
    p.instructions.push_back(
        {Opcode::Eq, {Operand::input(0), Operand::constant(key_c)}});
    p.instructions.push_back(
        {Opcode::Ite,
         {Operand::temp(prev + 1), Operand::constant(val_c),
          Operand::temp(prev)}});
  }
  p.outputs.push_back(
      Operand::temp(static_cast<uint32_t>(p.instructions.size() - 1)));
  return p;
}

uint64_t max_length_bound(int input_bits, uint64_t cap) {
  if (input_bits < 0) throw std::invalid_argument("negative input bits");
  if (input_bits >= 63) return cap;
  uint64_t bound = uint64_t{1} << input_bits;
  return bound > cap ? cap : bound;
}

}  // namespace lsynth::lvm
