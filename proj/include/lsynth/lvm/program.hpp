#ifndef LSYNTH_LVM_PROGRAM_HPP
#define LSYNTH_LVM_PROGRAM_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "lsynth/lvm/opcode.hpp"

namespace lsynth::lvm {

// Machine word width in bits. All arithmetic is performed modulo 2^bits.
struct WordWidth {
  int bits = 8;

  constexpr uint64_t mask() const {
    return bits >= 64 ? ~uint64_t{0} : (uint64_t{1} << bits) - 1;
  }
  constexpr bool operator==(const WordWidth &) const = default;
};

struct Operand {
  enum class Kind : uint8_t { Input, Temp, Const };
  Kind kind = Kind::Input;
  uint32_t index = 0;

  static Operand input(uint32_t i) { return {Kind::Input, i}; }
  static Operand temp(uint32_t i) { return {Kind::Temp, i}; }
  static Operand constant(uint32_t i) { return {Kind::Const, i}; }

  bool operator==(const Operand &) const = default;
};

struct Instruction {
  Opcode opcode = Opcode::Add;
  // Always three slots; only the first arity(opcode) are meaningful.
  std::vector<Operand> operands;

  bool operator==(const Instruction &) const = default;
};

// A loop-free SSA instruction list with an external constant table and an
// ordered list of output designators. One Program is the witness for one
// second-order unknown.
struct Program {
  uint32_t arity = 0;
  std::vector<Instruction> instructions;
  std::vector<uint64_t> constants;
  std::vector<Operand> outputs;

  size_t length() const { return instructions.size(); }
  bool operator==(const Program &) const = default;
};

// All SSA / arity / index violations of `p`, empty iff well-formed.
// Violations are data, not failures.
std::vector<std::string> validate(const Program &p);

}  // namespace lsynth::lvm

#endif
