#ifndef LSYNTH_LVM_OPCODE_HPP
#define LSYNTH_LVM_OPCODE_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace lsynth::lvm {

// The instruction set of the solution language. Integer arithmetic,
// bitwise/shift, unsigned and signed comparison, and the two logical
// instructions. No floating point, no control flow.
enum class Opcode : uint8_t {
  Add,
  Sub,
  Mul,
  Div,
  Neg,
  Mod,
  Min,
  Max,
  And,
  Or,
  Xor,
  Lshr,
  Ashr,
  Not,
  Le,
  Lt,
  Sle,
  Slt,
  Eq,
  Neq,
  Implies,
  Ite,
};

inline constexpr size_t kNumOpcodes = 22;

inline constexpr std::array<Opcode, kNumOpcodes> all_opcodes() {
  return {Opcode::Add, Opcode::Sub,  Opcode::Mul,  Opcode::Div, Opcode::Neg,
          Opcode::Mod, Opcode::Min,  Opcode::Max,  Opcode::And, Opcode::Or,
          Opcode::Xor, Opcode::Lshr, Opcode::Ashr, Opcode::Not, Opcode::Le,
          Opcode::Lt,  Opcode::Sle,  Opcode::Slt,  Opcode::Eq,  Opcode::Neq,
          Opcode::Implies, Opcode::Ite};
}

constexpr int arity(Opcode op) {
  switch (op) {
    case Opcode::Neg:
    case Opcode::Not: return 1;
    case Opcode::Ite: return 3;
    default: return 2;
  }
}

constexpr bool is_commutative(Opcode op) {
  switch (op) {
    case Opcode::Add:
    case Opcode::Mul:
    case Opcode::Min:
    case Opcode::Max:
    case Opcode::And:
    case Opcode::Or:
    case Opcode::Xor:
    case Opcode::Eq:
    case Opcode::Neq: return true;
    default: return false;
  }
}

std::string_view opcode_name(Opcode op);
std::optional<Opcode> opcode_from_name(std::string_view name);

}  // namespace lsynth::lvm

#endif
