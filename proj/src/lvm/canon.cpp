#include "lsynth/lvm/canon.hpp"

namespace lsynth::lvm {

namespace {

int operand_key(const Operand &o) {
  int kind_rank = 0;
  switch (o.kind) {
    case Operand::Kind::Input: kind_rank = 0; break;
    case Operand::Kind::Temp: kind_rank = 1; break;
    case Operand::Kind::Const: kind_rank = 2; break;
  }
  return kind_rank * (1 << 24) + static_cast<int>(o.index);
}

bool const_value(const Operand &o, const std::vector<uint64_t> &constants,
                 WordWidth w, uint64_t &out) {
  if (o.kind != Operand::Kind::Const || o.index >= constants.size()) {
    return false;
  }
  out = constants[o.index] & w.mask();
  return true;
}

}  // namespace

bool instruction_is_canonical(const Instruction &ins,
                              const std::vector<uint64_t> &constants,
                              WordWidth w) {
  if (is_commutative(ins.opcode) && ins.operands.size() == 2 &&
      operand_key(ins.operands[0]) > operand_key(ins.operands[1])) {
    return false;
  }
  uint64_t v = 0;
  const uint64_t mask = w.mask();
  switch (ins.opcode) {
    case Opcode::Add:
    case Opcode::Or:
    case Opcode::Xor:
      // x op 0 and 0 op x are both the identity for these.
      for (const Operand &o : ins.operands) {
        if (const_value(o, constants, w, v) && v == 0) return false;
      }
      break;
    case Opcode::Sub:
    case Opcode::Lshr:
    case Opcode::Ashr:
      if (const_value(ins.operands[1], constants, w, v) && v == 0) {
        return false;
      }
      break;
    case Opcode::Mul:
      for (const Operand &o : ins.operands) {
        if (const_value(o, constants, w, v) && v == 1) return false;
      }
      break;
    case Opcode::Div:
      if (const_value(ins.operands[1], constants, w, v) && v == 1) {
        return false;
      }
      break;
    case Opcode::And:
    case Opcode::Min:
      for (const Operand &o : ins.operands) {
        if (const_value(o, constants, w, v) && v == mask) return false;
      }
      break;
    case Opcode::Max:
      for (const Operand &o : ins.operands) {
        if (const_value(o, constants, w, v) && v == 0) return false;
      }
      break;
    default: break;
  }
  return true;
}

bool program_is_canonical(const Program &p, WordWidth w) {
  for (const Instruction &ins : p.instructions) {
    if (!instruction_is_canonical(ins, p.constants, w)) return false;
  }
  return true;
}

}  // namespace lsynth::lvm
