#include "lsynth/lvm/interp.hpp"

namespace lsynth::lvm {

namespace {

// Sign-extends a w-bit value into a signed 64-bit integer.
inline int64_t to_signed(uint64_t v, WordWidth w) {
  if (w.bits >= 64) return static_cast<int64_t>(v);
  uint64_t sign = uint64_t{1} << (w.bits - 1);
  return static_cast<int64_t>((v ^ sign) - sign);
}

}  // namespace

uint64_t eval_instruction(Opcode op, uint64_t a, uint64_t b, uint64_t c,
                          WordWidth w) {
  const uint64_t mask = w.mask();
  switch (op) {
    case Opcode::Add: return (a + b) & mask;
    case Opcode::Sub: return (a - b) & mask;
    case Opcode::Mul: return (a * b) & mask;
    case Opcode::Div: return b == 0 ? mask : (a / b);
    case Opcode::Neg: return (~a + 1) & mask;
    case Opcode::Mod: return b == 0 ? a : (a % b);
    case Opcode::Min: return a < b ? a : b;
    case Opcode::Max: return a > b ? a : b;
    case Opcode::And: return a & b;
    case Opcode::Or: return a | b;
    case Opcode::Xor: return a ^ b;
    case Opcode::Lshr:
      return b >= static_cast<uint64_t>(w.bits) ? 0 : (a >> b);
    case Opcode::Ashr: {
      // Shift amounts >= w saturate to sign fill.
      uint64_t sh = b >= static_cast<uint64_t>(w.bits)
                        ? static_cast<uint64_t>(w.bits - 1)
                        : b;
      return static_cast<uint64_t>(to_signed(a, w) >> sh) & mask;
    }
    case Opcode::Not: return ~a & mask;
    case Opcode::Le: return a <= b ? 1 : 0;
    case Opcode::Lt: return a < b ? 1 : 0;
    case Opcode::Sle: return to_signed(a, w) <= to_signed(b, w) ? 1 : 0;
    case Opcode::Slt: return to_signed(a, w) < to_signed(b, w) ? 1 : 0;
    case Opcode::Eq: return a == b ? 1 : 0;
    case Opcode::Neq: return a != b ? 1 : 0;
    case Opcode::Implies: return (a == 0 || b != 0) ? 1 : 0;
    case Opcode::Ite: return a != 0 ? b : c;
  }
  return 0;  // unreachable
}

void exec_into(const Program &p, std::span<const uint64_t> inputs, WordWidth w,
               std::vector<uint64_t> &temps, std::vector<uint64_t> &out) {
  const uint64_t mask = w.mask();
  temps.resize(p.instructions.size());
  auto value = [&](const Operand &o) -> uint64_t {
    switch (o.kind) {
      case Operand::Kind::Input: return inputs[o.index] & mask;
      case Operand::Kind::Temp: return temps[o.index];
      case Operand::Kind::Const: return p.constants[o.index] & mask;
    }
    return 0;
  };
  for (size_t i = 0; i < p.instructions.size(); ++i) {
    const Instruction &ins = p.instructions[i];
    uint64_t a = value(ins.operands[0]);
    uint64_t b = ins.operands.size() > 1 ? value(ins.operands[1]) : 0;
    uint64_t c = ins.operands.size() > 2 ? value(ins.operands[2]) : 0;
    temps[i] = eval_instruction(ins.opcode, a, b, c, w);
  }
  out.clear();
  out.reserve(p.outputs.size());
  for (const Operand &o : p.outputs) out.push_back(value(o));
}

std::vector<uint64_t> exec(const Program &p, std::span<const uint64_t> inputs,
                           WordWidth w) {
  std::vector<uint64_t> temps, out;
  exec_into(p, inputs, w, temps, out);
  return out;
}

}  // namespace lsynth::lvm
