#include "lsynth/lvm/program.hpp"

#include <string>

#include "lsynth/lvm/textio.hpp"

namespace lsynth::lvm {

namespace {

void check_operand(const Program &p, const Operand &o, size_t at,
                   std::vector<std::string> &out) {
  using Kind = Operand::Kind;
  switch (o.kind) {
    case Kind::Input:
      if (o.index >= p.arity) {
        out.push_back("instruction " + std::to_string(at) + ": input index " +
                      std::to_string(o.index) + " out of range (arity " +
                      std::to_string(p.arity) + ")");
      }
      break;
    case Kind::Const:
      if (o.index >= p.constants.size()) {
        out.push_back("instruction " + std::to_string(at) +
                      ": constant index " + std::to_string(o.index) +
                      " out of range (table size " +
                      std::to_string(p.constants.size()) + ")");
      }
      break;
    case Kind::Temp:
      // SSA: a temp may only reference a strictly earlier instruction.
      if (o.index >= at) {
        out.push_back("instruction " + std::to_string(at) +
                      ": forward/self reference to t" +
                      std::to_string(o.index));
      }
      break;
  }
}

}  // namespace

std::vector<std::string> validate(const Program &p) {
  std::vector<std::string> violations;
  for (size_t i = 0; i < p.instructions.size(); ++i) {
    const Instruction &ins = p.instructions[i];
    size_t want = static_cast<size_t>(arity(ins.opcode));
    if (ins.operands.size() != want) {
      violations.push_back("instruction " + std::to_string(i) +
                           ": arity mismatch for " +
                           std::string(opcode_name(ins.opcode)) + " (got " +
                           std::to_string(ins.operands.size()) + ", want " +
                           std::to_string(want) + ")");
      continue;
    }
    for (const Operand &o : ins.operands) check_operand(p, o, i, violations);
  }
  if (p.outputs.empty()) {
    violations.push_back("program has no output designators");
  }
  for (const Operand &o : p.outputs) {
    // Outputs may reference any input, constant, or defined temp.
    check_operand(p, o, p.instructions.size(), violations);
  }
  return violations;
}

}  // namespace lsynth::lvm
