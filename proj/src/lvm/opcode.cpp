#include "lsynth/lvm/opcode.hpp"

namespace lsynth::lvm {

namespace {
constexpr std::string_view kNames[kNumOpcodes] = {
    "add", "sub", "mul",  "div",  "neg", "mod", "min", "max",
    "and", "or",  "xor",  "lshr", "ashr", "not", "le",  "lt",
    "sle", "slt", "eq",   "neq",  "implies", "ite"};
}

std::string_view opcode_name(Opcode op) {
  return kNames[static_cast<size_t>(op)];
}

std::optional<Opcode> opcode_from_name(std::string_view name) {
  for (size_t i = 0; i < kNumOpcodes; ++i) {
    if (kNames[i] == name) return static_cast<Opcode>(i);
  }
  return std::nullopt;
}

}  // namespace lsynth::lvm
