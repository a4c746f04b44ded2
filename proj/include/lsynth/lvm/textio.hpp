#ifndef LSYNTH_LVM_TEXTIO_HPP
#define LSYNTH_LVM_TEXTIO_HPP

#include <string>

#include "lsynth/lvm/program.hpp"

namespace lsynth::lvm {

// Textual program serialization. One instruction per line:
//   arity N
//   width W
//   consts v0,v1,...
//   t<i> := <opcode> <operand>...
//   outputs o1,...
// with operands written in<k>, t<k>, c<k>. Round-trips bit-exactly.
std::string to_text(const Program &p, WordWidth w);

// Parses the textual form. Throws std::invalid_argument with a line number
// on malformed input.
struct ParsedProgram {
  Program program;
  WordWidth width;
};
ParsedProgram from_text(const std::string &text);

// Rendering helpers shared with diagnostics.
std::string operand_text(const Operand &o);

}  // namespace lsynth::lvm

#endif
