#include "lsynth/lvm/textio.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

namespace lsynth::lvm {

namespace {

[[noreturn]] void fail(size_t line, const std::string &msg) {
  throw std::invalid_argument("program text, line " + std::to_string(line) +
                              ": " + msg);
}

std::vector<std::string> split(const std::string &s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  parts.push_back(cur);
  return parts;
}

uint64_t parse_u64(const std::string &tok, size_t line) {
  uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    fail(line, "bad number '" + tok + "'");
  }
  return v;
}

Operand parse_operand(const std::string &tok, size_t line) {
  if (tok.size() >= 3 && tok[0] == 'i' && tok[1] == 'n') {
    return Operand::input(
        static_cast<uint32_t>(parse_u64(tok.substr(2), line)));
  }
  if (tok.size() >= 2 && tok[0] == 't') {
    return Operand::temp(static_cast<uint32_t>(parse_u64(tok.substr(1), line)));
  }
  if (tok.size() >= 2 && tok[0] == 'c') {
    return Operand::constant(
        static_cast<uint32_t>(parse_u64(tok.substr(1), line)));
  }
  fail(line, "bad operand '" + tok + "'");
}

}  // namespace

std::string operand_text(const Operand &o) {
  switch (o.kind) {
    case Operand::Kind::Input: return "in" + std::to_string(o.index);
    case Operand::Kind::Temp: return "t" + std::to_string(o.index);
    case Operand::Kind::Const: return "c" + std::to_string(o.index);
  }
  return "?";
}

std::string to_text(const Program &p, WordWidth w) {
  std::ostringstream os;
  os << "arity " << p.arity << "\n";
  os << "width " << w.bits << "\n";
  os << "consts";
  for (size_t i = 0; i < p.constants.size(); ++i) {
    os << (i == 0 ? " " : ",") << p.constants[i];
  }
  os << "\n";
  for (size_t i = 0; i < p.instructions.size(); ++i) {
    const Instruction &ins = p.instructions[i];
    os << "t" << i << " := " << opcode_name(ins.opcode);
    for (const Operand &o : ins.operands) os << " " << operand_text(o);
    os << "\n";
  }
  os << "outputs";
  for (size_t i = 0; i < p.outputs.size(); ++i) {
    os << (i == 0 ? " " : ",") << operand_text(p.outputs[i]);
  }
  os << "\n";
  return os.str();
}

ParsedProgram from_text(const std::string &text) {
  ParsedProgram result;
  Program &p = result.program;
  bool saw_arity = false, saw_width = false, saw_outputs = false;
  std::istringstream is(text);
  std::string raw;
  size_t lineno = 0;
  while (std::getline(is, raw)) {
    ++lineno;
    // Trim trailing carriage returns and surrounding whitespace.
    while (!raw.empty() && (raw.back() == '\r' || raw.back() == ' ')) {
      raw.pop_back();
    }
    size_t start = raw.find_first_not_of(' ');
    if (start == std::string::npos) continue;
    std::string lineS = raw.substr(start);
    std::istringstream ls(lineS);
    std::string head;
    ls >> head;
    if (head == "arity") {
      std::string v;
      ls >> v;
      p.arity = static_cast<uint32_t>(parse_u64(v, lineno));
      saw_arity = true;
    } else if (head == "width") {
      std::string v;
      ls >> v;
      uint64_t bits = parse_u64(v, lineno);
      if (bits < 1 || bits > 64) fail(lineno, "width out of [1,64]");
      result.width.bits = static_cast<int>(bits);
      saw_width = true;
    } else if (head == "consts") {
      std::string rest;
      std::getline(ls, rest);
      size_t s = rest.find_first_not_of(' ');
      if (s != std::string::npos) {
        for (const std::string &tok : split(rest.substr(s), ',')) {
          p.constants.push_back(parse_u64(tok, lineno));
        }
      }
    } else if (head == "outputs") {
      std::string rest;
      std::getline(ls, rest);
      size_t s = rest.find_first_not_of(' ');
      if (s == std::string::npos) fail(lineno, "empty outputs");
      for (const std::string &tok : split(rest.substr(s), ',')) {
        p.outputs.push_back(parse_operand(tok, lineno));
      }
      saw_outputs = true;
    } else if (!head.empty() && head[0] == 't') {
      uint64_t idx = parse_u64(head.substr(1), lineno);
      if (idx != p.instructions.size()) {
        fail(lineno, "instruction index out of order");
      }
      std::string assign;
      ls >> assign;
      if (assign != ":=") fail(lineno, "expected ':='");
      std::string opname;
      ls >> opname;
      auto op = opcode_from_name(opname);
      if (!op) fail(lineno, "unknown opcode '" + opname + "'");
      Instruction ins;
      ins.opcode = *op;
      std::string tok;
      while (ls >> tok) ins.operands.push_back(parse_operand(tok, lineno));
      if (ins.operands.size() != static_cast<size_t>(arity(*op))) {
        fail(lineno, "operand count does not match opcode arity");
      }
      p.instructions.push_back(std::move(ins));
    } else {
      fail(lineno, "unrecognized line '" + lineS + "'");
    }
  }
  if (!saw_arity) fail(lineno, "missing arity header");
  if (!saw_width) fail(lineno, "missing width header");
  if (!saw_outputs) fail(lineno, "missing outputs footer");
  return result;
}

}  // namespace lsynth::lvm
