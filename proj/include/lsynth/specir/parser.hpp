#ifndef LSYNTH_SPECIR_PARSER_HPP
#define LSYNTH_SPECIR_PARSER_HPP

#include <stdexcept>
#include <string>

#include "lsynth/specir/ast.hpp"

namespace lsynth::specir {

struct ParseError : std::runtime_error {
  int line;
  int column;
  ParseError(int line_, int column_, const std::string &msg)
      : std::runtime_error("line " + std::to_string(line_) + ", col " +
                           std::to_string(column_) + ": " + msg),
        line(line_),
        column(column_) {}
};

// Parses the spec DSL:
//   fun NAME(IN_ARITY)->OUT_ARITY;
//   forall NAME:WIDTH; / exists NAME:WIDTH;
//   <boolean expression>
// Comments run from '#' to end of line. Throws ParseError on syntax errors,
// arity mismatches, undeclared identifiers, and widths outside [1,64].
RawSpec parse_spec(const std::string &text);

// Prints a spec such that parse_spec(print_spec(s)) == s structurally.
std::string print_spec(const RawSpec &s);

std::string print_expr(const SpecExpr &e);

// Expression-only entry point used by the loop-system frontend; `vars` and
// `unknowns` define the permitted identifiers.
SpecExpr parse_expr_text(const std::string &text,
                         const std::vector<QuantVar> &vars,
                         const std::vector<UnknownSig> &unknowns);

}  // namespace lsynth::specir

#endif
