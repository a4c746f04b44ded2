#ifndef LSYNTH_SPECIR_AST_HPP
#define LSYNTH_SPECIR_AST_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "lsynth/lvm/program.hpp"

namespace lsynth::specir {

// Signature of a second-order unknown: a function from in_arity words to
// out_arity words. Skolemization introduces additional ones.
struct UnknownSig {
  std::string name;
  uint32_t in_arity = 0;
  uint32_t out_arity = 1;
  bool operator==(const UnknownSig &) const = default;
};

enum class ArithOp {
  Add, Sub, Mul, Div, Mod, BitAnd, BitOr, BitXor,
  Shl, Lshr, Ashr, BitNot, Neg, Min, Max,
};
enum class CmpOp { Eq, Ne, Ult, Ule, Slt, Sle };
enum class BoolOp { And, Or, Not, Implies };

// Quantifier-free matrix expression. Words and truth values share one
// domain: comparisons and boolean operators produce canonical 0/1, and any
// nonzero word is true in a condition position.
struct SpecExpr {
  enum class Kind { Literal, Var, Apply, Arith, Compare, Bool, Ite };
  Kind kind = Kind::Literal;
  uint64_t literal = 0;        // Literal
  std::string name;            // Var, Apply
  uint32_t result_index = 0;   // Apply: which output of the unknown
  int op = 0;                  // Arith/Compare/Bool operator
  std::vector<SpecExpr> children;

  bool operator==(const SpecExpr &) const = default;

  static SpecExpr lit(uint64_t v);
  static SpecExpr var(std::string name);
  static SpecExpr apply(std::string name, std::vector<SpecExpr> args,
                        uint32_t result_index = 0);
  static SpecExpr arith(ArithOp op, std::vector<SpecExpr> operands);
  static SpecExpr compare(CmpOp op, SpecExpr lhs, SpecExpr rhs);
  static SpecExpr boolean(BoolOp op, std::vector<SpecExpr> operands);
  static SpecExpr ite(SpecExpr cond, SpecExpr then_e, SpecExpr else_e);
};

enum class Quant { Forall, Exists };

struct QuantVar {
  Quant quant = Quant::Forall;
  std::string name;
  int width = 8;  // declared (target) width in bits
  bool operator==(const QuantVar &) const = default;
};

// A synthesis-fragment formula: existential second-order unknowns, a
// first-order quantifier prefix, and a quantifier-free body.
struct RawSpec {
  std::vector<UnknownSig> unknowns;
  std::vector<QuantVar> prefix;
  SpecExpr body;
  bool operator==(const RawSpec &) const = default;
};

// The Skolemized finite synthesis form: no first-order existentials remain.
struct SpecProblem {
  std::vector<UnknownSig> unknowns;
  std::vector<std::pair<std::string, int>> universals;  // (name, width)
  SpecExpr body;
  int input_bits = 0;  // sum of declared universal widths

  // Effective width of a universal at machine width w: min(declared, w).
  int var_width_at(size_t var_idx, lvm::WordWidth w) const {
    int d = universals[var_idx].second;
    return d < w.bits ? d : w.bits;
  }
  int input_bits_at(lvm::WordWidth w) const {
    int total = 0;
    for (size_t i = 0; i < universals.size(); ++i) total += var_width_at(i, w);
    return total;
  }
  const UnknownSig *find_unknown(const std::string &name) const {
    for (const UnknownSig &u : unknowns) {
      if (u.name == name) return &u;
    }
    return nullptr;
  }
};

}  // namespace lsynth::specir

#endif
