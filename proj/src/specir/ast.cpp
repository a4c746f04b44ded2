#include "lsynth/specir/ast.hpp"

namespace lsynth::specir {

SpecExpr SpecExpr::lit(uint64_t v) {
  SpecExpr e;
  e.kind = Kind::Literal;
  e.literal = v;
  return e;
}

SpecExpr SpecExpr::var(std::string name) {
  SpecExpr e;
  e.kind = Kind::Var;
  e.name = std::move(name);
  return e;
}

SpecExpr SpecExpr::apply(std::string name, std::vector<SpecExpr> args,
                         uint32_t result_index) {
  SpecExpr e;
  e.kind = Kind::Apply;
  e.name = std::move(name);
  e.children = std::move(args);
  e.result_index = result_index;
  return e;
}

SpecExpr SpecExpr::arith(ArithOp op, std::vector<SpecExpr> operands) {
  SpecExpr e;
  e.kind = Kind::Arith;
  e.op = static_cast<int>(op);
  e.children = std::move(operands);
  return e;
}

SpecExpr SpecExpr::compare(CmpOp op, SpecExpr lhs, SpecExpr rhs) {
  SpecExpr e;
  e.kind = Kind::Compare;
  e.op = static_cast<int>(op);
  e.children.push_back(std::move(lhs));
  e.children.push_back(std::move(rhs));
  return e;
}

SpecExpr SpecExpr::boolean(BoolOp op, std::vector<SpecExpr> operands) {
  SpecExpr e;
  e.kind = Kind::Bool;
  e.op = static_cast<int>(op);
  e.children = std::move(operands);
  return e;
}

SpecExpr SpecExpr::ite(SpecExpr cond, SpecExpr then_e, SpecExpr else_e) {
  SpecExpr e;
  e.kind = Kind::Ite;
  e.children.push_back(std::move(cond));
  e.children.push_back(std::move(then_e));
  e.children.push_back(std::move(else_e));
  return e;
}

}  // namespace lsynth::specir
