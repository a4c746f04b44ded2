#include "lsynth/frontends/encode.hpp"

#include <map>
#include <stdexcept>

namespace lsynth::frontends {

namespace {

using specir::ArithOp;
using specir::BoolOp;
using specir::CmpOp;
using specir::Quant;
using specir::RawSpec;
using specir::SpecExpr;
using specir::UnknownSig;

SpecExpr conj(std::vector<SpecExpr> parts) {
  SpecExpr out = std::move(parts[0]);
  for (size_t i = 1; i < parts.size(); ++i) {
    out = SpecExpr::boolean(BoolOp::And, {std::move(out), std::move(parts[i])});
  }
  return out;
}

SpecExpr imp(SpecExpr a, SpecExpr b) {
  return SpecExpr::boolean(BoolOp::Implies, {std::move(a), std::move(b)});
}

// a >u b, in the normalized swapped-ult form the parser produces.
SpecExpr ugt(SpecExpr a, SpecExpr b) {
  return SpecExpr::compare(CmpOp::Ult, std::move(b), std::move(a));
}

std::string fresh_name(const std::string &base, const LoopSystem &sys) {
  auto taken = [&](const std::string &n) {
    for (const auto &[name, w] : sys.state_vars) {
      if (name == n) return true;
    }
    return false;
  };
  std::string n = base;
  while (taken(n)) n += "_";
  return n;
}

std::vector<SpecExpr> var_exprs(const LoopSystem &sys,
                                const std::string &suffix) {
  std::vector<SpecExpr> out;
  for (const auto &[name, w] : sys.state_vars) {
    out.push_back(SpecExpr::var(name + suffix));
  }
  return out;
}

void substitute_vars(SpecExpr &e, const std::map<std::string, SpecExpr> &repl) {
  if (e.kind == SpecExpr::Kind::Var) {
    auto it = repl.find(e.name);
    if (it != repl.end()) {
      e = it->second;
      return;
    }
  }
  for (SpecExpr &ch : e.children) substitute_vars(ch, repl);
}

void push_state_quants(RawSpec &spec, const LoopSystem &sys,
                       const std::string &suffix) {
  for (const auto &[name, w] : sys.state_vars) {
    spec.prefix.push_back({Quant::Forall, name + suffix, w});
  }
}

// Lexicographic strict decrease over the rank components: some leading
// prefix agrees and the next component strictly drops (unsigned order).
SpecExpr lex_decrease(const std::string &rank,
                      const std::vector<SpecExpr> &cur_args,
                      const std::vector<SpecExpr> &next_args, int dim) {
  SpecExpr result;
  bool have = false;
  for (int i = 0; i < dim; ++i) {
    std::vector<SpecExpr> parts;
    for (int j = 0; j < i; ++j) {
      parts.push_back(SpecExpr::compare(
          CmpOp::Eq,
          SpecExpr::apply(rank, cur_args, static_cast<uint32_t>(j)),
          SpecExpr::apply(rank, next_args, static_cast<uint32_t>(j))));
    }
    parts.push_back(
        ugt(SpecExpr::apply(rank, cur_args, static_cast<uint32_t>(i)),
            SpecExpr::apply(rank, next_args, static_cast<uint32_t>(i))));
    SpecExpr clause = conj(std::move(parts));
    if (!have) {
      result = std::move(clause);
      have = true;
    } else {
      result = SpecExpr::boolean(BoolOp::Or,
                                 {std::move(result), std::move(clause)});
    }
  }
  return result;
}

SpecExpr lex_positive(const std::string &rank,
                      const std::vector<SpecExpr> &cur_args, int dim) {
  SpecExpr result;
  bool have = false;
  for (int i = 0; i < dim; ++i) {
    std::vector<SpecExpr> parts;
    for (int j = 0; j < i; ++j) {
      parts.push_back(SpecExpr::compare(
          CmpOp::Eq,
          SpecExpr::apply(rank, cur_args, static_cast<uint32_t>(j)),
          SpecExpr::lit(0)));
    }
    parts.push_back(
        ugt(SpecExpr::apply(rank, cur_args, static_cast<uint32_t>(i)),
            SpecExpr::lit(0)));
    SpecExpr clause = conj(std::move(parts));
    if (!have) {
      result = std::move(clause);
      have = true;
    } else {
      result = SpecExpr::boolean(BoolOp::Or,
                                 {std::move(result), std::move(clause)});
    }
  }
  return result;
}

// The three non-termination conjuncts for a given choice of names.
SpecExpr nontermination_body(const LoopSystem &sys, const std::string &n_name,
                             const std::string &c_name,
                             const std::vector<SpecExpr> &x0_args) {
  std::vector<SpecExpr> xs = var_exprs(sys, "");
  std::vector<SpecExpr> c_of_x;
  for (size_t i = 0; i < sys.state_vars.size(); ++i) {
    c_of_x.push_back(
        SpecExpr::apply(c_name, xs, static_cast<uint32_t>(i)));
  }
  // B(x, C(x)): primed variables replaced by the successor's components.
  SpecExpr b = transition_expr(sys);
  std::map<std::string, SpecExpr> repl;
  for (size_t i = 0; i < sys.state_vars.size(); ++i) {
    repl.emplace(sys.state_vars[i].first + "'", c_of_x[i]);
  }
  substitute_vars(b, repl);

  SpecExpr n_x0 = SpecExpr::apply(n_name, x0_args);
  SpecExpr n_x = SpecExpr::apply(n_name, xs);
  SpecExpr n_cx = SpecExpr::apply(n_name, c_of_x);
  return conj({std::move(n_x0), imp(n_x, sys.guard),
               imp(SpecExpr::apply(n_name, xs),
                   SpecExpr::boolean(BoolOp::And,
                                     {std::move(b), std::move(n_cx)}))});
}

SpecExpr termination_body(const LoopSystem &sys, const std::string &r_name,
                          const std::string &w_name, int rank_dim) {
  std::vector<SpecExpr> xs = var_exprs(sys, "");
  std::vector<SpecExpr> xps = var_exprs(sys, "'");
  SpecExpr first =
      imp(SpecExpr::boolean(BoolOp::And, {sys.init, sys.guard}),
          SpecExpr::apply(w_name, xs));
  SpecExpr antecedent = conj({sys.guard, SpecExpr::apply(w_name, xs),
                              transition_expr(sys)});
  SpecExpr consequent = conj({SpecExpr::apply(w_name, xps),
                              lex_positive(r_name, xs, rank_dim),
                              lex_decrease(r_name, xs, xps, rank_dim)});
  SpecExpr second = imp(std::move(antecedent), std::move(consequent));
  return SpecExpr::boolean(BoolOp::And, {std::move(first), std::move(second)});
}

}  // namespace

RawSpec encode_safety(const LoopSystem &sys, EncodingInfo *info) {
  if (!sys.assertion) {
    throw std::invalid_argument("safety encoding requires an assertion");
  }
  RawSpec spec;
  std::string s_name = fresh_name("S", sys);
  spec.unknowns.push_back(
      {s_name, static_cast<uint32_t>(sys.state_vars.size()), 1});
  push_state_quants(spec, sys, "");
  push_state_quants(spec, sys, "'");

  std::vector<SpecExpr> xs = var_exprs(sys, "");
  std::vector<SpecExpr> xps = var_exprs(sys, "'");
  SpecExpr base = imp(sys.init, SpecExpr::apply(s_name, xs));
  SpecExpr inductive =
      imp(conj({SpecExpr::apply(s_name, xs), sys.guard, transition_expr(sys)}),
          SpecExpr::apply(s_name, xps));
  SpecExpr safe = imp(SpecExpr::boolean(
                          BoolOp::And,
                          {SpecExpr::apply(s_name, xs),
                           SpecExpr::boolean(BoolOp::Not, {sys.guard})}),
                      *sys.assertion);
  spec.body =
      conj({std::move(base), std::move(inductive), std::move(safe)});
  if (info) info->unknowns = {s_name};
  return spec;
}

RawSpec encode_termination(const LoopSystem &sys, int rank_dim,
                           EncodingInfo *info) {
  RawSpec spec;
  std::string r_name = fresh_name("R", sys);
  std::string w_name = fresh_name("W", sys);
  spec.unknowns.push_back({r_name,
                           static_cast<uint32_t>(sys.state_vars.size()),
                           static_cast<uint32_t>(rank_dim)});
  spec.unknowns.push_back(
      {w_name, static_cast<uint32_t>(sys.state_vars.size()), 1});
  push_state_quants(spec, sys, "");
  push_state_quants(spec, sys, "'");
  spec.body = termination_body(sys, r_name, w_name, rank_dim);
  if (info) info->unknowns = {r_name, w_name};
  return spec;
}

RawSpec encode_nontermination(const LoopSystem &sys, EncodingInfo *info) {
  RawSpec spec;
  std::string n_name = fresh_name("N", sys);
  std::string c_name = fresh_name("C", sys);
  spec.unknowns.push_back(
      {n_name, static_cast<uint32_t>(sys.state_vars.size()), 1});
  spec.unknowns.push_back({c_name,
                           static_cast<uint32_t>(sys.state_vars.size()),
                           static_cast<uint32_t>(sys.state_vars.size())});
  std::vector<SpecExpr> x0_args;
  for (const auto &[name, w] : sys.state_vars) {
    std::string x0 = fresh_name(name + "0", sys);
    spec.prefix.push_back({Quant::Exists, x0, w});
    x0_args.push_back(SpecExpr::var(x0));
  }
  push_state_quants(spec, sys, "");
  spec.body = nontermination_body(sys, n_name, c_name, x0_args);
  if (info) info->unknowns = {n_name, c_name};
  return spec;
}

RawSpec encode_termination_or_not(const LoopSystem &sys, int rank_dim,
                                  EncodingInfo *info) {
  RawSpec spec;
  std::string r_name = fresh_name("R", sys);
  std::string w_name = fresh_name("W", sys);
  std::string n_name = fresh_name("N", sys);
  std::string c_name = fresh_name("C", sys);
  uint32_t n = static_cast<uint32_t>(sys.state_vars.size());
  spec.unknowns.push_back({r_name, n, static_cast<uint32_t>(rank_dim)});
  spec.unknowns.push_back({w_name, n, 1});
  spec.unknowns.push_back({n_name, n, 1});
  spec.unknowns.push_back({c_name, n, n});
  std::vector<SpecExpr> x0_args;
  for (const auto &[name, w] : sys.state_vars) {
    std::string x0 = fresh_name(name + "0", sys);
    spec.prefix.push_back({Quant::Exists, x0, w});
    x0_args.push_back(SpecExpr::var(x0));
  }
  push_state_quants(spec, sys, "");
  push_state_quants(spec, sys, "'");
  spec.body = SpecExpr::boolean(
      BoolOp::Or, {termination_body(sys, r_name, w_name, rank_dim),
                   nontermination_body(sys, n_name, c_name, x0_args)});
  if (info) info->unknowns = {r_name, w_name, n_name, c_name};
  return spec;
}

specir::SpecExpr program_to_expr(const lvm::Program &p, size_t index,
                                 const std::vector<std::string> &input_names) {
  std::vector<SpecExpr> temps;
  temps.reserve(p.instructions.size());
  auto operand = [&](const lvm::Operand &o) -> SpecExpr {
    switch (o.kind) {
      case lvm::Operand::Kind::Input: return SpecExpr::var(input_names[o.index]);
      case lvm::Operand::Kind::Temp: return temps[o.index];
      case lvm::Operand::Kind::Const: return SpecExpr::lit(p.constants[o.index]);
    }
    return SpecExpr::lit(0);
  };
  for (const lvm::Instruction &ins : p.instructions) {
    SpecExpr a = operand(ins.operands[0]);
    SpecExpr b = ins.operands.size() > 1 ? operand(ins.operands[1])
                                         : SpecExpr::lit(0);
    SpecExpr e;
    using lvm::Opcode;
    switch (ins.opcode) {
      case Opcode::Add: e = SpecExpr::arith(ArithOp::Add, {a, b}); break;
      case Opcode::Sub: e = SpecExpr::arith(ArithOp::Sub, {a, b}); break;
      case Opcode::Mul: e = SpecExpr::arith(ArithOp::Mul, {a, b}); break;
      case Opcode::Div: e = SpecExpr::arith(ArithOp::Div, {a, b}); break;
      case Opcode::Neg: e = SpecExpr::arith(ArithOp::Neg, {a}); break;
      case Opcode::Mod: e = SpecExpr::arith(ArithOp::Mod, {a, b}); break;
      case Opcode::Min: e = SpecExpr::arith(ArithOp::Min, {a, b}); break;
      case Opcode::Max: e = SpecExpr::arith(ArithOp::Max, {a, b}); break;
      case Opcode::And: e = SpecExpr::arith(ArithOp::BitAnd, {a, b}); break;
      case Opcode::Or: e = SpecExpr::arith(ArithOp::BitOr, {a, b}); break;
      case Opcode::Xor: e = SpecExpr::arith(ArithOp::BitXor, {a, b}); break;
      case Opcode::Lshr: e = SpecExpr::arith(ArithOp::Lshr, {a, b}); break;
      case Opcode::Ashr: e = SpecExpr::arith(ArithOp::Ashr, {a, b}); break;
      case Opcode::Not: e = SpecExpr::arith(ArithOp::BitNot, {a}); break;
      case Opcode::Le: e = SpecExpr::compare(CmpOp::Ule, a, b); break;
      case Opcode::Lt: e = SpecExpr::compare(CmpOp::Ult, a, b); break;
      case Opcode::Sle: e = SpecExpr::compare(CmpOp::Sle, a, b); break;
      case Opcode::Slt: e = SpecExpr::compare(CmpOp::Slt, a, b); break;
      case Opcode::Eq: e = SpecExpr::compare(CmpOp::Eq, a, b); break;
      case Opcode::Neq: e = SpecExpr::compare(CmpOp::Ne, a, b); break;
      case Opcode::Implies:
        e = SpecExpr::boolean(BoolOp::Implies, {a, b});
        break;
      case Opcode::Ite:
        e = SpecExpr::ite(a, b, operand(ins.operands[2]));
        break;
    }
    temps.push_back(std::move(e));
  }
  return operand(p.outputs[index]);
}

RawSpec encode_superopt(const lvm::Program &reference, int w_target,
                        EncodingInfo *info) {
  if (!lvm::validate(reference).empty()) {
    throw std::invalid_argument("superopt reference program is ill-formed");
  }
  RawSpec spec;
  std::string p_name = "P";
  spec.unknowns.push_back({p_name, reference.arity,
                           static_cast<uint32_t>(reference.outputs.size())});
  std::vector<std::string> input_names;
  std::vector<SpecExpr> xs;
  for (uint32_t i = 0; i < reference.arity; ++i) {
    std::string nm = "x" + std::to_string(i);
    spec.prefix.push_back({Quant::Forall, nm, w_target});
    input_names.push_back(nm);
    xs.push_back(SpecExpr::var(nm));
  }
  std::vector<SpecExpr> parts;
  for (size_t k = 0; k < reference.outputs.size(); ++k) {
    parts.push_back(SpecExpr::compare(
        CmpOp::Eq, SpecExpr::apply(p_name, xs, static_cast<uint32_t>(k)),
        program_to_expr(reference, k, input_names)));
  }
  spec.body = conj(std::move(parts));
  if (info) info->unknowns = {p_name};
  return spec;
}

}  // namespace lsynth::frontends
