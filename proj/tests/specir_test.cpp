#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "lsynth/lvm/table.hpp"
#include "lsynth/specir/eval.hpp"
#include "lsynth/specir/parser.hpp"
#include "lsynth/specir/skolemize.hpp"

using namespace lsynth;
using namespace lsynth::specir;

namespace {

Witness constant_witness(const std::string &name, uint64_t value) {
  lvm::Program p;
  p.arity = 1;
  p.constants = {value};
  p.outputs.push_back(lvm::Operand::constant(0));
  Witness w;
  w.emplace(name, std::move(p));
  return w;
}

}  // namespace

TEST_CASE("parse the running example") {
  RawSpec s = parse_spec("fun P(1)->1; forall x:8; P(x) >=u x");
  REQUIRE(s.unknowns.size() == 1);
  CHECK(s.unknowns[0].name == "P");
  CHECK(s.unknowns[0].in_arity == 1);
  CHECK(s.unknowns[0].out_arity == 1);
  REQUIRE(s.prefix.size() == 1);
  CHECK(s.prefix[0].quant == Quant::Forall);
  CHECK(s.prefix[0].name == "x");
  CHECK(s.prefix[0].width == 8);
  // a >=u b parses as b <=u a
  CHECK(s.body.kind == SpecExpr::Kind::Compare);
  CHECK(static_cast<CmpOp>(s.body.op) == CmpOp::Ule);
  CHECK(s.body.children[0] == SpecExpr::var("x"));
}

TEST_CASE("tautological spec parses") {
  RawSpec s = parse_spec("fun P(1)->1; forall x:4; P(x) = P(x)");
  CHECK(s.body.kind == SpecExpr::Kind::Compare);
}

TEST_CASE("application arity mismatch is rejected") {
  CHECK_THROWS_WITH_AS(parse_spec("fun P(1)->1; forall x:4; P(x, x) = x"),
                       doctest::Contains("expects 1 argument"), ParseError);
}

TEST_CASE("parse errors carry line and column") {
  try {
    parse_spec("fun P(1)->1;\nforall x:8;\nP(x) >=u @");
    FAIL("expected a parse error");
  } catch (const ParseError &e) {
    CHECK(e.line == 3);
    CHECK(e.column == 10);
  }
}

TEST_CASE("parser rejects bad declarations") {
  CHECK_THROWS_AS(parse_spec("fun P(1)->0; forall x:4; 1"), ParseError);
  CHECK_THROWS_AS(parse_spec("fun P(1)->1; forall x:65; P(x) = x"),
                  ParseError);
  CHECK_THROWS_AS(parse_spec("fun P(1)->1; forall x:0; P(x) = x"), ParseError);
  CHECK_THROWS_AS(parse_spec("fun P(1)->1; forall x:4; P(y) = x"), ParseError);
  CHECK_THROWS_AS(parse_spec("fun P(1)->1; fun P(2)->1; forall x:4; 1"),
                  ParseError);
  CHECK_THROWS_AS(parse_spec("fun P(1)->1; forall P:4; 1"), ParseError);
  CHECK_THROWS_AS(parse_spec("forall x:4; forall x:4; 1"), ParseError);
  CHECK_THROWS_AS(parse_spec("forall x:4; x = forall"), ParseError);
  CHECK_THROWS_AS(parse_spec("fun P(2)->2; forall x:4; P(x, x).2 = x"),
                  ParseError);
  CHECK_THROWS_AS(parse_spec("forall x:4; x = x extra"), ParseError);
}

TEST_CASE("comments and number bases") {
  RawSpec s = parse_spec(
      "# leading comment\n"
      "forall x:8;  # a variable\n"
      "(x & 0x0F) <=u 15");
  CHECK(s.prefix.size() == 1);
  CHECK(s.body.children[0].children[1].literal == 15);
}

TEST_CASE("operator precedence is conventional") {
  RawSpec s = parse_spec("forall x:8; x + 2 * x = x << 1 ? 1 = 1 : 0 = 1");
  CHECK(s.body.kind == SpecExpr::Kind::Ite);
  const SpecExpr &cond = s.body.children[0];
  CHECK(cond.kind == SpecExpr::Kind::Compare);
  CHECK(cond.children[0].kind == SpecExpr::Kind::Arith);
  CHECK(static_cast<ArithOp>(cond.children[0].op) == ArithOp::Add);
  CHECK(static_cast<ArithOp>(cond.children[0].children[1].op) == ArithOp::Mul);
}

TEST_CASE("print/parse round-trip on hand specs") {
  for (const char *text : {
           "fun P(1)->1; forall x:8; P(x) >=u x",
           "fun P(1)->1; forall x:4; P(x) = (x & (-x))",
           "fun R(2)->3; fun W(2)->1; forall x:4; forall y:4; "
           "(W(x, y) != 0 => R(x, y).2 >u 0) && (min(x, y) <=s ~y)",
           "fun K(0)->1; exists y:4; forall x:4; K() + y >=u (x ? y : 3)",
           "forall x:6; (x >>u 2) | (x >>s 1) | (x << 3) != 63 || x %u 3 = "
           "x /u 7",
       }) {
    RawSpec s = parse_spec(text);
    RawSpec back = parse_spec(print_spec(s));
    CHECK(back == s);
  }
}

namespace {

SpecExpr random_expr(std::mt19937_64 &rng, const std::vector<QuantVar> &vars,
                     const std::vector<UnknownSig> &unknowns, int depth) {
  if (depth == 0 || rng() % 4 == 0) {
    switch (rng() % 3) {
      case 0: return SpecExpr::lit(rng() % 16);
      case 1: {
        if (!vars.empty()) {
          return SpecExpr::var(vars[rng() % vars.size()].name);
        }
        return SpecExpr::lit(1);
      }
      default: {
        const UnknownSig &u = unknowns[rng() % unknowns.size()];
        std::vector<SpecExpr> args;
        for (uint32_t i = 0; i < u.in_arity; ++i) {
          args.push_back(random_expr(rng, vars, unknowns, 0));
        }
        return SpecExpr::apply(u.name, std::move(args),
                               u.out_arity > 1 ? rng() % u.out_arity : 0);
      }
    }
  }
  switch (rng() % 4) {
    case 0: {
      ArithOp ops[] = {ArithOp::Add, ArithOp::Sub, ArithOp::Mul,
                       ArithOp::Div, ArithOp::Mod, ArithOp::BitAnd,
                       ArithOp::BitOr, ArithOp::BitXor, ArithOp::Shl,
                       ArithOp::Lshr, ArithOp::Ashr, ArithOp::Min,
                       ArithOp::Max};
      return SpecExpr::arith(ops[rng() % 13],
                             {random_expr(rng, vars, unknowns, depth - 1),
                              random_expr(rng, vars, unknowns, depth - 1)});
    }
    case 1: {
      ArithOp ops[] = {ArithOp::Neg, ArithOp::BitNot};
      return SpecExpr::arith(ops[rng() % 2],
                             {random_expr(rng, vars, unknowns, depth - 1)});
    }
    case 2: {
      CmpOp ops[] = {CmpOp::Eq,  CmpOp::Ne,  CmpOp::Ult,
                     CmpOp::Ule, CmpOp::Slt, CmpOp::Sle};
      return SpecExpr::compare(ops[rng() % 6],
                               random_expr(rng, vars, unknowns, depth - 1),
                               random_expr(rng, vars, unknowns, depth - 1));
    }
    default: {
      if (rng() % 4 == 0) {
        return SpecExpr::ite(random_expr(rng, vars, unknowns, depth - 1),
                             random_expr(rng, vars, unknowns, depth - 1),
                             random_expr(rng, vars, unknowns, depth - 1));
      }
      if (rng() % 3 == 0) {
        return SpecExpr::boolean(
            BoolOp::Not, {random_expr(rng, vars, unknowns, depth - 1)});
      }
      BoolOp ops[] = {BoolOp::And, BoolOp::Or, BoolOp::Implies};
      return SpecExpr::boolean(ops[rng() % 3],
                               {random_expr(rng, vars, unknowns, depth - 1),
                                random_expr(rng, vars, unknowns, depth - 1)});
    }
  }
}

RawSpec random_spec(std::mt19937_64 &rng, bool allow_exists) {
  RawSpec s;
  s.unknowns.push_back({"P", uint32_t(rng() % 2), 1 + uint32_t(rng() % 2)});
  int nvars = 1 + int(rng() % 3);
  int exists_budget = allow_exists ? 2 : 0;
  for (int i = 0; i < nvars; ++i) {
    QuantVar q;
    q.name = std::string(1, char('x' + i));
    q.width = 1 + int(rng() % 2);
    bool ex = exists_budget > 0 && rng() % 3 == 0;
    if (ex) --exists_budget;
    q.quant = ex ? Quant::Exists : Quant::Forall;
    s.prefix.push_back(q);
  }
  s.body = random_expr(rng, s.prefix, s.unknowns, 3);
  return s;
}

}  // namespace

TEST_CASE("print/parse round-trip on random specs") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 200; ++i) {
    RawSpec s = random_spec(rng, true);
    RawSpec back = parse_spec(print_spec(s));
    CHECK(back == s);
  }
}

TEST_CASE("skolemize introduces a function per existential") {
  RawSpec s = parse_spec("fun P(1)->1; forall x:4; exists y:4; P(x) = y");
  SpecProblem prob = skolemize(s);
  REQUIRE(prob.unknowns.size() == 2);
  CHECK(prob.unknowns[0].name == "P");
  CHECK(prob.unknowns[1].name == "y");
  CHECK(prob.unknowns[1].in_arity == 1);  // one preceding universal
  CHECK(prob.unknowns[1].out_arity == 1);
  REQUIRE(prob.universals.size() == 1);
  CHECK(prob.input_bits == 4);
  // y occurrences became y(x) masked to the declared width.
  const SpecExpr &rhs = prob.body.children[1];
  REQUIRE(rhs.kind == SpecExpr::Kind::Arith);
  CHECK(static_cast<ArithOp>(rhs.op) == ArithOp::BitAnd);
  CHECK(rhs.children[0] ==
        SpecExpr::apply("y", {SpecExpr::var("x")}));
  CHECK(rhs.children[1] == SpecExpr::lit(15));
}

TEST_CASE("skolemize turns leading existentials into synthesized constants") {
  RawSpec s = parse_spec(
      "fun N(1)->1; exists x0:3; forall x:3; N(x0) != 0 && N(x) <=u x");
  SpecProblem prob = skolemize(s);
  REQUIRE(prob.unknowns.size() == 2);
  CHECK(prob.unknowns[1].name == "x0");
  CHECK(prob.unknowns[1].in_arity == 0);  // no preceding universals
  CHECK(prob.universals.size() == 1);
  CHECK(prob.input_bits == 3);
}

TEST_CASE("skolemize is the identity without existentials") {
  RawSpec s = parse_spec("fun P(1)->1; forall x:4; P(x) >=u x");
  SpecProblem prob = skolemize(s);
  CHECK(prob.unknowns == s.unknowns);
  CHECK(prob.body == s.body);
  CHECK(prob.input_bits == 4);
}

TEST_CASE("eval_sigma on the running example") {
  RawSpec s = parse_spec("fun P(1)->1; forall x:3; P(x) >=u x");
  SpecProblem prob = skolemize(s);
  Witness w8 = constant_witness("P", 8);
  std::vector<uint64_t> a7 = {7}, a3 = {3};
  CHECK(eval_sigma(prob, w8, a7, lvm::WordWidth{8}));
  CHECK(eval_sigma(prob, w8, a3, lvm::WordWidth{8}));
  Witness w5 = constant_witness("P", 5);
  CHECK(!eval_sigma(prob, w5, a7, lvm::WordWidth{8}));

  RawSpec taut = parse_spec("fun P(1)->1; forall x:3; P(x) = P(x)");
  SpecProblem tprob = skolemize(taut);
  CHECK(eval_sigma(tprob, w5, a7, lvm::WordWidth{8}));
}

TEST_CASE("eval_sigma contract errors") {
  RawSpec s = parse_spec("fun P(1)->1; forall x:3; P(x) >=u x");
  SpecProblem prob = skolemize(s);
  Witness w = constant_witness("P", 1);
  std::vector<uint64_t> overflow = {9};  // 9 does not fit 3 bits
  CHECK_THROWS_AS(eval_sigma(prob, w, overflow, lvm::WordWidth{8}),
                  std::invalid_argument);
  Witness empty;
  std::vector<uint64_t> ok = {1};
  CHECK_THROWS_AS(eval_sigma(prob, empty, ok, lvm::WordWidth{8}),
                  std::invalid_argument);
  Witness bad_arity;
  lvm::Program p;
  p.arity = 2;
  p.constants = {1};
  p.outputs.push_back(lvm::Operand::constant(0));
  bad_arity.emplace("P", p);
  CHECK_THROWS_AS(eval_sigma(prob, bad_arity, ok, lvm::WordWidth{8}),
                  std::invalid_argument);
}

TEST_CASE("compiled sigma agrees with the recursive evaluator") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    RawSpec s = random_spec(rng, false);
    SpecProblem prob = skolemize(s);
    // One random table-backed witness per unknown.
    Witness w;
    const UnknownSig &u = prob.unknowns[0];
    lvm::Program p;
    if (u.in_arity == 0) {
      p.arity = 0;
      for (uint32_t k = 0; k < u.out_arity; ++k) {
        p.constants.push_back(rng() % 4);
        p.outputs.push_back(lvm::Operand::constant(k));
      }
    } else {
      std::vector<std::pair<uint64_t, uint64_t>> table;
      for (uint64_t x = 0; x < 4; ++x) table.push_back({x, rng() % 4});
      p = lvm::compile_table(table, lvm::WordWidth{2});
      while (p.outputs.size() < u.out_arity) p.outputs.push_back(p.outputs[0]);
    }
    w.emplace(u.name, std::move(p));

    lvm::WordWidth width{2};
    CompiledSigma compiled(prob, width);
    auto ptrs = std::vector<const lvm::Program *>{&w.at(u.name)};
    auto domain = enumerate_domain(prob, width, 1 << 20);
    REQUIRE(domain.has_value());
    std::vector<uint64_t> values;
    for (uint64_t i = 0; i < domain->size(); ++i) {
      domain->assignment(i, values);
      CHECK(compiled.eval(ptrs, values) == eval_sigma(prob, w, values, width));
    }
  }
}

TEST_CASE("enumerate_domain yields every assignment once") {
  RawSpec s = parse_spec("fun P(1)->1; forall x:2; P(x) = x");
  SpecProblem prob = skolemize(s);
  auto domain = enumerate_domain(prob, lvm::WordWidth{8}, 1 << 20);
  REQUIRE(domain.has_value());
  CHECK(domain->size() == 4);
  std::set<std::vector<uint64_t>> seen;
  std::vector<uint64_t> v;
  for (uint64_t i = 0; i < domain->size(); ++i) {
    domain->assignment(i, v);
    CHECK(v[0] < 4);
    seen.insert(v);
  }
  CHECK(seen.size() == 4);

  RawSpec s2 = parse_spec("forall a:1; forall b:2; a <=u b");
  SpecProblem prob2 = skolemize(s2);
  auto domain2 = enumerate_domain(prob2, lvm::WordWidth{8}, 1 << 20);
  REQUIRE(domain2.has_value());
  CHECK(domain2->size() == 8);

  RawSpec s3 = parse_spec("forall x:64; x = x");
  SpecProblem prob3 = skolemize(s3);
  CHECK(!enumerate_domain(prob3, lvm::WordWidth{64}, 1 << 20).has_value());
}

TEST_CASE("variable widths scale down with the machine width") {
  RawSpec s = parse_spec("forall x:8; x <=u 255");
  SpecProblem prob = skolemize(s);
  CHECK(prob.input_bits_at(lvm::WordWidth{4}) == 4);
  CHECK(prob.input_bits_at(lvm::WordWidth{16}) == 8);
  auto domain = enumerate_domain(prob, lvm::WordWidth{3}, 1 << 20);
  REQUIRE(domain.has_value());
  CHECK(domain->size() == 8);
}

// Desk-scale equisatisfiability: brute-force truth of the original formula
// (functions enumerated as explicit tables, first-order quantifiers by
// recursion) must match brute-force truth of the Skolemized problem.
namespace {

struct TableFun {
  uint32_t in_arity;
  std::vector<uint64_t> values;  // indexed by packed input, single output
};

uint64_t eval_raw(const SpecExpr &e,
                  const std::map<std::string, TableFun> &funs,
                  std::map<std::string, uint64_t> &env, lvm::WordWidth w);

uint64_t apply_table(const TableFun &f, const std::vector<uint64_t> &args,
                     lvm::WordWidth w) {
  uint64_t idx = 0;
  for (uint64_t a : args) idx = (idx << w.bits) | (a & w.mask());
  return f.values[idx];
}

uint64_t eval_raw(const SpecExpr &e,
                  const std::map<std::string, TableFun> &funs,
                  std::map<std::string, uint64_t> &env, lvm::WordWidth w) {
  switch (e.kind) {
    case SpecExpr::Kind::Literal: return e.literal & w.mask();
    case SpecExpr::Kind::Var: return env.at(e.name) & w.mask();
    case SpecExpr::Kind::Apply: {
      std::vector<uint64_t> args;
      for (const SpecExpr &ch : e.children) {
        args.push_back(eval_raw(ch, funs, env, w));
      }
      return apply_table(funs.at(e.name), args, w);
    }
    case SpecExpr::Kind::Arith: {
      uint64_t a = eval_raw(e.children[0], funs, env, w);
      uint64_t b = e.children.size() > 1
                       ? eval_raw(e.children[1], funs, env, w)
                       : 0;
      using lvm::Opcode;
      switch (static_cast<ArithOp>(e.op)) {
        case ArithOp::Add: return lvm::eval_instruction(Opcode::Add, a, b, 0, w);
        case ArithOp::Sub: return lvm::eval_instruction(Opcode::Sub, a, b, 0, w);
        case ArithOp::Mul: return lvm::eval_instruction(Opcode::Mul, a, b, 0, w);
        case ArithOp::Div: return lvm::eval_instruction(Opcode::Div, a, b, 0, w);
        case ArithOp::Mod: return lvm::eval_instruction(Opcode::Mod, a, b, 0, w);
        case ArithOp::BitAnd: return a & b;
        case ArithOp::BitOr: return a | b;
        case ArithOp::BitXor: return a ^ b;
        case ArithOp::Shl:
          return b >= uint64_t(w.bits) ? 0 : (a << b) & w.mask();
        case ArithOp::Lshr: return lvm::eval_instruction(Opcode::Lshr, a, b, 0, w);
        case ArithOp::Ashr: return lvm::eval_instruction(Opcode::Ashr, a, b, 0, w);
        case ArithOp::BitNot: return ~a & w.mask();
        case ArithOp::Neg: return lvm::eval_instruction(Opcode::Neg, a, 0, 0, w);
        case ArithOp::Min: return std::min(a, b);
        case ArithOp::Max: return std::max(a, b);
      }
      return 0;
    }
    case SpecExpr::Kind::Compare: {
      uint64_t a = eval_raw(e.children[0], funs, env, w);
      uint64_t b = eval_raw(e.children[1], funs, env, w);
      using lvm::Opcode;
      switch (static_cast<CmpOp>(e.op)) {
        case CmpOp::Eq: return a == b;
        case CmpOp::Ne: return a != b;
        case CmpOp::Ult: return a < b;
        case CmpOp::Ule: return a <= b;
        case CmpOp::Slt: return lvm::eval_instruction(Opcode::Slt, a, b, 0, w);
        case CmpOp::Sle: return lvm::eval_instruction(Opcode::Sle, a, b, 0, w);
      }
      return 0;
    }
    case SpecExpr::Kind::Bool: {
      uint64_t a = eval_raw(e.children[0], funs, env, w);
      switch (static_cast<BoolOp>(e.op)) {
        case BoolOp::Not: return a == 0;
        case BoolOp::And:
          return a != 0 && eval_raw(e.children[1], funs, env, w) != 0;
        case BoolOp::Or:
          return a != 0 || eval_raw(e.children[1], funs, env, w) != 0;
        case BoolOp::Implies:
          return a == 0 || eval_raw(e.children[1], funs, env, w) != 0;
      }
      return 0;
    }
    case SpecExpr::Kind::Ite: {
      uint64_t c = eval_raw(e.children[0], funs, env, w);
      return eval_raw(e.children[c != 0 ? 1 : 2], funs, env, w);
    }
  }
  return 0;
}

bool raw_truth_rec(const RawSpec &s, size_t qi,
                   std::map<std::string, TableFun> &funs,
                   std::map<std::string, uint64_t> &env, lvm::WordWidth w) {
  if (qi == s.prefix.size()) {
    return eval_raw(s.body, funs, env, w) != 0;
  }
  const QuantVar &q = s.prefix[qi];
  uint64_t top = lvm::WordWidth{std::min(q.width, w.bits)}.mask();
  bool is_forall = q.quant == Quant::Forall;
  for (uint64_t v = 0; v <= top; ++v) {
    env[q.name] = v;
    bool sub = raw_truth_rec(s, qi + 1, funs, env, w);
    if (is_forall && !sub) {
      env.erase(q.name);
      return false;
    }
    if (!is_forall && sub) {
      env.erase(q.name);
      return true;
    }
  }
  env.erase(q.name);
  return is_forall;
}

// Enumerates every table for the declared unknown and checks truth of the
// first-order part under each.
bool raw_truth(const RawSpec &s, lvm::WordWidth w) {
  const UnknownSig &u = s.unknowns[0];
  size_t domain = size_t{1} << (w.bits * u.in_arity);
  size_t count = 1;
  for (size_t i = 0; i < domain; ++i) count *= (w.mask() + 1);
  for (size_t t = 0; t < count; ++t) {
    TableFun f;
    f.in_arity = u.in_arity;
    size_t rem = t;
    for (size_t i = 0; i < domain; ++i) {
      f.values.push_back(rem % (w.mask() + 1));
      rem /= (w.mask() + 1);
    }
    std::map<std::string, TableFun> funs;
    funs.emplace(u.name, f);
    std::map<std::string, uint64_t> env;
    if (raw_truth_rec(s, 0, funs, env, w)) return true;
  }
  return false;
}

// Brute-force truth of the Skolemized form: enumerate a program for every
// unknown (tables realized through compile_table) and test eval_sigma over
// the whole domain.
bool skolemized_truth(const SpecProblem &prob, lvm::WordWidth w) {
  std::vector<size_t> table_sizes;
  std::vector<size_t> domains;
  for (const UnknownSig &u : prob.unknowns) {
    size_t domain = size_t{1} << (w.bits * u.in_arity);
    domains.push_back(domain);
    size_t count = 1;
    for (size_t i = 0; i < domain; ++i) count *= (w.mask() + 1);
    table_sizes.push_back(count);
  }
  std::vector<size_t> idx(prob.unknowns.size(), 0);
  auto domain_iter = enumerate_domain(prob, w, 1 << 20);
  REQUIRE(domain_iter.has_value());
  for (;;) {
    Witness witness;
    for (size_t ui = 0; ui < prob.unknowns.size(); ++ui) {
      const UnknownSig &u = prob.unknowns[ui];
      size_t rem = idx[ui];
      std::vector<uint64_t> values;
      for (size_t i = 0; i < domains[ui]; ++i) {
        values.push_back(rem % (w.mask() + 1));
        rem /= (w.mask() + 1);
      }
      lvm::Program p;
      if (u.in_arity == 0) {
        p.arity = 0;
        p.constants = {values[0]};
        p.outputs.push_back(lvm::Operand::constant(0));
      } else {
        std::vector<std::pair<uint64_t, uint64_t>> table;
        for (size_t i = 0; i < domains[ui]; ++i) table.push_back({i, values[i]});
        p = lvm::compile_table(table, w);
      }
      witness.emplace(u.name, std::move(p));
    }
    bool all = true;
    std::vector<uint64_t> assignment;
    for (uint64_t i = 0; i < domain_iter->size() && all; ++i) {
      domain_iter->assignment(i, assignment);
      all = eval_sigma(prob, witness, assignment, w);
    }
    if (all) return true;
    size_t ui = idx.size();
    bool carried = false;
    while (ui-- > 0) {
      if (++idx[ui] < table_sizes[ui]) {
        carried = true;
        break;
      }
      idx[ui] = 0;
    }
    if (!carried) return false;
  }
}

RawSpec random_small_spec_for_equisat(std::mt19937_64 &rng) {
  RawSpec s;
  s.unknowns.push_back({"P", uint32_t(rng() % 2), 1});
  int pattern = int(rng() % 4);
  auto add = [&](Quant q, const char *n) {
    s.prefix.push_back({q, n, 1});
  };
  switch (pattern) {
    case 0: add(Quant::Exists, "y"); add(Quant::Forall, "x"); break;
    case 1: add(Quant::Forall, "x"); add(Quant::Exists, "y"); break;
    case 2:
      add(Quant::Forall, "x");
      add(Quant::Exists, "y");
      add(Quant::Forall, "z");
      break;
    default: add(Quant::Forall, "x"); break;
  }
  s.body = random_expr(rng, s.prefix, s.unknowns, 2);
  return s;
}

}  // namespace

TEST_CASE("Skolemization preserves satisfiability at desk scale") {
  std::mt19937_64 rng(2024);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    RawSpec s = random_small_spec_for_equisat(rng);
    lvm::WordWidth w{1};
    bool original = raw_truth(s, w);
    SpecProblem prob = skolemize(s);
    bool reduced = skolemized_truth(prob, w);
    CAPTURE(print_spec(s));
    CHECK(original == reduced);
    ++checked;
  }
  CHECK(checked == 40);
}
