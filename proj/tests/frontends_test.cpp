#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "lsynth/cegis/solver.hpp"
#include "lsynth/frontends/encode.hpp"
#include "lsynth/specir/parser.hpp"
#include "lsynth/specir/skolemize.hpp"

using namespace lsynth;
using namespace lsynth::frontends;
using specir::SpecExpr;

namespace {

const char *kCountdown =
    "state x:4;\n"
    "init: 1;\n"
    "guard: x >u 0;\n"
    "body: x' = x - 1;\n";

const char *kCounting =
    "state x:4;\n"
    "init: x = 0;\n"
    "guard: x <u 10;\n"
    "body: x' = x + 1;\n"
    "assert: x = 10;\n";

const char *kIdentity =
    "state x:3;\n"
    "init: 1;\n"
    "guard: 1;\n"
    "body: x' = x;\n";

// Test-local expression evaluation over an explicit environment, kept
// separate from the production evaluator so encoder bugs cannot hide.
uint64_t direct_eval(const SpecExpr &e,
                     const std::map<std::string, uint64_t> &env, int w);

uint64_t direct_arith(specir::ArithOp op, uint64_t a, uint64_t b, int w) {
  const uint64_t mask = lvm::WordWidth{w}.mask();
  using specir::ArithOp;
  switch (op) {
    case ArithOp::Add: return (a + b) & mask;
    case ArithOp::Sub: return (a - b) & mask;
    case ArithOp::Mul: return (a * b) & mask;
    case ArithOp::Div: return b ? a / b : mask;
    case ArithOp::Mod: return b ? a % b : a;
    case ArithOp::BitAnd: return a & b;
    case ArithOp::BitOr: return a | b;
    case ArithOp::BitXor: return a ^ b;
    case ArithOp::Shl: return b >= uint64_t(w) ? 0 : (a << b) & mask;
    case ArithOp::Lshr: return b >= uint64_t(w) ? 0 : a >> b;
    case ArithOp::Ashr: {
      uint64_t sign = a >> (w - 1);
      uint64_t sh = b >= uint64_t(w) ? uint64_t(w - 1) : b;
      uint64_t r = a >> sh;
      if (sign) r |= mask ^ (mask >> sh);
      return r & mask;
    }
    case ArithOp::BitNot: return ~a & mask;
    case ArithOp::Neg: return (~a + 1) & mask;
    case ArithOp::Min: return std::min(a, b);
    case ArithOp::Max: return std::max(a, b);
  }
  return 0;
}

uint64_t direct_eval(const SpecExpr &e,
                     const std::map<std::string, uint64_t> &env, int w) {
  const uint64_t mask = lvm::WordWidth{w}.mask();
  switch (e.kind) {
    case SpecExpr::Kind::Literal: return e.literal & mask;
    case SpecExpr::Kind::Var: return env.at(e.name) & mask;
    case SpecExpr::Kind::Apply: throw std::logic_error("no unknowns here");
    case SpecExpr::Kind::Arith: {
      uint64_t a = direct_eval(e.children[0], env, w);
      uint64_t b =
          e.children.size() > 1 ? direct_eval(e.children[1], env, w) : 0;
      return direct_arith(static_cast<specir::ArithOp>(e.op), a, b, w);
    }
    case SpecExpr::Kind::Compare: {
      uint64_t a = direct_eval(e.children[0], env, w);
      uint64_t b = direct_eval(e.children[1], env, w);
      uint64_t sign = uint64_t{1} << (w - 1);
      using specir::CmpOp;
      switch (static_cast<CmpOp>(e.op)) {
        case CmpOp::Eq: return a == b;
        case CmpOp::Ne: return a != b;
        case CmpOp::Ult: return a < b;
        case CmpOp::Ule: return a <= b;
        case CmpOp::Slt: return (a ^ sign) < (b ^ sign);
        case CmpOp::Sle: return (a ^ sign) <= (b ^ sign);
      }
      return 0;
    }
    case SpecExpr::Kind::Bool: {
      uint64_t a = direct_eval(e.children[0], env, w);
      using specir::BoolOp;
      switch (static_cast<BoolOp>(e.op)) {
        case BoolOp::Not: return a == 0;
        case BoolOp::And:
          return a != 0 && direct_eval(e.children[1], env, w) != 0;
        case BoolOp::Or:
          return a != 0 || direct_eval(e.children[1], env, w) != 0;
        case BoolOp::Implies:
          return a == 0 || direct_eval(e.children[1], env, w) != 0;
      }
      return 0;
    }
    case SpecExpr::Kind::Ite: {
      uint64_t c = direct_eval(e.children[0], env, w);
      return direct_eval(e.children[c ? 1 : 2], env, w);
    }
  }
  return 0;
}

uint64_t run1(const lvm::Program &p, uint64_t x, int w) {
  std::vector<uint64_t> in = {x};
  return lvm::exec(p, in, lvm::WordWidth{w})[0];
}

lvm::Program identity_program() {
  lvm::Program p;
  p.arity = 1;
  p.instructions.push_back(
      {lvm::Opcode::Or, {lvm::Operand::input(0), lvm::Operand::input(0)}});
  p.outputs.push_back(lvm::Operand::temp(0));
  return p;
}

lvm::Program true_program() {
  lvm::Program p;
  p.arity = 1;
  p.instructions.push_back(
      {lvm::Opcode::Eq, {lvm::Operand::input(0), lvm::Operand::input(0)}});
  p.outputs.push_back(lvm::Operand::temp(0));
  return p;
}

lvm::Program le_const_program(uint64_t c) {
  lvm::Program p;
  p.arity = 1;
  p.constants = {c};
  p.instructions.push_back(
      {lvm::Opcode::Le, {lvm::Operand::input(0), lvm::Operand::constant(0)}});
  p.outputs.push_back(lvm::Operand::temp(0));
  return p;
}

}  // namespace

TEST_CASE("loop system parsing and round trip") {
  LoopSystem sys = parse_loop_system(kCounting);
  REQUIRE(sys.state_vars.size() == 1);
  CHECK(sys.state_vars[0] == std::pair<std::string, int>{"x", 4});
  CHECK(!sys.relational);
  REQUIRE(sys.assertion.has_value());
  LoopSystem back = parse_loop_system(print_loop_system(sys));
  CHECK(back.state_vars == sys.state_vars);
  CHECK(back.init == sys.init);
  CHECK(back.guard == sys.guard);
  CHECK(back.updates == sys.updates);
  CHECK(*back.assertion == *sys.assertion);
}

TEST_CASE("loop system parse errors") {
  CHECK_THROWS(parse_loop_system("init: 1; guard: 1; body: x' = x;"));
  CHECK_THROWS(parse_loop_system("state x:4; init: 1; body: x' = x;"));
  CHECK_THROWS(parse_loop_system("state x:4; init: 1; guard: 1;"));
  CHECK_THROWS(
      parse_loop_system("state x:4; init: 1; guard: 1; body: y' = x;"));
  CHECK_THROWS(
      parse_loop_system("state x:99; init: 1; guard: 1; body: x' = x;"));
  CHECK_THROWS(parse_loop_system(
      "state x:4, x:4; init: 1; guard: 1; body: x' = x;"));
  CHECK_THROWS(parse_loop_system(
      "state x:4; init: 1; guard: 1; body: x' = x, x' = x;"));
}

TEST_CASE("relational bodies parse primed variables") {
  LoopSystem sys = parse_loop_system(
      "state x:4, y:4;\n"
      "init: x = 0 && y = 0;\n"
      "guard: x <u 4;\n"
      "body-rel: x' = x + 1 && y' >=u y;\n");
  CHECK(sys.relational);
  LoopSystem back = parse_loop_system(print_loop_system(sys));
  CHECK(back.body_rel == sys.body_rel);
}

TEST_CASE("encode_safety produces the three implications") {
  LoopSystem sys = parse_loop_system(kCounting);
  EncodingInfo info;
  specir::RawSpec spec = encode_safety(sys, &info);
  REQUIRE(info.unknowns == std::vector<std::string>{"S"});
  REQUIRE(spec.unknowns.size() == 1);
  CHECK(spec.unknowns[0].in_arity == 1);
  CHECK(spec.unknowns[0].out_arity == 1);
  REQUIRE(spec.prefix.size() == 2);  // x and x'
  CHECK(spec.prefix[1].name == "x'");
  // Round-trips through the concrete syntax.
  specir::RawSpec back = specir::parse_spec(specir::print_spec(spec));
  CHECK(back == spec);

  LoopSystem no_assert = parse_loop_system(kCountdown);
  CHECK_THROWS_AS(encode_safety(no_assert), std::invalid_argument);
}

TEST_CASE("safety: S(x) = x <= 10 satisfies the counting loop formulas") {
  LoopSystem sys = parse_loop_system(kCounting);
  lvm::Program s_prog = le_const_program(10);
  const int w = 4;

  // Direct frontend-independent check of the three conjuncts over every
  // 4-bit (x, x') pair.
  for (uint64_t x = 0; x < 16; ++x) {
    for (uint64_t xp = 0; xp < 16; ++xp) {
      std::map<std::string, uint64_t> env = {{"x", x}, {"x'", xp}};
      bool i_holds = direct_eval(sys.init, env, w) != 0;
      bool g_holds = direct_eval(sys.guard, env, w) != 0;
      bool b_holds = (xp == ((x + 1) & 15));
      bool a_holds = direct_eval(*sys.assertion, env, w) != 0;
      bool s_x = run1(s_prog, x, w) != 0;
      bool s_xp = run1(s_prog, xp, w) != 0;
      CHECK((!i_holds || s_x));
      CHECK((!(s_x && g_holds && b_holds) || s_xp));
      CHECK((!(s_x && !g_holds) || a_holds));
    }
  }

  // The encoded sigma agrees with the direct check under this witness.
  specir::SpecProblem prob = specir::skolemize(encode_safety(sys));
  specir::Witness wit;
  wit.emplace("S", s_prog);
  for (uint64_t x = 0; x < 16; ++x) {
    for (uint64_t xp = 0; xp < 16; ++xp) {
      std::vector<uint64_t> a = {x, xp};
      CHECK(specir::eval_sigma(prob, wit, a, lvm::WordWidth{w}));
    }
  }
}

TEST_CASE("safety encoding of a never-running loop") {
  LoopSystem sys = parse_loop_system(
      "state x:3; init: x = 0; guard: 0; body: x' = x + 1; assert: x = 0;");
  specir::SpecProblem prob = specir::skolemize(encode_safety(sys));
  specir::Witness wit;
  // S(x) := x = 0 works: the loop never runs.
  lvm::Program p;
  p.arity = 1;
  p.constants = {0};
  p.instructions.push_back(
      {lvm::Opcode::Eq, {lvm::Operand::input(0), lvm::Operand::constant(0)}});
  p.outputs.push_back(lvm::Operand::temp(0));
  wit.emplace("S", p);
  for (uint64_t x = 0; x < 8; ++x) {
    for (uint64_t xp = 0; xp < 8; ++xp) {
      std::vector<uint64_t> a = {x, xp};
      CHECK(specir::eval_sigma(prob, wit, a, lvm::WordWidth{3}));
    }
  }
}

TEST_CASE("termination: R = x, W = true certify the countdown loop") {
  LoopSystem sys = parse_loop_system(kCountdown);
  EncodingInfo info;
  specir::RawSpec spec = encode_termination(sys, 1, &info);
  REQUIRE(info.unknowns == std::vector<std::string>{"R", "W"});
  specir::RawSpec back = specir::parse_spec(specir::print_spec(spec));
  CHECK(back == spec);

  lvm::Program r_prog = identity_program();
  lvm::Program w_prog = true_program();
  const int w = 4;

  // Direct check of the two implications for all (x, x').
  for (uint64_t x = 0; x < 16; ++x) {
    for (uint64_t xp = 0; xp < 16; ++xp) {
      bool g = x > 0;
      bool b = (xp == ((x - 1) & 15));
      bool w_x = run1(w_prog, x, w) != 0;
      bool w_xp = run1(w_prog, xp, w) != 0;
      uint64_t r_x = run1(r_prog, x, w), r_xp = run1(r_prog, xp, w);
      CHECK((!(g) || w_x));  // I = true
      CHECK((!(g && w_x && b) || (w_xp && r_x > 0 && r_x > r_xp)));
    }
  }

  specir::SpecProblem prob = specir::skolemize(spec);
  specir::Witness wit;
  wit.emplace("R", r_prog);
  wit.emplace("W", w_prog);
  for (uint64_t x = 0; x < 16; ++x) {
    for (uint64_t xp = 0; xp < 16; ++xp) {
      std::vector<uint64_t> a = {x, xp};
      CHECK(specir::eval_sigma(prob, wit, a, lvm::WordWidth{4}));
    }
  }
}

TEST_CASE("termination encoding of the stuck loop is never satisfied") {
  // guard true, x' = x: R(x) > R(x) is required, impossible.
  LoopSystem sys = parse_loop_system(kIdentity);
  specir::SpecProblem prob =
      specir::skolemize(encode_termination(sys, 1));
  cegis::SolverConfig cfg;
  cfg.timeout_ms = 15000;
  cegis::SynthesisResult res = cegis::refinement_loop(prob, cfg);
  CHECK(res.verdict != cegis::Verdict::Sat);
}

TEST_CASE("vacuous termination: a false guard needs no real rank") {
  LoopSystem sys = parse_loop_system(
      "state x:3; init: 1; guard: 0; body: x' = x;");
  specir::SpecProblem prob = specir::skolemize(encode_termination(sys, 1));
  cegis::SolverConfig cfg;
  cfg.timeout_ms = 60000;
  cegis::SynthesisResult res = cegis::refinement_loop(prob, cfg);
  REQUIRE(res.verdict == cegis::Verdict::Sat);
  CHECK(res.minimal_length == 2);  // both implications are vacuous
}

TEST_CASE("non-termination: N = true, C = id, x0 = 0 certify the identity loop") {
  LoopSystem sys = parse_loop_system(kIdentity);
  EncodingInfo info;
  specir::RawSpec spec = encode_nontermination(sys, &info);
  REQUIRE(info.unknowns == std::vector<std::string>{"N", "C"});
  // x0 is an existential that Skolemization turns into a constant program.
  specir::SpecProblem prob = specir::skolemize(spec);
  REQUIRE(prob.unknowns.size() == 3);
  CHECK(prob.unknowns[2].name == "x0");
  CHECK(prob.unknowns[2].in_arity == 0);

  specir::Witness wit;
  wit.emplace("N", true_program());
  wit.emplace("C", identity_program());
  lvm::Program x0;
  x0.arity = 0;
  x0.constants = {0};
  x0.outputs.push_back(lvm::Operand::constant(0));
  wit.emplace("x0", x0);
  for (uint64_t x = 0; x < 8; ++x) {
    std::vector<uint64_t> a = {x};
    CHECK(specir::eval_sigma(prob, wit, a, lvm::WordWidth{3}));
  }

  // Direct conjunct check: N(x0), N(x) -> G(x), N(x) -> B(x,C(x)) && N(C(x)).
  for (uint64_t x = 0; x < 8; ++x) {
    bool n_x0 = run1(wit.at("N"), 0, 3) != 0;
    bool n_x = run1(wit.at("N"), x, 3) != 0;
    uint64_t cx = run1(wit.at("C"), x, 3);
    bool b_x_cx = (cx == x);  // body: x' = x
    bool n_cx = run1(wit.at("N"), cx, 3) != 0;
    CHECK(n_x0);
    CHECK((!n_x || true));       // guard is 1
    CHECK((!n_x || (b_x_cx && n_cx)));
  }
}

TEST_CASE("non-termination with a live guard needs the right recurrence set") {
  // guard x > 0, body x' = x: N(x) := x = 1 with C = id and x0 = 1.
  LoopSystem sys = parse_loop_system(
      "state x:3; init: 1; guard: x >u 0; body: x' = x;");
  specir::SpecProblem prob = specir::skolemize(encode_nontermination(sys));
  specir::Witness wit;
  lvm::Program n;
  n.arity = 1;
  n.constants = {1};
  n.instructions.push_back(
      {lvm::Opcode::Eq, {lvm::Operand::input(0), lvm::Operand::constant(0)}});
  n.outputs.push_back(lvm::Operand::temp(0));
  wit.emplace("N", n);
  wit.emplace("C", identity_program());
  lvm::Program x0;
  x0.arity = 0;
  x0.constants = {1};
  x0.outputs.push_back(lvm::Operand::constant(0));
  wit.emplace("x0", x0);
  for (uint64_t x = 0; x < 8; ++x) {
    std::vector<uint64_t> a = {x};
    CHECK(specir::eval_sigma(prob, wit, a, lvm::WordWidth{3}));
  }
}

TEST_CASE("the countdown loop has no recurrence set within the bound") {
  LoopSystem sys = parse_loop_system(
      "state x:3;\ninit: 1;\nguard: x >u 0;\nbody: x' = x - 1;\n");
  specir::SpecProblem prob = specir::skolemize(encode_nontermination(sys));
  cegis::SolverConfig cfg;
  cfg.timeout_ms = 20000;
  cegis::SynthesisResult res = cegis::refinement_loop(prob, cfg);
  CHECK(res.verdict != cegis::Verdict::Sat);
}

TEST_CASE("program_to_expr agrees with the interpreter on random programs") {
  std::mt19937_64 rng(55);
  auto ops = lvm::all_opcodes();
  for (int trial = 0; trial < 200; ++trial) {
    int w = 1 + int(rng() % 8);
    lvm::Program p;
    p.arity = 1 + int(rng() % 2);
    int n_consts = int(rng() % 3);
    for (int i = 0; i < n_consts; ++i) {
      p.constants.push_back(rng() & lvm::WordWidth{w}.mask());
    }
    int len = 1 + int(rng() % 4);
    for (int i = 0; i < len; ++i) {
      lvm::Instruction ins;
      ins.opcode = ops[rng() % ops.size()];
      uint32_t pool = p.arity + i + n_consts;
      for (int j = 0; j < lvm::arity(ins.opcode); ++j) {
        uint32_t d = uint32_t(rng() % pool);
        if (d < p.arity) {
          ins.operands.push_back(lvm::Operand::input(d));
        } else if (d < p.arity + uint32_t(i)) {
          ins.operands.push_back(lvm::Operand::temp(d - p.arity));
        } else {
          ins.operands.push_back(lvm::Operand::constant(d - p.arity - i));
        }
      }
      p.instructions.push_back(ins);
    }
    p.outputs.push_back(lvm::Operand::temp(len - 1));

    std::vector<std::string> names;
    for (uint32_t i = 0; i < p.arity; ++i) {
      names.push_back("x" + std::to_string(i));
    }
    SpecExpr e = program_to_expr(p, 0, names);
    for (int sample = 0; sample < 20; ++sample) {
      std::map<std::string, uint64_t> env;
      std::vector<uint64_t> in;
      for (uint32_t i = 0; i < p.arity; ++i) {
        uint64_t v = rng() & lvm::WordWidth{w}.mask();
        env["x" + std::to_string(i)] = v;
        in.push_back(v);
      }
      CHECK(direct_eval(e, env, w) == lvm::exec(p, in, lvm::WordWidth{w})[0]);
    }
  }
}

TEST_CASE("encode_superopt finds a shorter equivalent of a padded reference") {
  // Reference: x + 3 computed in two instructions.
  lvm::Program ref;
  ref.arity = 1;
  ref.constants = {1, 2};
  ref.instructions.push_back(
      {lvm::Opcode::Add, {lvm::Operand::input(0), lvm::Operand::constant(0)}});
  ref.instructions.push_back(
      {lvm::Opcode::Add, {lvm::Operand::temp(0), lvm::Operand::constant(1)}});
  ref.outputs.push_back(lvm::Operand::temp(1));

  EncodingInfo info;
  specir::RawSpec spec = encode_superopt(ref, 3, &info);
  CHECK(info.unknowns == std::vector<std::string>{"P"});
  specir::RawSpec back = specir::parse_spec(specir::print_spec(spec));
  CHECK(back == spec);

  specir::SpecProblem prob = specir::skolemize(spec);
  cegis::SolverConfig cfg;
  cfg.timeout_ms = 60000;
  cegis::SynthesisResult res = cegis::refinement_loop(prob, cfg);
  REQUIRE(res.verdict == cegis::Verdict::Sat);
  CHECK(res.minimal_length == 1);
  for (uint64_t x = 0; x < 8; ++x) {
    CHECK(run1(res.witness.at("P"), x, 3) == ((x + 3) & 7));
  }
}

TEST_CASE("encode_superopt rejects ill-formed references") {
  lvm::Program bad;
  bad.arity = 1;
  bad.instructions.push_back({lvm::Opcode::Add, {lvm::Operand::temp(3)}});
  bad.outputs.push_back(lvm::Operand::temp(0));
  CHECK_THROWS_AS(encode_superopt(bad, 8), std::invalid_argument);
}

TEST_CASE("termination-or-not is satisfiable on both corpus archetypes") {
  cegis::SolverConfig cfg;
  cfg.timeout_ms = 60000;
  {
    LoopSystem sys = parse_loop_system(kIdentity);
    specir::SpecProblem prob =
        specir::skolemize(encode_termination_or_not(sys, 1));
    cegis::SynthesisResult res = cegis::refinement_loop(prob, cfg);
    CHECK(res.verdict == cegis::Verdict::Sat);
  }
  {
    LoopSystem sys = parse_loop_system(kCountdown);
    specir::SpecProblem prob =
        specir::skolemize(encode_termination_or_not(sys, 1));
    cegis::SynthesisResult res = cegis::refinement_loop(prob, cfg);
    CHECK(res.verdict == cegis::Verdict::Sat);
  }
}

TEST_CASE("fresh unknown names avoid state-variable collisions") {
  LoopSystem sys = parse_loop_system(
      "state S:3, R:3; init: 1; guard: S >u 0; body: S' = S - 1, R' = R;");
  EncodingInfo info;
  encode_termination(sys, 1, &info);
  CHECK(info.unknowns[0] != "R");
  CHECK(info.unknowns[1] != "S");
}
