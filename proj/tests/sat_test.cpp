#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "lsynth/lvm/interp.hpp"
#include "lsynth/sat/circuit.hpp"
#include "lsynth/sat/solver.hpp"

using namespace lsynth;
using sat::Lit;
using sat::mk_lit;
using sat::Result;

TEST_CASE("unit propagation and trivial verdicts") {
  sat::Solver s;
  sat::Var a = s.add_var(), b = s.add_var();
  CHECK(s.add_clause({mk_lit(a)}));
  CHECK(s.add_clause({sat::neg(mk_lit(a)), mk_lit(b)}));
  REQUIRE(s.solve() == Result::Sat);
  CHECK(s.model_value(a));
  CHECK(s.model_value(b));
  CHECK(s.add_clause({sat::neg(mk_lit(b))}) == false);
  CHECK(s.solve() == Result::Unsat);
}

TEST_CASE("pigeonhole 4 into 3 is unsatisfiable") {
  sat::Solver s;
  const int P = 4, H = 3;
  std::vector<std::vector<sat::Var>> v(P, std::vector<sat::Var>(H));
  for (int p = 0; p < P; ++p) {
    for (int h = 0; h < H; ++h) v[p][h] = s.add_var();
  }
  for (int p = 0; p < P; ++p) {
    std::vector<Lit> at_least;
    for (int h = 0; h < H; ++h) at_least.push_back(mk_lit(v[p][h]));
    s.add_clause(at_least);
  }
  for (int h = 0; h < H; ++h) {
    for (int p1 = 0; p1 < P; ++p1) {
      for (int p2 = p1 + 1; p2 < P; ++p2) {
        s.add_clause({sat::neg(mk_lit(v[p1][h])), sat::neg(mk_lit(v[p2][h]))});
      }
    }
  }
  CHECK(s.solve() == Result::Unsat);
}

namespace {

bool brute_force_sat(int nvars, const std::vector<std::vector<Lit>> &clauses) {
  for (uint32_t m = 0; m < (1u << nvars); ++m) {
    bool all = true;
    for (const auto &cl : clauses) {
      bool any = false;
      for (Lit l : cl) {
        bool val = (m >> sat::var_of(l)) & 1;
        if (val != sat::sign_of(l)) {
          any = true;
          break;
        }
      }
      if (!any) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("random 3-SAT agrees with brute force") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    int nvars = 4 + int(rng() % 8);
    int nclauses = int(nvars * (3 + int(rng() % 3)) / 2) + 2;
    std::vector<std::vector<Lit>> clauses;
    sat::Solver s;
    for (int i = 0; i < nvars; ++i) s.add_var();
    bool ok = true;
    for (int i = 0; i < nclauses; ++i) {
      std::vector<Lit> cl;
      for (int j = 0; j < 3; ++j) {
        cl.push_back(mk_lit(sat::Var(rng() % nvars), rng() & 1));
      }
      clauses.push_back(cl);
      ok = s.add_clause(cl) && ok;
    }
    bool want = brute_force_sat(nvars, clauses);
    Result got = ok ? s.solve() : Result::Unsat;
    CHECK((got == Result::Sat) == want);
    if (got == Result::Sat) {
      // The model must actually satisfy every clause.
      for (const auto &cl : clauses) {
        bool any = false;
        for (Lit l : cl) {
          if (s.model_value(sat::var_of(l)) != sat::sign_of(l)) any = true;
        }
        CHECK(any);
      }
    }
  }
}

TEST_CASE("budgeted solving is resumable") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    int nvars = 10;
    std::vector<std::vector<Lit>> clauses;
    sat::Solver full, stepped;
    for (int i = 0; i < nvars; ++i) {
      full.add_var();
      stepped.add_var();
    }
    bool ok1 = true, ok2 = true;
    for (int i = 0; i < 44; ++i) {
      std::vector<Lit> cl;
      for (int j = 0; j < 3; ++j) {
        cl.push_back(mk_lit(sat::Var(rng() % nvars), rng() & 1));
      }
      clauses.push_back(cl);
      ok1 = full.add_clause(cl) && ok1;
      ok2 = stepped.add_clause(cl) && ok2;
    }
    REQUIRE(ok1 == ok2);
    Result want = ok1 ? full.solve() : Result::Unsat;
    Result got = Result::Unknown;
    if (!ok2) {
      got = Result::Unsat;
    } else {
      for (int k = 0; k < 100000 && got == Result::Unknown; ++k) {
        got = stepped.solve(1);
      }
    }
    CHECK(got == want);
  }
}

TEST_CASE("bitvector circuits agree with the interpreter") {
  auto check_all = [](int w, int samples, uint64_t seed) {
    std::mt19937_64 rng(seed);
    const uint64_t mask = lvm::WordWidth{w}.mask();
    for (int i = 0; i < samples; ++i) {
      uint64_t a = rng() & mask, b = rng() & mask, c = rng() & mask;
      if (i % 3 == 0) b %= (w + 2);  // small shift amounts too
      for (lvm::Opcode op : lvm::all_opcodes()) {
        sat::Solver s;
        sat::CircuitBuilder cb(s);
        sat::Bv av = cb.bv_fresh(w), bv = cb.bv_fresh(w), cv = cb.bv_fresh(w);
        for (int bit = 0; bit < w; ++bit) {
          cb.assert_lit((a >> bit) & 1 ? av[bit] : cb.lnot(av[bit]));
          cb.assert_lit((b >> bit) & 1 ? bv[bit] : cb.lnot(bv[bit]));
          cb.assert_lit((c >> bit) & 1 ? cv[bit] : cb.lnot(cv[bit]));
        }
        sat::Bv out = cb.apply_opcode(op, av, bv, cv);
        REQUIRE(s.solve() == Result::Sat);
        uint64_t got = cb.bv_model_value(out);
        uint64_t want =
            lvm::eval_instruction(op, a, b, c, lvm::WordWidth{w});
        if (got != want) {
          CAPTURE((int)op);
          CAPTURE(w);
          CAPTURE(a);
          CAPTURE(b);
          REQUIRE(got == want);
        }
      }
    }
  };
  check_all(3, 64, 1);   // dense coverage at a tiny width
  check_all(4, 40, 2);
  check_all(7, 24, 3);   // non-power-of-two width exercises shift overflow
  check_all(8, 16, 4);
}

TEST_CASE("shift-by-variable circuits cover out-of-range amounts") {
  for (int w : {4, 5}) {
    const uint64_t mask = lvm::WordWidth{w}.mask();
    for (uint64_t a = 0; a <= mask; ++a) {
      for (uint64_t b = 0; b <= mask; ++b) {
        for (lvm::Opcode op : {lvm::Opcode::Lshr, lvm::Opcode::Ashr}) {
          sat::Solver s;
          sat::CircuitBuilder cb(s);
          sat::Bv av = cb.bv_const(w, a), bv = cb.bv_const(w, b);
          sat::Bv out = cb.apply_opcode(op, av, bv, av);
          REQUIRE(s.solve() == Result::Sat);
          CHECK(cb.bv_model_value(out) ==
                lvm::eval_instruction(op, a, b, 0, lvm::WordWidth{w}));
        }
      }
    }
  }
}
