#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "lsynth/lattice/generalize.hpp"
#include "lsynth/lattice/params.hpp"

using namespace lsynth;
using namespace lsynth::lattice;

TEST_CASE("next_params follows the decision tree") {
  ParamSet p{2, 1, 4, 8};
  auto q = next_params(p, SearchOutcome::SynthFailed, 16);
  REQUIRE(q.has_value());
  CHECK(q->length == 2);
  CHECK(q->num_consts == 2);

  ParamSet r{2, 2, 4, 8};
  auto s = next_params(r, SearchOutcome::SynthFailed, 16);
  REQUIRE(s.has_value());
  CHECK(s->length == 3);
  CHECK(s->num_consts == 0);

  ParamSet g{3, 1, 4, 8};
  auto t = next_params(g, SearchOutcome::VerifSmallOkGenFailed, 16);
  REQUIRE(t.has_value());
  CHECK(t->w_syn == 5);
  CHECK(t->length == 3);
  CHECK(t->num_consts == 1);

  auto u = next_params(g, SearchOutcome::VerifFailedSmallToo, 16);
  REQUIRE(u.has_value());
  CHECK(*u == g);
}

TEST_CASE("the length bound exhausts the lattice at the target width") {
  // input_bits = 2 so the bound is 4; at w_syn == w_target the ladder ends.
  ParamSet p{4, 4, 2, 2};
  CHECK(!next_params(p, SearchOutcome::SynthFailed, 4).has_value());
  // Below the target width the same edge widens and restarts instead.
  ParamSet q{4, 4, 2, 4};
  auto r = next_params(q, SearchOutcome::SynthFailed, 4);
  REQUIRE(r.has_value());
  CHECK(r->w_syn == 3);
  CHECK(r->length == 1);
  CHECK(r->num_consts == 0);
}

TEST_CASE("w_syn clamps at the target width") {
  ParamSet p{1, 0, 8, 8};
  auto q = next_params(p, SearchOutcome::VerifSmallOkGenFailed, 16);
  REQUIRE(q.has_value());
  CHECK(q->w_syn == 8);
}

TEST_CASE("next_params visits (l, c) in lexicographic order without c > l") {
  ParamSet p = initial_params(8);
  CHECK(p.length == 1);
  CHECK(p.num_consts == 0);
  CHECK(p.w_syn == 4);
  std::vector<std::pair<int, int>> visited;
  for (int i = 0; i < 20; ++i) {
    visited.push_back({p.length, p.num_consts});
    auto q = next_params(p, SearchOutcome::SynthFailed, 100);
    REQUIRE(q.has_value());
    p = *q;
  }
  for (size_t i = 1; i < visited.size(); ++i) {
    CHECK(visited[i] > visited[i - 1]);  // strictly increasing lex order
    CHECK(visited[i].second <= visited[i].first);
  }
}

TEST_CASE("extend_constant implements the six rules") {
  using lvm::WordWidth;
  // Rule 1: the width itself maps to the new width.
  CHECK(extend_constant(8, WordWidth{8}, WordWidth{32}, 1) == 32);
  CHECK(!extend_constant(9, WordWidth{8}, WordWidth{32}, 1).has_value());
  // Rule 2: width-1.
  CHECK(extend_constant(7, WordWidth{8}, WordWidth{32}, 2) == 31);
  CHECK(!extend_constant(255, WordWidth{8}, WordWidth{32}, 2).has_value());
  // Rule 3: width+1, wrapping at the small width.
  CHECK(extend_constant(9, WordWidth{8}, WordWidth{32}, 3) == 33);
  CHECK(extend_constant(0, WordWidth{1}, WordWidth{8}, 3) == 9);  // 2 mod 2
  // Rule 4: zero extension.
  CHECK(extend_constant(255, WordWidth{8}, WordWidth{32}, 4) == 255);
  // Rule 5: left-justify.
  CHECK(extend_constant(0xA, WordWidth{4}, WordWidth{8}, 5) == 0xA0);
  // Rule 6: repetition.
  CHECK(extend_constant(0xA, WordWidth{4}, WordWidth{8}, 6) == 0xAA);
  CHECK(extend_constant(255, WordWidth{8}, WordWidth{32}, 6) == 0xFFFFFFFFull);
  CHECK(extend_constant(0xF, WordWidth{4}, WordWidth{64}, 6) ==
        ~uint64_t{0});
  // Truncated repetition when the widths do not divide.
  CHECK(extend_constant(0b101, WordWidth{3}, WordWidth{5}, 6) == 0b01101);
}

TEST_CASE("extend_constant is the identity at equal widths") {
  using lvm::WordWidth;
  for (int w : {1, 3, 8, 17, 64}) {
    for (uint64_t v : {uint64_t{0}, uint64_t{1}, WordWidth{w}.mask(),
                       uint64_t(w), WordWidth{w}.mask() / 2}) {
      if ((v & WordWidth{w}.mask()) != v) continue;
      for (int rule = 1; rule <= 6; ++rule) {
        auto r = extend_constant(v, WordWidth{w}, WordWidth{w}, rule);
        if (r.has_value()) CHECK(*r == v);
      }
    }
  }
}

namespace {

cegis::Candidate make_candidate(std::vector<uint64_t> consts) {
  cegis::Candidate cand;
  lvm::Program p;
  p.arity = 1;
  p.constants = std::move(consts);
  if (p.constants.empty()) {
    p.instructions.push_back(
        {lvm::Opcode::Or, {lvm::Operand::input(0), lvm::Operand::input(0)}});
  } else {
    p.instructions.push_back(
        {lvm::Opcode::Lshr, {lvm::Operand::input(0), lvm::Operand::constant(0)}});
  }
  p.outputs.push_back(lvm::Operand::temp(0));
  cand.witness.emplace("P", std::move(p));
  return cand;
}

}  // namespace

TEST_CASE("generalize tries a constant-free witness unchanged") {
  cegis::Candidate cand = make_candidate({});
  int calls = 0;
  auto verify = [&](const specir::Witness &w) {
    ++calls;
    CHECK(w.at("P").constants.empty());
    return true;
  };
  auto lifted = generalize(cand, lvm::WordWidth{4}, lvm::WordWidth{32}, 216,
                           verify);
  REQUIRE(lifted.has_value());
  CHECK(calls == 1);
}

TEST_CASE("generalize rewrites width-1 constants by rule 2") {
  cegis::Candidate cand = make_candidate({7});
  std::vector<uint64_t> seen;
  auto verify = [&](const specir::Witness &w) {
    uint64_t c = w.at("P").constants[0];
    seen.push_back(c);
    return c == 31;  // only the rule-2 rewrite passes
  };
  auto lifted = generalize(cand, lvm::WordWidth{8}, lvm::WordWidth{32}, 216,
                           verify);
  REQUIRE(lifted.has_value());
  CHECK(lifted->at("P").constants[0] == 31);
  // Rule 1 was inapplicable (7 != 8), so rule 2 is the first attempt.
  CHECK(seen.front() == 31);
}

TEST_CASE("generalize fails when no rewriting verifies") {
  cegis::Candidate cand = make_candidate({5});
  int calls = 0;
  auto verify = [&](const specir::Witness &) {
    ++calls;
    return false;
  };
  auto lifted = generalize(cand, lvm::WordWidth{8}, lvm::WordWidth{32}, 216,
                           verify);
  CHECK(!lifted.has_value());
  CHECK(calls > 0);
}

TEST_CASE("generalize explores the per-constant product under the cap") {
  cegis::Candidate cand = make_candidate({7});
  lvm::Program q;
  q.arity = 1;
  q.constants = {4};
  q.instructions.push_back(
      {lvm::Opcode::Add, {lvm::Operand::input(0), lvm::Operand::constant(0)}});
  q.outputs.push_back(lvm::Operand::temp(0));
  cand.witness.emplace("Q", std::move(q));
  // Success requires rule 2 on the first constant (7 -> 31) and rule 4 on
  // the second (4 -> 4): a mixed assignment only the product reaches.
  auto verify = [&](const specir::Witness &w) {
    return w.at("P").constants[0] == 31 && w.at("Q").constants[0] == 4;
  };
  auto lifted = generalize(cand, lvm::WordWidth{8}, lvm::WordWidth{32}, 216,
                           verify);
  REQUIRE(lifted.has_value());
  CHECK(lifted->at("P").constants[0] == 31);
  CHECK(lifted->at("Q").constants[0] == 4);
}
