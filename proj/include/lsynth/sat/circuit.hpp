#ifndef LSYNTH_SAT_CIRCUIT_HPP
#define LSYNTH_SAT_CIRCUIT_HPP

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "lsynth/lvm/opcode.hpp"
#include "lsynth/lvm/program.hpp"
#include "lsynth/sat/solver.hpp"

namespace lsynth::sat {

// A bitvector of literals, least-significant bit first.
using Bv = std::vector<Lit>;

// Tseitin encoder over a Solver, with constant folding and structural
// hashing so that repeated subcircuits (e.g. one interpreter instance per
// test vector) share gates.
class CircuitBuilder {
 public:
  explicit CircuitBuilder(Solver &s);

  Solver &solver() { return solver_; }

  Lit lit_true() const { return true_lit_; }
  Lit lit_false() const { return sat::neg(true_lit_); }
  bool is_true(Lit l) const { return l == true_lit_; }
  bool is_false(Lit l) const { return l == sat::neg(true_lit_); }

  Lit fresh();
  Lit land(Lit a, Lit b);
  Lit lor(Lit a, Lit b);
  Lit lxor(Lit a, Lit b);
  Lit lnot(Lit a) { return sat::neg(a); }
  Lit lmux(Lit sel, Lit t, Lit f);  // sel ? t : f
  Lit land_all(const std::vector<Lit> &ls);
  Lit lor_all(const std::vector<Lit> &ls);

  void assert_lit(Lit l);

  // --- bitvector layer ---
  Bv bv_const(int width, uint64_t value);
  Bv bv_fresh(int width);
  Bv bv_and(const Bv &a, const Bv &b);
  Bv bv_or(const Bv &a, const Bv &b);
  Bv bv_xor(const Bv &a, const Bv &b);
  Bv bv_not(const Bv &a);
  Bv bv_add(const Bv &a, const Bv &b);
  Bv bv_sub(const Bv &a, const Bv &b);
  Bv bv_neg(const Bv &a);
  Bv bv_mul(const Bv &a, const Bv &b);
  // Unsigned division semantics: division by zero yields all ones,
  // remainder by zero yields the dividend.
  Bv bv_udiv(const Bv &a, const Bv &b);
  Bv bv_urem(const Bv &a, const Bv &b);
  Bv bv_lshr(const Bv &a, const Bv &amount);
  Bv bv_ashr(const Bv &a, const Bv &amount);
  Bv bv_shl(const Bv &a, const Bv &amount);
  Bv bv_mux(Lit sel, const Bv &t, const Bv &f);
  Bv bv_min(const Bv &a, const Bv &b);
  Bv bv_max(const Bv &a, const Bv &b);
  Lit bv_eq(const Bv &a, const Bv &b);
  Lit bv_ult(const Bv &a, const Bv &b);
  Lit bv_ule(const Bv &a, const Bv &b);
  Lit bv_slt(const Bv &a, const Bv &b);
  Lit bv_sle(const Bv &a, const Bv &b);
  Lit bv_nonzero(const Bv &a);
  Bv bv_from_bool(int width, Lit b);

  // Full opcode dispatch over symbolic words.
  Bv apply_opcode(lvm::Opcode op, const Bv &a, const Bv &b, const Bv &c);

  uint64_t bv_model_value(const Bv &a) const;

 private:
  Solver &solver_;
  Lit true_lit_;

  struct Key {
    uint8_t op;
    Lit a, b, c;
    bool operator==(const Key &) const = default;
  };
  struct KeyHash {
    size_t operator()(const Key &k) const {
      uint64_t h = k.op;
      h = h * 1000003 + static_cast<uint32_t>(k.a);
      h = h * 1000003 + static_cast<uint32_t>(k.b);
      h = h * 1000003 + static_cast<uint32_t>(k.c);
      return static_cast<size_t>(h);
    }
  };
  std::unordered_map<Key, Lit, KeyHash> cache_;

  std::pair<Lit, Lit> half_add(Lit a, Lit b);
  std::pair<Lit, Lit> full_add(Lit a, Lit b, Lit cin);
  Bv add_with_carry_in(const Bv &a, const Bv &b, Lit cin);
};

}  // namespace lsynth::sat

#endif
