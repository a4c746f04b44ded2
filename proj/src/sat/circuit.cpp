#include "lsynth/sat/circuit.hpp"

#include <cassert>

namespace lsynth::sat {

CircuitBuilder::CircuitBuilder(Solver &s) : solver_(s) {
  Var v = solver_.add_var();
  true_lit_ = mk_lit(v);
  solver_.add_clause({true_lit_});
}

Lit CircuitBuilder::fresh() { return mk_lit(solver_.add_var()); }

void CircuitBuilder::assert_lit(Lit l) { solver_.add_clause({l}); }

Lit CircuitBuilder::land(Lit a, Lit b) {
  if (is_false(a) || is_false(b)) return lit_false();
  if (is_true(a)) return b;
  if (is_true(b)) return a;
  if (a == b) return a;
  if (a == sat::neg(b)) return lit_false();
  if (a > b) std::swap(a, b);
  Key k{0, a, b, 0};
  auto it = cache_.find(k);
  if (it != cache_.end()) return it->second;
  Lit o = fresh();
  solver_.add_clause({sat::neg(o), a});
  solver_.add_clause({sat::neg(o), b});
  solver_.add_clause({o, sat::neg(a), sat::neg(b)});
  cache_.emplace(k, o);
  return o;
}

Lit CircuitBuilder::lor(Lit a, Lit b) {
  return sat::neg(land(sat::neg(a), sat::neg(b)));
}

Lit CircuitBuilder::lxor(Lit a, Lit b) {
  if (is_false(a)) return b;
  if (is_false(b)) return a;
  if (is_true(a)) return sat::neg(b);
  if (is_true(b)) return sat::neg(a);
  if (a == b) return lit_false();
  if (a == sat::neg(b)) return lit_true();
  // Canonicalize on positive phases: x ^ y with parity folded into output.
  bool flip = false;
  if (sign_of(a)) {
    a = sat::neg(a);
    flip = !flip;
  }
  if (sign_of(b)) {
    b = sat::neg(b);
    flip = !flip;
  }
  if (a > b) std::swap(a, b);
  Key k{1, a, b, 0};
  auto it = cache_.find(k);
  Lit o;
  if (it != cache_.end()) {
    o = it->second;
  } else {
    o = fresh();
    solver_.add_clause({sat::neg(o), a, b});
    solver_.add_clause({sat::neg(o), sat::neg(a), sat::neg(b)});
    solver_.add_clause({o, sat::neg(a), b});
    solver_.add_clause({o, a, sat::neg(b)});
    cache_.emplace(k, o);
  }
  return flip ? sat::neg(o) : o;
}

Lit CircuitBuilder::lmux(Lit sel, Lit t, Lit f) {
  if (is_true(sel)) return t;
  if (is_false(sel)) return f;
  if (t == f) return t;
  if (is_true(t) && is_false(f)) return sel;
  if (is_false(t) && is_true(f)) return sat::neg(sel);
  Key k{2, sel, t, f};
  auto it = cache_.find(k);
  if (it != cache_.end()) return it->second;
  Lit o = fresh();
  solver_.add_clause({sat::neg(sel), sat::neg(t), o});
  solver_.add_clause({sat::neg(sel), t, sat::neg(o)});
  solver_.add_clause({sel, sat::neg(f), o});
  solver_.add_clause({sel, f, sat::neg(o)});
  cache_.emplace(k, o);
  return o;
}

Lit CircuitBuilder::land_all(const std::vector<Lit> &ls) {
  Lit acc = lit_true();
  for (Lit l : ls) acc = land(acc, l);
  return acc;
}

Lit CircuitBuilder::lor_all(const std::vector<Lit> &ls) {
  Lit acc = lit_false();
  for (Lit l : ls) acc = lor(acc, l);
  return acc;
}

Bv CircuitBuilder::bv_const(int width, uint64_t value) {
  Bv out(width);
  for (int i = 0; i < width; ++i) {
    out[i] = (value >> i) & 1 ? lit_true() : lit_false();
  }
  return out;
}

Bv CircuitBuilder::bv_fresh(int width) {
  Bv out(width);
  for (int i = 0; i < width; ++i) out[i] = fresh();
  return out;
}

Bv CircuitBuilder::bv_and(const Bv &a, const Bv &b) {
  Bv out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = land(a[i], b[i]);
  return out;
}

Bv CircuitBuilder::bv_or(const Bv &a, const Bv &b) {
  Bv out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = lor(a[i], b[i]);
  return out;
}

Bv CircuitBuilder::bv_xor(const Bv &a, const Bv &b) {
  Bv out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = lxor(a[i], b[i]);
  return out;
}

Bv CircuitBuilder::bv_not(const Bv &a) {
  Bv out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = sat::neg(a[i]);
  return out;
}

std::pair<Lit, Lit> CircuitBuilder::full_add(Lit a, Lit b, Lit cin) {
  Lit sum = lxor(lxor(a, b), cin);
  Lit carry = lor(land(a, b), land(cin, lxor(a, b)));
  return {sum, carry};
}

Bv CircuitBuilder::add_with_carry_in(const Bv &a, const Bv &b, Lit cin) {
  Bv out(a.size());
  Lit carry = cin;
  for (size_t i = 0; i < a.size(); ++i) {
    auto [s, c] = full_add(a[i], b[i], carry);
    out[i] = s;
    carry = c;
  }
  return out;
}

Bv CircuitBuilder::bv_add(const Bv &a, const Bv &b) {
  return add_with_carry_in(a, b, lit_false());
}

Bv CircuitBuilder::bv_sub(const Bv &a, const Bv &b) {
  return add_with_carry_in(a, bv_not(b), lit_true());
}

Bv CircuitBuilder::bv_neg(const Bv &a) {
  return bv_sub(bv_const(static_cast<int>(a.size()), 0), a);
}

Bv CircuitBuilder::bv_mul(const Bv &a, const Bv &b) {
  int w = static_cast<int>(a.size());
  Bv acc = bv_const(w, 0);
  for (int i = 0; i < w; ++i) {
    // acc += (b[i] ? a : 0) << i
    Bv shifted(w, lit_false());
    for (int j = i; j < w; ++j) shifted[j] = land(a[j - i], b[i]);
    acc = bv_add(acc, shifted);
  }
  return acc;
}

Bv CircuitBuilder::bv_udiv(const Bv &a, const Bv &b) {
  int w = static_cast<int>(a.size());
  // Restoring division, MSB first.
  Bv rem = bv_const(w, 0);
  Bv quot(w, lit_false());
  for (int i = w - 1; i >= 0; --i) {
    // rem = (rem << 1) | a[i]
    for (int j = w - 1; j > 0; --j) rem[j] = rem[j - 1];
    rem[0] = a[i];
    Lit ge = bv_ule(b, rem);
    rem = bv_mux(ge, bv_sub(rem, b), rem);
    quot[i] = ge;
  }
  Lit bz = sat::neg(bv_nonzero(b));
  return bv_mux(bz, bv_const(w, ~uint64_t{0}), quot);
}

Bv CircuitBuilder::bv_urem(const Bv &a, const Bv &b) {
  int w = static_cast<int>(a.size());
  Bv rem = bv_const(w, 0);
  for (int i = w - 1; i >= 0; --i) {
    for (int j = w - 1; j > 0; --j) rem[j] = rem[j - 1];
    rem[0] = a[i];
    Lit ge = bv_ule(b, rem);
    rem = bv_mux(ge, bv_sub(rem, b), rem);
  }
  Lit bz = sat::neg(bv_nonzero(b));
  return bv_mux(bz, a, rem);
}

namespace {
int shift_sel_bits(int width) {
  int n = 0;
  while ((1 << n) < width) ++n;
  return n;
}
}  // namespace

Bv CircuitBuilder::bv_lshr(const Bv &a, const Bv &amount) {
  int w = static_cast<int>(a.size());
  int sel_bits = shift_sel_bits(w);
  Bv cur = a;
  for (int s = 0; s < sel_bits; ++s) {
    int dist = 1 << s;
    Bv shifted(w, lit_false());
    for (int j = 0; j + dist < w; ++j) shifted[j] = cur[j + dist];
    cur = bv_mux(amount[s], shifted, cur);
  }
  // Any set bit at or above the selector positions means shift >= width,
  // as do selector-range amounts in [width, 2^sel_bits) when the width is
  // not a power of two.
  std::vector<Lit> high;
  for (int i = sel_bits; i < w; ++i) high.push_back(amount[i]);
  if ((1 << sel_bits) != w) {
    Lit ge = bv_ule(bv_const(w, static_cast<uint64_t>(w)), amount);
    high.push_back(ge);
  }
  Lit overflow = lor_all(high);
  return bv_mux(overflow, bv_const(w, 0), cur);
}

Bv CircuitBuilder::bv_shl(const Bv &a, const Bv &amount) {
  int w = static_cast<int>(a.size());
  int sel_bits = shift_sel_bits(w);
  Bv cur = a;
  for (int s = 0; s < sel_bits; ++s) {
    int dist = 1 << s;
    Bv shifted(w, lit_false());
    for (int j = dist; j < w; ++j) shifted[j] = cur[j - dist];
    cur = bv_mux(amount[s], shifted, cur);
  }
  std::vector<Lit> high;
  for (int i = sel_bits; i < w; ++i) high.push_back(amount[i]);
  if ((1 << sel_bits) != w) {
    Lit ge = bv_ule(bv_const(w, static_cast<uint64_t>(w)), amount);
    high.push_back(ge);
  }
  Lit overflow = lor_all(high);
  return bv_mux(overflow, bv_const(w, 0), cur);
}

Bv CircuitBuilder::bv_ashr(const Bv &a, const Bv &amount) {
  int w = static_cast<int>(a.size());
  int sel_bits = shift_sel_bits(w);
  Lit sign = a[w - 1];
  Bv cur = a;
  for (int s = 0; s < sel_bits; ++s) {
    int dist = 1 << s;
    Bv shifted(w, sign);
    for (int j = 0; j + dist < w; ++j) shifted[j] = cur[j + dist];
    cur = bv_mux(amount[s], shifted, cur);
  }
  std::vector<Lit> high;
  for (int i = sel_bits; i < w; ++i) high.push_back(amount[i]);
  if ((1 << sel_bits) != w) {
    Lit ge = bv_ule(bv_const(w, static_cast<uint64_t>(w)), amount);
    high.push_back(ge);
  }
  Lit overflow = lor_all(high);
  Bv fill(w, sign);
  return bv_mux(overflow, fill, cur);
}

Bv CircuitBuilder::bv_mux(Lit sel, const Bv &t, const Bv &f) {
  Bv out(t.size());
  for (size_t i = 0; i < t.size(); ++i) out[i] = lmux(sel, t[i], f[i]);
  return out;
}

Bv CircuitBuilder::bv_min(const Bv &a, const Bv &b) {
  return bv_mux(bv_ult(a, b), a, b);
}

Bv CircuitBuilder::bv_max(const Bv &a, const Bv &b) {
  return bv_mux(bv_ult(a, b), b, a);
}

Lit CircuitBuilder::bv_eq(const Bv &a, const Bv &b) {
  Lit acc = lit_true();
  for (size_t i = 0; i < a.size(); ++i) {
    acc = land(acc, sat::neg(lxor(a[i], b[i])));
  }
  return acc;
}

Lit CircuitBuilder::bv_ult(const Bv &a, const Bv &b) {
  // Ripple comparison from LSB: lt_i = (~a & b) | (a==b & lt_{i-1})
  Lit lt = lit_false();
  for (size_t i = 0; i < a.size(); ++i) {
    Lit eq = sat::neg(lxor(a[i], b[i]));
    lt = lor(land(sat::neg(a[i]), b[i]), land(eq, lt));
  }
  return lt;
}

Lit CircuitBuilder::bv_ule(const Bv &a, const Bv &b) {
  return sat::neg(bv_ult(b, a));
}

Lit CircuitBuilder::bv_slt(const Bv &a, const Bv &b) {
  // Flip sign bits and compare unsigned.
  Bv a2 = a, b2 = b;
  a2.back() = sat::neg(a2.back());
  b2.back() = sat::neg(b2.back());
  return bv_ult(a2, b2);
}

Lit CircuitBuilder::bv_sle(const Bv &a, const Bv &b) {
  return sat::neg(bv_slt(b, a));
}

Lit CircuitBuilder::bv_nonzero(const Bv &a) {
  Lit acc = lit_false();
  for (Lit l : a) acc = lor(acc, l);
  return acc;
}

Bv CircuitBuilder::bv_from_bool(int width, Lit b) {
  Bv out(width, lit_false());
  out[0] = b;
  return out;
}

Bv CircuitBuilder::apply_opcode(lvm::Opcode op, const Bv &a, const Bv &b,
                                const Bv &c) {
  using lvm::Opcode;
  int w = static_cast<int>(a.size());
  switch (op) {
    case Opcode::Add: return bv_add(a, b);
    case Opcode::Sub: return bv_sub(a, b);
    case Opcode::Mul: return bv_mul(a, b);
    case Opcode::Div: return bv_udiv(a, b);
    case Opcode::Neg: return bv_neg(a);
    case Opcode::Mod: return bv_urem(a, b);
    case Opcode::Min: return bv_min(a, b);
    case Opcode::Max: return bv_max(a, b);
    case Opcode::And: return bv_and(a, b);
    case Opcode::Or: return bv_or(a, b);
    case Opcode::Xor: return bv_xor(a, b);
    case Opcode::Lshr: return bv_lshr(a, b);
    case Opcode::Ashr: return bv_ashr(a, b);
    case Opcode::Not: return bv_not(a);
    case Opcode::Le: return bv_from_bool(w, bv_ule(a, b));
    case Opcode::Lt: return bv_from_bool(w, bv_ult(a, b));
    case Opcode::Sle: return bv_from_bool(w, bv_sle(a, b));
    case Opcode::Slt: return bv_from_bool(w, bv_slt(a, b));
    case Opcode::Eq: return bv_from_bool(w, bv_eq(a, b));
    case Opcode::Neq: return bv_from_bool(w, sat::neg(bv_eq(a, b)));
    case Opcode::Implies:
      return bv_from_bool(
          w, lor(sat::neg(bv_nonzero(a)), bv_nonzero(b)));
    case Opcode::Ite: return bv_mux(bv_nonzero(a), b, c);
  }
  return bv_const(w, 0);  // unreachable
}

uint64_t CircuitBuilder::bv_model_value(const Bv &a) const {
  uint64_t v = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    Lit l = a[i];
    bool bit;
    if (is_true(l)) {
      bit = true;
    } else if (is_false(l)) {
      bit = false;
    } else {
      bit = solver_.model_value(var_of(l)) ^ sign_of(l);
    }
    if (bit) v |= uint64_t{1} << i;
  }
  return v;
}

}  // namespace lsynth::sat
