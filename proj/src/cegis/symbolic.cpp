#include "lsynth/cegis/symbolic.hpp"

#include <functional>

namespace lsynth::cegis {

namespace {

using sat::Bv;
using sat::CircuitBuilder;
using sat::Lit;

using ApplyFn =
    std::function<Bv(uint32_t unknown_slot, const std::vector<Bv> &args,
                     uint32_t result_index)>;

Bv build_expr(CircuitBuilder &cb, const specir::SpecExpr &e,
              const specir::SpecProblem &prob, lvm::WordWidth w,
              const std::vector<Bv> &var_values, const ApplyFn &apply) {
  using specir::SpecExpr;
  const int bits = w.bits;
  switch (e.kind) {
    case SpecExpr::Kind::Literal:
      return cb.bv_const(bits, e.literal & w.mask());
    case SpecExpr::Kind::Var: {
      for (size_t i = 0; i < prob.universals.size(); ++i) {
        if (prob.universals[i].first == e.name) return var_values[i];
      }
      throw std::invalid_argument("unbound variable '" + e.name + "'");
    }
    case SpecExpr::Kind::Apply: {
      uint32_t slot = 0;
      for (size_t i = 0; i < prob.unknowns.size(); ++i) {
        if (prob.unknowns[i].name == e.name) {
          slot = static_cast<uint32_t>(i);
          break;
        }
      }
      std::vector<Bv> args;
      args.reserve(e.children.size());
      for (const SpecExpr &ch : e.children) {
        args.push_back(build_expr(cb, ch, prob, w, var_values, apply));
      }
      return apply(slot, args, e.result_index);
    }
    case SpecExpr::Kind::Arith: {
      using specir::ArithOp;
      Bv a = build_expr(cb, e.children[0], prob, w, var_values, apply);
      Bv b = e.children.size() > 1
                 ? build_expr(cb, e.children[1], prob, w, var_values, apply)
                 : cb.bv_const(bits, 0);
      switch (static_cast<ArithOp>(e.op)) {
        case ArithOp::Add: return cb.bv_add(a, b);
        case ArithOp::Sub: return cb.bv_sub(a, b);
        case ArithOp::Mul: return cb.bv_mul(a, b);
        case ArithOp::Div: return cb.bv_udiv(a, b);
        case ArithOp::Mod: return cb.bv_urem(a, b);
        case ArithOp::BitAnd: return cb.bv_and(a, b);
        case ArithOp::BitOr: return cb.bv_or(a, b);
        case ArithOp::BitXor: return cb.bv_xor(a, b);
        case ArithOp::Shl: return cb.bv_shl(a, b);
        case ArithOp::Lshr: return cb.bv_lshr(a, b);
        case ArithOp::Ashr: return cb.bv_ashr(a, b);
        case ArithOp::BitNot: return cb.bv_not(a);
        case ArithOp::Neg: return cb.bv_neg(a);
        case ArithOp::Min: return cb.bv_min(a, b);
        case ArithOp::Max: return cb.bv_max(a, b);
      }
      return cb.bv_const(bits, 0);
    }
    case SpecExpr::Kind::Compare: {
      using specir::CmpOp;
      Bv a = build_expr(cb, e.children[0], prob, w, var_values, apply);
      Bv b = build_expr(cb, e.children[1], prob, w, var_values, apply);
      Lit r = cb.lit_false();
      switch (static_cast<CmpOp>(e.op)) {
        case CmpOp::Eq: r = cb.bv_eq(a, b); break;
        case CmpOp::Ne: r = cb.lnot(cb.bv_eq(a, b)); break;
        case CmpOp::Ult: r = cb.bv_ult(a, b); break;
        case CmpOp::Ule: r = cb.bv_ule(a, b); break;
        case CmpOp::Slt: r = cb.bv_slt(a, b); break;
        case CmpOp::Sle: r = cb.bv_sle(a, b); break;
      }
      return cb.bv_from_bool(bits, r);
    }
    case SpecExpr::Kind::Bool: {
      using specir::BoolOp;
      Bv a = build_expr(cb, e.children[0], prob, w, var_values, apply);
      Lit an = cb.bv_nonzero(a);
      if (static_cast<BoolOp>(e.op) == BoolOp::Not) {
        return cb.bv_from_bool(bits, cb.lnot(an));
      }
      Bv b = build_expr(cb, e.children[1], prob, w, var_values, apply);
      Lit bn = cb.bv_nonzero(b);
      Lit r = cb.lit_false();
      switch (static_cast<BoolOp>(e.op)) {
        case BoolOp::And: r = cb.land(an, bn); break;
        case BoolOp::Or: r = cb.lor(an, bn); break;
        case BoolOp::Implies: r = cb.lor(cb.lnot(an), bn); break;
        case BoolOp::Not: break;  // handled above
      }
      return cb.bv_from_bool(bits, r);
    }
    case SpecExpr::Kind::Ite: {
      Bv c = build_expr(cb, e.children[0], prob, w, var_values, apply);
      Bv t = build_expr(cb, e.children[1], prob, w, var_values, apply);
      Bv f = build_expr(cb, e.children[2], prob, w, var_values, apply);
      return cb.bv_mux(cb.bv_nonzero(c), t, f);
    }
  }
  return cb.bv_const(bits, 0);
}

// Circuit of a fixed, concrete program applied to symbolic inputs.
Bv concrete_program_output(CircuitBuilder &cb, const lvm::Program &p,
                           const std::vector<Bv> &args, uint32_t result_index,
                           lvm::WordWidth w) {
  std::vector<Bv> temps;
  temps.reserve(p.instructions.size());
  auto value = [&](const lvm::Operand &o) -> Bv {
    switch (o.kind) {
      case lvm::Operand::Kind::Input: return args[o.index];
      case lvm::Operand::Kind::Temp: return temps[o.index];
      case lvm::Operand::Kind::Const:
        return cb.bv_const(w.bits, p.constants[o.index] & w.mask());
    }
    return cb.bv_const(w.bits, 0);
  };
  for (const lvm::Instruction &ins : p.instructions) {
    Bv a = value(ins.operands[0]);
    Bv b = ins.operands.size() > 1 ? value(ins.operands[1])
                                   : cb.bv_const(w.bits, 0);
    Bv c = ins.operands.size() > 2 ? value(ins.operands[2])
                                   : cb.bv_const(w.bits, 0);
    temps.push_back(cb.apply_opcode(ins.opcode, a, b, c));
  }
  return value(p.outputs[result_index]);
}

void exactly_one(sat::Solver &s, const std::vector<Lit> &lits) {
  std::vector<Lit> all(lits.begin(), lits.end());
  s.add_clause(all);
  for (size_t i = 0; i < lits.size(); ++i) {
    for (size_t j = i + 1; j < lits.size(); ++j) {
      s.add_clause({sat::neg(lits[i]), sat::neg(lits[j])});
    }
  }
}

// Selector variables and constant words for one universal program shape.
struct EncodedUnknown {
  uint32_t arity = 0;
  uint32_t out_arity = 1;
  std::vector<std::vector<Lit>> op_sel;                    // [slot][op]
  std::vector<std::array<std::vector<Lit>, 3>> arg_sel;    // [slot][pos][pool]
  std::vector<Bv> const_words;
};

class SymbolicSynth final : public SynthStrategy {
 public:
  SymbolicSynth(const specir::SpecProblem &prob, const InputBank &bank,
                const lattice::ParamSet &params, const SolverConfig &cfg)
      : prob_(prob), params_(params), budget_(cfg.step_conflicts) {
    opcodes_ = cfg.effective_opcodes();
    for (lvm::Opcode op : opcodes_) {
      for (lvm::Opcode dis : cfg.symbolic_disabled) {
        if (op == dis) {
          unsupported_ = true;
          return;
        }
      }
    }
    for (const specir::UnknownSig &sig : prob.unknowns) {
      if (static_cast<uint32_t>(params.length) < sig.out_arity) {
        empty_space_ = true;
        return;
      }
    }
    cb_ = std::make_unique<CircuitBuilder>(solver_);
    encode(bank);
  }

  StrategyKind kind() const override { return StrategyKind::Symbolic; }

  StepOutcome step() override {
    if (unsupported_) return {StepOutcome::Kind::Inactive, {}};
    if (empty_space_) return {StepOutcome::Kind::None, {}};
    switch (solver_.solve(budget_)) {
      case sat::Result::Sat: return {StepOutcome::Kind::Found, decode()};
      case sat::Result::Unsat: return {StepOutcome::Kind::None, {}};
      case sat::Result::Unknown: return {StepOutcome::Kind::Continue, {}};
    }
    return {StepOutcome::Kind::Continue, {}};
  }

 private:
  const specir::SpecProblem &prob_;
  lattice::ParamSet params_;
  int64_t budget_;
  std::vector<lvm::Opcode> opcodes_;
  bool unsupported_ = false;
  bool empty_space_ = false;
  sat::Solver solver_;
  std::unique_ptr<CircuitBuilder> cb_;
  std::vector<EncodedUnknown> encoded_;

  void encode(const InputBank &bank) {
    const lvm::WordWidth w{params_.w_syn};
    // Shape variables, shared across every test.
    for (const specir::UnknownSig &sig : prob_.unknowns) {
      EncodedUnknown enc;
      enc.arity = sig.in_arity;
      enc.out_arity = sig.out_arity;
      for (int i = 0; i < params_.length; ++i) {
        std::vector<Lit> ops;
        for (size_t oi = 0; oi < opcodes_.size(); ++oi) ops.push_back(cb_->fresh());
        exactly_one(solver_, ops);
        enc.op_sel.push_back(std::move(ops));
        std::array<std::vector<Lit>, 3> args;
        uint32_t pool = sig.in_arity + static_cast<uint32_t>(i) +
                        static_cast<uint32_t>(params_.num_consts);
        for (int p = 0; p < 3; ++p) {
          for (uint32_t d = 0; d < pool; ++d) args[p].push_back(cb_->fresh());
          exactly_one(solver_, args[p]);
        }
        enc.arg_sel.push_back(std::move(args));
      }
      for (int k = 0; k < params_.num_consts; ++k) {
        enc.const_words.push_back(cb_->bv_fresh(w.bits));
      }
      encoded_.push_back(std::move(enc));
    }

    ApplyFn apply = [&](uint32_t slot, const std::vector<Bv> &args,
                        uint32_t result_index) {
      return instantiate(encoded_[slot], args, result_index, w);
    };

    if (bank.size() == 0) {
      // Vacuous query: any well-formed program works; the shape constraints
      // alone are the instance.
      return;
    }
    for (const auto &test : bank.tests()) {
      std::vector<Bv> var_values;
      var_values.reserve(test.size());
      for (size_t i = 0; i < test.size(); ++i) {
        uint64_t masked =
            test[i] &
            lvm::WordWidth{prob_.var_width_at(i, w)}.mask();
        var_values.push_back(cb_->bv_const(w.bits, masked));
      }
      Bv sigma = build_expr(*cb_, prob_.body, prob_, w, var_values, apply);
      cb_->assert_lit(cb_->bv_nonzero(sigma));
    }
  }

  // One interpreter instance: the program shape applied to `args`.
  Bv instantiate(const EncodedUnknown &enc, const std::vector<Bv> &args,
                 uint32_t result_index, lvm::WordWidth w) {
    std::vector<Bv> temps;
    for (int i = 0; i < params_.length; ++i) {
      // Operand values: one-hot mux over inputs, earlier temps, constants.
      std::array<Bv, 3> vals;
      uint32_t pool = enc.arity + static_cast<uint32_t>(i) +
                      static_cast<uint32_t>(params_.num_consts);
      for (int p = 0; p < 3; ++p) {
        Bv acc = cb_->bv_const(w.bits, 0);
        for (uint32_t d = 0; d < pool; ++d) {
          const Bv &choice =
              d < enc.arity
                  ? args[d]
                  : (d < enc.arity + static_cast<uint32_t>(i)
                         ? temps[d - enc.arity]
                         : enc.const_words[d - enc.arity - i]);
          Lit sel = enc.arg_sel[i][p][d];
          for (int b = 0; b < w.bits; ++b) {
            acc[b] = cb_->lor(acc[b], cb_->land(sel, choice[b]));
          }
        }
        vals[p] = std::move(acc);
      }
      // Result: one-hot mux over every opcode's circuit.
      Bv res = cb_->bv_const(w.bits, 0);
      for (size_t oi = 0; oi < opcodes_.size(); ++oi) {
        Bv r = cb_->apply_opcode(opcodes_[oi], vals[0], vals[1], vals[2]);
        Lit sel = enc.op_sel[i][oi];
        for (int b = 0; b < w.bits; ++b) {
          res[b] = cb_->lor(res[b], cb_->land(sel, r[b]));
        }
      }
      temps.push_back(std::move(res));
    }
    return temps[params_.length - enc.out_arity + result_index];
  }

  Candidate decode() const {
    Candidate cand;
    const lvm::WordWidth w{params_.w_syn};
    for (size_t u = 0; u < prob_.unknowns.size(); ++u) {
      const EncodedUnknown &enc = encoded_[u];
      lvm::Program p;
      p.arity = enc.arity;
      for (const Bv &cw : enc.const_words) {
        p.constants.push_back(cb_->bv_model_value(cw) & w.mask());
      }
      for (int i = 0; i < params_.length; ++i) {
        lvm::Instruction ins;
        for (size_t oi = 0; oi < opcodes_.size(); ++oi) {
          if (model_lit(enc.op_sel[i][oi])) {
            ins.opcode = opcodes_[oi];
            break;
          }
        }
        int a = lvm::arity(ins.opcode);
        for (int pos = 0; pos < a; ++pos) {
          uint32_t chosen = 0;
          for (uint32_t d = 0; d < enc.arg_sel[i][pos].size(); ++d) {
            if (model_lit(enc.arg_sel[i][pos][d])) {
              chosen = d;
              break;
            }
          }
          if (chosen < enc.arity) {
            ins.operands.push_back(lvm::Operand::input(chosen));
          } else if (chosen < enc.arity + static_cast<uint32_t>(i)) {
            ins.operands.push_back(lvm::Operand::temp(chosen - enc.arity));
          } else {
            ins.operands.push_back(lvm::Operand::constant(
                chosen - enc.arity - static_cast<uint32_t>(i)));
          }
        }
        p.instructions.push_back(std::move(ins));
      }
      for (uint32_t j = 0; j < enc.out_arity; ++j) {
        p.outputs.push_back(lvm::Operand::temp(
            static_cast<uint32_t>(params_.length) - enc.out_arity + j));
      }
      drop_unused_constants(p);
      cand.witness.emplace(prob_.unknowns[u].name, std::move(p));
    }
    cand.params = params_;
    cand.producer = StrategyKind::Symbolic;
    return cand;
  }

  bool model_lit(Lit l) const {
    return solver_.model_value(sat::var_of(l)) ^ sat::sign_of(l);
  }

  static void drop_unused_constants(lvm::Program &p) {
    std::vector<bool> used(p.constants.size(), false);
    for (const lvm::Instruction &ins : p.instructions) {
      for (const lvm::Operand &o : ins.operands) {
        if (o.kind == lvm::Operand::Kind::Const) used[o.index] = true;
      }
    }
    for (const lvm::Operand &o : p.outputs) {
      if (o.kind == lvm::Operand::Kind::Const) used[o.index] = true;
    }
    std::vector<uint64_t> kept;
    std::vector<uint32_t> remap(p.constants.size(), 0);
    for (size_t i = 0; i < p.constants.size(); ++i) {
      if (used[i]) {
        remap[i] = static_cast<uint32_t>(kept.size());
        kept.push_back(p.constants[i]);
      }
    }
    for (lvm::Instruction &ins : p.instructions) {
      for (lvm::Operand &o : ins.operands) {
        if (o.kind == lvm::Operand::Kind::Const) o.index = remap[o.index];
      }
    }
    for (lvm::Operand &o : p.outputs) {
      if (o.kind == lvm::Operand::Kind::Const) o.index = remap[o.index];
    }
    p.constants = std::move(kept);
  }
};

}  // namespace

std::unique_ptr<SynthStrategy> make_symbolic_strategy(
    const specir::SpecProblem &prob, const InputBank &bank,
    const lattice::ParamSet &params, const SolverConfig &cfg) {
  return std::make_unique<SymbolicSynth>(prob, bank, params, cfg);
}

SymbolicFalsifier::SymbolicFalsifier(const specir::SpecProblem &prob,
                                     const specir::Witness &witness,
                                     lvm::WordWidth w) {
  cb_ = std::make_unique<CircuitBuilder>(solver_);
  std::vector<const lvm::Program *> progs = witness_ptrs(prob, witness);
  for (size_t i = 0; i < prob.universals.size(); ++i) {
    int vw = prob.var_width_at(i, w);
    Bv value = cb_->bv_fresh(vw);
    value.resize(w.bits, cb_->lit_false());  // zero-extend to machine width
    var_values_.push_back(std::move(value));
  }
  ApplyFn apply = [&](uint32_t slot, const std::vector<Bv> &args,
                      uint32_t result_index) {
    return concrete_program_output(*cb_, *progs[slot], args, result_index, w);
  };
  Bv sigma = build_expr(*cb_, prob.body, prob, w, var_values_, apply);
  cb_->assert_lit(cb_->lnot(cb_->bv_nonzero(sigma)));
}

sat::Result SymbolicFalsifier::step(int64_t conflict_budget) {
  return solver_.solve(conflict_budget);
}

std::vector<uint64_t> SymbolicFalsifier::counterexample() const {
  std::vector<uint64_t> out;
  out.reserve(var_values_.size());
  for (const Bv &v : var_values_) out.push_back(cb_->bv_model_value(v));
  return out;
}

}  // namespace lsynth::cegis
