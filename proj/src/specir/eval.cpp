#include "lsynth/specir/eval.hpp"

#include <stdexcept>

namespace lsynth::specir {

namespace {

uint64_t width_mask(int bits) {
  return bits >= 64 ? ~uint64_t{0} : (uint64_t{1} << bits) - 1;
}

uint64_t arith_value(ArithOp op, uint64_t a, uint64_t b, lvm::WordWidth w) {
  using lvm::Opcode;
  switch (op) {
    case ArithOp::Add: return lvm::eval_instruction(Opcode::Add, a, b, 0, w);
    case ArithOp::Sub: return lvm::eval_instruction(Opcode::Sub, a, b, 0, w);
    case ArithOp::Mul: return lvm::eval_instruction(Opcode::Mul, a, b, 0, w);
    case ArithOp::Div: return lvm::eval_instruction(Opcode::Div, a, b, 0, w);
    case ArithOp::Mod: return lvm::eval_instruction(Opcode::Mod, a, b, 0, w);
    case ArithOp::BitAnd: return a & b;
    case ArithOp::BitOr: return a | b;
    case ArithOp::BitXor: return a ^ b;
    case ArithOp::Shl:
      return b >= static_cast<uint64_t>(w.bits) ? 0 : (a << b) & w.mask();
    case ArithOp::Lshr: return lvm::eval_instruction(Opcode::Lshr, a, b, 0, w);
    case ArithOp::Ashr: return lvm::eval_instruction(Opcode::Ashr, a, b, 0, w);
    case ArithOp::BitNot: return ~a & w.mask();
    case ArithOp::Neg: return lvm::eval_instruction(Opcode::Neg, a, 0, 0, w);
    case ArithOp::Min: return a < b ? a : b;
    case ArithOp::Max: return a > b ? a : b;
  }
  return 0;
}

uint64_t cmp_value(CmpOp op, uint64_t a, uint64_t b, lvm::WordWidth w) {
  using lvm::Opcode;
  switch (op) {
    case CmpOp::Eq: return a == b;
    case CmpOp::Ne: return a != b;
    case CmpOp::Ult: return a < b;
    case CmpOp::Ule: return a <= b;
    case CmpOp::Slt: return lvm::eval_instruction(Opcode::Slt, a, b, 0, w);
    case CmpOp::Sle: return lvm::eval_instruction(Opcode::Sle, a, b, 0, w);
  }
  return 0;
}

uint64_t bool_value(BoolOp op, uint64_t a, uint64_t b) {
  switch (op) {
    case BoolOp::And: return (a != 0 && b != 0) ? 1 : 0;
    case BoolOp::Or: return (a != 0 || b != 0) ? 1 : 0;
    case BoolOp::Not: return a == 0 ? 1 : 0;
    case BoolOp::Implies: return (a == 0 || b != 0) ? 1 : 0;
  }
  return 0;
}

}  // namespace

uint64_t eval_expr(const SpecExpr &e, const SpecProblem &prob,
                   const Witness &witness, std::span<const uint64_t> values,
                   lvm::WordWidth w) {
  switch (e.kind) {
    case SpecExpr::Kind::Literal: return e.literal & w.mask();
    case SpecExpr::Kind::Var: {
      for (size_t i = 0; i < prob.universals.size(); ++i) {
        if (prob.universals[i].first == e.name) {
          return values[i] & width_mask(prob.var_width_at(i, w));
        }
      }
      throw std::invalid_argument("unbound variable '" + e.name + "'");
    }
    case SpecExpr::Kind::Apply: {
      auto it = witness.find(e.name);
      if (it == witness.end()) {
        throw std::invalid_argument("no witness for unknown '" + e.name + "'");
      }
      std::vector<uint64_t> args;
      args.reserve(e.children.size());
      for (const SpecExpr &ch : e.children) {
        args.push_back(eval_expr(ch, prob, witness, values, w));
      }
      std::vector<uint64_t> out = lvm::exec(it->second, args, w);
      if (e.result_index >= out.size()) {
        throw std::invalid_argument("result index out of range for '" +
                                    e.name + "'");
      }
      return out[e.result_index];
    }
    case SpecExpr::Kind::Arith: {
      uint64_t a = eval_expr(e.children[0], prob, witness, values, w);
      uint64_t b = e.children.size() > 1
                       ? eval_expr(e.children[1], prob, witness, values, w)
                       : 0;
      return arith_value(static_cast<ArithOp>(e.op), a, b, w);
    }
    case SpecExpr::Kind::Compare: {
      uint64_t a = eval_expr(e.children[0], prob, witness, values, w);
      uint64_t b = eval_expr(e.children[1], prob, witness, values, w);
      return cmp_value(static_cast<CmpOp>(e.op), a, b, w);
    }
    case SpecExpr::Kind::Bool: {
      uint64_t a = eval_expr(e.children[0], prob, witness, values, w);
      uint64_t b = e.children.size() > 1
                       ? eval_expr(e.children[1], prob, witness, values, w)
                       : 0;
      return bool_value(static_cast<BoolOp>(e.op), a, b);
    }
    case SpecExpr::Kind::Ite: {
      uint64_t c = eval_expr(e.children[0], prob, witness, values, w);
      return eval_expr(e.children[c != 0 ? 1 : 2], prob, witness, values, w);
    }
  }
  return 0;
}

bool eval_sigma(const SpecProblem &prob, const Witness &witness,
                std::span<const uint64_t> assignment, lvm::WordWidth w) {
  if (assignment.size() != prob.universals.size()) {
    throw std::invalid_argument("assignment size does not match universals");
  }
  for (size_t i = 0; i < prob.universals.size(); ++i) {
    if ((assignment[i] & width_mask(prob.var_width_at(i, w))) !=
        assignment[i]) {
      throw std::invalid_argument("assignment overflows width of '" +
                                  prob.universals[i].first + "'");
    }
  }
  for (const UnknownSig &sig : prob.unknowns) {
    auto it = witness.find(sig.name);
    if (it == witness.end()) {
      throw std::invalid_argument("no witness for unknown '" + sig.name + "'");
    }
    if (it->second.arity != sig.in_arity) {
      throw std::invalid_argument("witness arity mismatch for '" + sig.name +
                                  "'");
    }
    if (it->second.outputs.size() != sig.out_arity) {
      throw std::invalid_argument("witness output arity mismatch for '" +
                                  sig.name + "'");
    }
  }
  return eval_expr(prob.body, prob, witness, assignment, w) != 0;
}

// --- CompiledSigma ---

CompiledSigma::CompiledSigma(const SpecProblem &prob, lvm::WordWidth w)
    : unknown_count_(prob.unknowns.size()), width_(w) {
  var_masks_.reserve(prob.universals.size());
  for (size_t i = 0; i < prob.universals.size(); ++i) {
    var_masks_.push_back(width_mask(prob.var_width_at(i, w)));
  }
  compile(prob.body, prob);
  slots_.resize(nodes_.size());
}

uint32_t CompiledSigma::compile(const SpecExpr &e, const SpecProblem &prob) {
  Node n{};
  n.kind = e.kind;
  n.op = e.op;
  n.literal = e.literal & width_.mask();
  switch (e.kind) {
    case SpecExpr::Kind::Literal: break;
    case SpecExpr::Kind::Var: {
      bool found = false;
      for (size_t i = 0; i < prob.universals.size(); ++i) {
        if (prob.universals[i].first == e.name) {
          n.var_index = static_cast<uint32_t>(i);
          found = true;
          break;
        }
      }
      if (!found) {
        throw std::invalid_argument("unbound variable '" + e.name + "'");
      }
      break;
    }
    case SpecExpr::Kind::Apply: {
      bool found = false;
      for (size_t i = 0; i < prob.unknowns.size(); ++i) {
        if (prob.unknowns[i].name == e.name) {
          n.unknown_slot = static_cast<uint32_t>(i);
          found = true;
          break;
        }
      }
      if (!found) {
        throw std::invalid_argument("unknown '" + e.name + "' not declared");
      }
      n.result_index = e.result_index;
      std::vector<uint32_t> args;
      args.reserve(e.children.size());
      for (const SpecExpr &ch : e.children) args.push_back(compile(ch, prob));
      n.args_begin = static_cast<uint32_t>(arg_nodes_.size());
      arg_nodes_.insert(arg_nodes_.end(), args.begin(), args.end());
      n.args_end = static_cast<uint32_t>(arg_nodes_.size());
      break;
    }
    default: {
      uint32_t ids[3] = {0, 0, 0};
      for (size_t i = 0; i < e.children.size() && i < 3; ++i) {
        ids[i] = compile(e.children[i], prob);
      }
      n.a = ids[0];
      n.b = ids[1];
      n.c = ids[2];
      break;
    }
  }
  nodes_.push_back(n);
  return static_cast<uint32_t>(nodes_.size() - 1);
}

uint64_t CompiledSigma::eval_word(
    std::span<const lvm::Program *const> programs,
    std::span<const uint64_t> assignment) const {
  const lvm::WordWidth w = width_;
  for (size_t i = 0; i < nodes_.size(); ++i) {
    const Node &n = nodes_[i];
    uint64_t v = 0;
    switch (n.kind) {
      case SpecExpr::Kind::Literal: v = n.literal; break;
      case SpecExpr::Kind::Var:
        v = assignment[n.var_index] & var_masks_[n.var_index];
        break;
      case SpecExpr::Kind::Apply: {
        scratch_args_.clear();
        for (uint32_t k = n.args_begin; k < n.args_end; ++k) {
          scratch_args_.push_back(slots_[arg_nodes_[k]]);
        }
        lvm::exec_into(*programs[n.unknown_slot], scratch_args_, w,
                       scratch_temps_, scratch_out_);
        v = scratch_out_[n.result_index];
        break;
      }
      case SpecExpr::Kind::Arith:
        v = arith_value(static_cast<ArithOp>(n.op), slots_[n.a],
                        slots_[n.b], w);
        break;
      case SpecExpr::Kind::Compare:
        v = cmp_value(static_cast<CmpOp>(n.op), slots_[n.a], slots_[n.b], w);
        break;
      case SpecExpr::Kind::Bool:
        v = bool_value(static_cast<BoolOp>(n.op), slots_[n.a], slots_[n.b]);
        break;
      case SpecExpr::Kind::Ite:
        v = slots_[n.a] != 0 ? slots_[n.b] : slots_[n.c];
        break;
    }
    slots_[i] = v;
  }
  return slots_.back();
}

bool CompiledSigma::eval(std::span<const lvm::Program *const> programs,
                         std::span<const uint64_t> assignment) const {
  return eval_word(programs, assignment) != 0;
}

// --- DomainEnumerator ---

DomainEnumerator::DomainEnumerator(const SpecProblem &prob, lvm::WordWidth w) {
  widths_.reserve(prob.universals.size());
  int total = 0;
  for (size_t i = 0; i < prob.universals.size(); ++i) {
    widths_.push_back(prob.var_width_at(i, w));
    total += widths_.back();
  }
  size_ = total >= 64 ? ~uint64_t{0} : (uint64_t{1} << total);
}

void DomainEnumerator::assignment(uint64_t index,
                                  std::vector<uint64_t> &out) const {
  out.resize(widths_.size());
  for (size_t i = widths_.size(); i-- > 0;) {
    out[i] = index & width_mask(widths_[i]);
    index >>= widths_[i];
  }
}

std::optional<DomainEnumerator> enumerate_domain(const SpecProblem &prob,
                                                 lvm::WordWidth w,
                                                 uint64_t cap_points) {
  int bits = prob.input_bits_at(w);
  if (bits >= 64) return std::nullopt;
  if ((uint64_t{1} << bits) > cap_points) return std::nullopt;
  return DomainEnumerator(prob, w);
}

}  // namespace lsynth::specir
