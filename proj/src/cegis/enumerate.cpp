#include "lsynth/cegis/enumerate.hpp"

#include "lsynth/lvm/canon.hpp"

namespace lsynth::cegis {

ProgramEnumerator::ProgramEnumerator(uint32_t arity, uint32_t out_arity,
                                     int length, int num_consts,
                                     lvm::WordWidth w,
                                     std::vector<lvm::Opcode> opcodes,
                                     bool canonicalize)
    : arity_(arity),
      out_arity_(out_arity),
      length_(length),
      max_consts_(num_consts),
      width_(w),
      opcodes_(std::move(opcodes)),
      canonicalize_(canonicalize) {
  reset();
}

void ProgramEnumerator::reset() {
  k_ = 0;
  const_vals_.clear();
  slots_.assign(length_, Slot{});
  fresh_level_ = true;
  done_ = false;
  // Programs expose their last out_arity temps; shorter programs can't.
  if (static_cast<uint32_t>(length_) < out_arity_ || opcodes_.empty()) {
    done_ = true;
  }
}

bool ProgramEnumerator::init_slots() {
  for (int i = 0; i < length_; ++i) {
    slots_[i] = Slot{};
    if (pool_size(i) == 0) return false;  // no operands available at all
  }
  return true;
}

bool ProgramEnumerator::advance_slot(int i) {
  Slot &s = slots_[i];
  uint32_t pool = pool_size(i);
  int a = lvm::arity(opcodes_[s.op_idx]);
  for (int j = a - 1; j >= 0; --j) {
    if (++s.digits[j] < pool) return true;
    s.digits[j] = 0;
  }
  ++s.op_idx;
  if (s.op_idx < opcodes_.size()) return true;
  s.op_idx = 0;
  return false;  // slot wrapped around
}

bool ProgramEnumerator::advance_slots() {
  for (int i = length_ - 1; i >= 0; --i) {
    if (advance_slot(i)) return true;
  }
  return false;
}

bool ProgramEnumerator::advance_const_table() {
  const uint64_t top = width_.mask();
  // Next strictly-increasing combination of k_ values in [0, top].
  int i = k_ - 1;
  while (i >= 0 && const_vals_[i] == top - static_cast<uint64_t>(k_ - 1 - i)) {
    --i;
  }
  if (i >= 0) {
    ++const_vals_[i];
    for (int j = i + 1; j < k_; ++j) const_vals_[j] = const_vals_[j - 1] + 1;
    return true;
  }
  // Combinations at this count exhausted; grow the table.
  ++k_;
  if (k_ > max_consts_) return false;
  if (static_cast<uint64_t>(k_ - 1) > top) return false;  // domain too small
  const_vals_.resize(k_);
  for (int j = 0; j < k_; ++j) const_vals_[j] = static_cast<uint64_t>(j);
  return true;
}

void ProgramEnumerator::materialize(lvm::Program &out) const {
  out.arity = arity_;
  out.constants = const_vals_;
  out.instructions.resize(length_);
  for (int i = 0; i < length_; ++i) {
    const Slot &s = slots_[i];
    lvm::Instruction &ins = out.instructions[i];
    ins.opcode = opcodes_[s.op_idx];
    int a = lvm::arity(ins.opcode);
    ins.operands.resize(a);
    for (int j = 0; j < a; ++j) {
      uint32_t d = s.digits[j];
      if (d < arity_) {
        ins.operands[j] = lvm::Operand::input(d);
      } else if (d < arity_ + static_cast<uint32_t>(i)) {
        ins.operands[j] = lvm::Operand::temp(d - arity_);
      } else {
        ins.operands[j] =
            lvm::Operand::constant(d - arity_ - static_cast<uint32_t>(i));
      }
    }
  }
  out.outputs.clear();
  for (uint32_t j = 0; j < out_arity_; ++j) {
    out.outputs.push_back(
        lvm::Operand::temp(static_cast<uint32_t>(length_) - out_arity_ + j));
  }
}

bool ProgramEnumerator::acceptable(const lvm::Program &out) const {
  if (!canonicalize_) return true;
  if (!lvm::program_is_canonical(out, width_)) return false;
  if (k_ > 0) {
    // A table entry no instruction reads duplicates a smaller-table program
    // already enumerated.
    uint32_t used = 0;
    for (const lvm::Instruction &ins : out.instructions) {
      for (const lvm::Operand &o : ins.operands) {
        if (o.kind == lvm::Operand::Kind::Const) used |= 1u << o.index;
      }
    }
    if (used != (1u << k_) - 1) return false;
  }
  return true;
}

bool ProgramEnumerator::next(lvm::Program &out) {
  while (!done_) {
    if (fresh_level_) {
      fresh_level_ = false;
      if (!init_slots()) {
        if (!advance_const_table()) {
          done_ = true;
          break;
        }
        fresh_level_ = true;
        continue;
      }
    } else {
      if (!advance_slots()) {
        if (!advance_const_table()) {
          done_ = true;
          break;
        }
        fresh_level_ = true;
        continue;
      }
    }
    materialize(out);
    if (acceptable(out)) return true;
  }
  return false;
}

WitnessEnumerator::WitnessEnumerator(const specir::SpecProblem &prob,
                                     const lattice::ParamSet &params,
                                     lvm::WordWidth w,
                                     std::vector<lvm::Opcode> opcodes,
                                     bool canonicalize) {
  subs_.reserve(prob.unknowns.size());
  current_.resize(prob.unknowns.size());
  for (const specir::UnknownSig &sig : prob.unknowns) {
    subs_.emplace_back(sig.in_arity, sig.out_arity, params.length,
                       params.num_consts, w, opcodes, canonicalize);
  }
}

bool WitnessEnumerator::next(std::vector<lvm::Program> &out) {
  if (done_) return false;
  if (!primed_) {
    primed_ = true;
    for (size_t i = 0; i < subs_.size(); ++i) {
      if (!subs_[i].next(current_[i])) {
        done_ = true;
        return false;
      }
    }
    out = current_;
    return true;
  }
  // Advance the last unknown; carry leftward on wrap.
  for (size_t i = subs_.size(); i-- > 0;) {
    if (subs_[i].next(current_[i])) {
      out = current_;
      return true;
    }
    subs_[i].reset();
    if (!subs_[i].next(current_[i])) {
      done_ = true;  // a sub-space emptied out entirely
      return false;
    }
  }
  done_ = true;
  return false;
}

}  // namespace lsynth::cegis
