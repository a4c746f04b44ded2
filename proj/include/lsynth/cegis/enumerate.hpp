#ifndef LSYNTH_CEGIS_ENUMERATE_HPP
#define LSYNTH_CEGIS_ENUMERATE_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "lsynth/cegis/types.hpp"
#include "lsynth/lvm/program.hpp"

namespace lsynth::cegis {

// Complete, deterministic enumeration of every program with exactly
// `length` instructions and at most `num_consts` constants at width w,
// whose outputs are the last out_arity temporaries. Constant tables are
// strictly increasing value sequences; a program with duplicate or unused
// table entries has an equal-length equivalent over a smaller table, so
// the restriction loses no functions. Iteration order: constant count
// ascending, then table values lexicographically, then per-slot
// (opcode, operand) combinations with the last slot varying fastest.
class ProgramEnumerator {
 public:
  ProgramEnumerator(uint32_t arity, uint32_t out_arity, int length,
                    int num_consts, lvm::WordWidth w,
                    std::vector<lvm::Opcode> opcodes, bool canonicalize);

  // Writes the next program into `out`; false once the space is exhausted.
  bool next(lvm::Program &out);
  void reset();

 private:
  struct Slot {
    size_t op_idx = 0;
    std::array<uint32_t, 3> digits{0, 0, 0};
  };

  uint32_t arity_;
  uint32_t out_arity_;
  int length_;
  int max_consts_;
  lvm::WordWidth width_;
  std::vector<lvm::Opcode> opcodes_;
  bool canonicalize_;

  int k_ = 0;  // current constant count
  std::vector<uint64_t> const_vals_;
  std::vector<Slot> slots_;
  bool fresh_level_ = true;  // slots need initialization for this table
  bool done_ = false;

  uint32_t pool_size(int slot) const {
    return arity_ + static_cast<uint32_t>(slot) + static_cast<uint32_t>(k_);
  }
  bool init_slots();
  bool advance_slots();
  bool advance_slot(int i);
  bool advance_const_table();
  void materialize(lvm::Program &out) const;
  bool acceptable(const lvm::Program &out) const;
};

// Odometer over one ProgramEnumerator per unknown (last unknown fastest).
class WitnessEnumerator {
 public:
  WitnessEnumerator(const specir::SpecProblem &prob,
                    const lattice::ParamSet &params, lvm::WordWidth w,
                    std::vector<lvm::Opcode> opcodes, bool canonicalize);

  bool next(std::vector<lvm::Program> &out);

 private:
  std::vector<ProgramEnumerator> subs_;
  std::vector<lvm::Program> current_;
  bool primed_ = false;
  bool done_ = false;
};

}  // namespace lsynth::cegis

#endif
