#ifndef LSYNTH_SPECIR_EVAL_HPP
#define LSYNTH_SPECIR_EVAL_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lsynth/lvm/interp.hpp"
#include "lsynth/specir/ast.hpp"

namespace lsynth::specir {

// A witness assigns one program to every unknown of a problem.
using Witness = std::map<std::string, lvm::Program>;

// Word-level evaluation of an expression. `values` holds one word per
// universal, in declaration order, already within the variable's width.
uint64_t eval_expr(const SpecExpr &e, const SpecProblem &prob,
                   const Witness &witness, std::span<const uint64_t> values,
                   lvm::WordWidth w);

// Truth of sigma under a witness and a full assignment at width w. Throws
// std::invalid_argument when the witness does not match the signatures or
// an assigned value overflows its variable width (contract errors).
bool eval_sigma(const SpecProblem &prob, const Witness &witness,
                std::span<const uint64_t> assignment, lvm::WordWidth w);

// Flattened evaluator for hot loops (candidate enumeration, fitness,
// exhaustive verification). Resolves names to indices once; programs are
// passed per call so one compiled body serves many candidates.
class CompiledSigma {
 public:
  CompiledSigma(const SpecProblem &prob, lvm::WordWidth w);

  // One entry per problem unknown, in problem order.
  bool eval(std::span<const lvm::Program *const> programs,
            std::span<const uint64_t> assignment) const;
  uint64_t eval_word(std::span<const lvm::Program *const> programs,
                     std::span<const uint64_t> assignment) const;

  lvm::WordWidth width() const { return width_; }
  size_t num_unknowns() const { return unknown_count_; }

 private:
  struct Node {
    SpecExpr::Kind kind;
    int op;
    uint64_t literal;
    uint32_t a, b, c;       // child node ids
    uint32_t var_index;     // Var
    uint32_t unknown_slot;  // Apply
    uint32_t result_index;  // Apply
    uint32_t args_begin, args_end;  // Apply: range in arg_nodes_
  };
  std::vector<Node> nodes_;
  std::vector<uint32_t> arg_nodes_;
  size_t unknown_count_;
  lvm::WordWidth width_;
  std::vector<uint64_t> var_masks_;

  mutable std::vector<uint64_t> slots_;
  mutable std::vector<uint64_t> scratch_temps_;
  mutable std::vector<uint64_t> scratch_out_;
  mutable std::vector<uint64_t> scratch_args_;

  uint32_t compile(const SpecExpr &e, const SpecProblem &prob);
};

// Iterates every full assignment of the universals at width w, in a fixed
// deterministic order (the last-declared variable varies fastest).
class DomainEnumerator {
 public:
  DomainEnumerator(const SpecProblem &prob, lvm::WordWidth w);

  uint64_t size() const { return size_; }
  void assignment(uint64_t index, std::vector<uint64_t> &out) const;

 private:
  std::vector<int> widths_;
  uint64_t size_;
};

// Signals the caller when the domain exceeds `cap_points` (exhaustive
// checking must then give way to sampled/symbolic checking).
std::optional<DomainEnumerator> enumerate_domain(const SpecProblem &prob,
                                                 lvm::WordWidth w,
                                                 uint64_t cap_points);

}  // namespace lsynth::specir

#endif
