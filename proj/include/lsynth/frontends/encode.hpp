#ifndef LSYNTH_FRONTENDS_ENCODE_HPP
#define LSYNTH_FRONTENDS_ENCODE_HPP

#include "lsynth/frontends/loopsys.hpp"
#include "lsynth/lvm/program.hpp"
#include "lsynth/specir/ast.hpp"

namespace lsynth::frontends {

// Names of the unknowns each encoder introduces, for reporting.
struct EncodingInfo {
  std::vector<std::string> unknowns;
};

// Safety: one unknown S with
//   I(x) -> S(x)
//   S(x) && G(x) && B(x,x') -> S(x')
//   S(x) && !G(x) -> A(x)
// Requires an assertion.
specir::RawSpec encode_safety(const LoopSystem &sys,
                              EncodingInfo *info = nullptr);

// Termination: rank R (out arity rank_dim, compared lexicographically in
// unsigned order) and supporting invariant W with
//   I(x) && G(x) -> W(x)
//   G(x) && W(x) && B(x,x') -> W(x') && R(x) > 0 && R(x) > R(x')
specir::RawSpec encode_termination(const LoopSystem &sys, int rank_dim = 1,
                                   EncodingInfo *info = nullptr);

// Non-termination: recurrence set N, successor choice C, and an initial
// state x0 (existential first-order variables, Skolemized into synthesized
// constants) with
//   N(x0) && (N(x) -> G(x)) && (N(x) -> B(x, C(x)) && N(C(x)))
specir::RawSpec encode_nontermination(const LoopSystem &sys,
                                      EncodingInfo *info = nullptr);

// The disjunction of the termination and non-termination encodings; for a
// deterministic-exit loop one of the two disjuncts is satisfiable, so this
// avoids synthesizing against an unsatisfiable task.
specir::RawSpec encode_termination_or_not(const LoopSystem &sys,
                                          int rank_dim = 1,
                                          EncodingInfo *info = nullptr);

// Superoptimisation: one unknown with the reference's signature that must
// agree with the reference on every input; the reference is folded into
// the matrix as a fixed expression.
specir::RawSpec encode_superopt(const lvm::Program &reference, int w_target,
                                EncodingInfo *info = nullptr);

// The reference program as a matrix expression (output `index`), with
// inputs named after `input_names`.
specir::SpecExpr program_to_expr(const lvm::Program &p, size_t index,
                                 const std::vector<std::string> &input_names);

}  // namespace lsynth::frontends

#endif
