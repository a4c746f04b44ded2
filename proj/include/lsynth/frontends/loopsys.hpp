#ifndef LSYNTH_FRONTENDS_LOOPSYS_HPP
#define LSYNTH_FRONTENDS_LOOPSYS_HPP

#include <optional>
#include <string>
#include <vector>

#include "lsynth/specir/ast.hpp"

namespace lsynth::frontends {

// A single loop over a bitvector state vector: initial states I, guard G,
// transition B (functional per-variable updates or one relational
// expression over primed and unprimed variables), and an optional safety
// assertion A checked at loop exit.
struct LoopSystem {
  std::vector<std::pair<std::string, int>> state_vars;  // (name, width)
  specir::SpecExpr init;
  specir::SpecExpr guard;
  bool relational = false;
  std::vector<specir::SpecExpr> updates;  // functional: one per state var
  specir::SpecExpr body_rel;              // relational form
  std::optional<specir::SpecExpr> assertion;
};

// Text format:
//   state x:4, y:4;
//   init: <expr>;
//   guard: <expr>;
//   body: x' = <expr>, y' = <expr>;     (or body-rel: <expr>;)
//   assert: <expr>;                      (optional)
// Comments run from '#' to end of line.
LoopSystem parse_loop_system(const std::string &text);

std::string print_loop_system(const LoopSystem &sys);

// The transition relation B(x, x') as one boolean expression.
specir::SpecExpr transition_expr(const LoopSystem &sys);

}  // namespace lsynth::frontends

#endif
