#ifndef LSYNTH_LATTICE_GENERALIZE_HPP
#define LSYNTH_LATTICE_GENERALIZE_HPP

#include <functional>
#include <optional>

#include "lsynth/cegis/types.hpp"

namespace lsynth::lattice {

// Complete target-width verification supplied by the caller; a true result
// must mean the witness is valid over the whole target-width domain.
using VerifyFn = std::function<bool(const specir::Witness &)>;

// Lifts a witness that is valid at w_syn to w_target by rewriting its
// constants with the extension rules: first each rule applied uniformly to
// every constant, then the per-constant Cartesian product of rules, up to
// `combo_cap` combinations. Constant-free witnesses are tried unchanged.
// Returns the first rewriting that verifies at the target width, or
// nullopt when every attempt fails (the "widen w_syn" edge).
std::optional<specir::Witness> generalize(const cegis::Candidate &cand,
                                          lvm::WordWidth w_syn,
                                          lvm::WordWidth w_target,
                                          int combo_cap,
                                          const VerifyFn &verify);

}  // namespace lsynth::lattice

#endif
