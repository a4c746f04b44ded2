#ifndef LSYNTH_SPECIR_SKOLEMIZE_HPP
#define LSYNTH_SPECIR_SKOLEMIZE_HPP

#include "lsynth/specir/ast.hpp"

namespace lsynth::specir {

// Reduces a synthesis-fragment formula to the finite synthesis form: every
// existential first-order variable y with preceding universals u1..uk
// becomes a fresh unknown of in-arity k (a synthesized constant when
// k = 0), and each occurrence of y is replaced by the application
// y(u1,...,uk) masked to y's declared width. Linear in the formula size.
SpecProblem skolemize(const RawSpec &s);

}  // namespace lsynth::specir

#endif
