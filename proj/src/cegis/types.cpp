#include "lsynth/cegis/types.hpp"

namespace lsynth::cegis {

bool InputBank::add(std::vector<uint64_t> test) {
  if (seen_.count(test)) return false;
  seen_.insert(test);
  tests_.push_back(std::move(test));
  return true;
}

std::vector<const lvm::Program *> witness_ptrs(const specir::SpecProblem &prob,
                                               const specir::Witness &w) {
  std::vector<const lvm::Program *> out;
  out.reserve(prob.unknowns.size());
  for (const specir::UnknownSig &sig : prob.unknowns) {
    out.push_back(&w.at(sig.name));
  }
  return out;
}

}  // namespace lsynth::cegis
