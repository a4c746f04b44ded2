#ifndef LSYNTH_CEGIS_TYPES_HPP
#define LSYNTH_CEGIS_TYPES_HPP

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "lsynth/cegis/config.hpp"
#include "lsynth/lattice/params.hpp"
#include "lsynth/specir/eval.hpp"

namespace lsynth::cegis {

// The growing set of test vectors the synthesizer must satisfy. Tests are
// full assignments to the universals at target width, kept in insertion
// order without duplicates; strategies mask them down when synthesizing at
// a reduced width.
class InputBank {
 public:
  // Returns true when the test was new.
  bool add(std::vector<uint64_t> test);
  const std::vector<std::vector<uint64_t>> &tests() const { return tests_; }
  size_t size() const { return tests_.size(); }

 private:
  std::vector<std::vector<uint64_t>> tests_;
  std::set<std::vector<uint64_t>> seen_;
};

struct Candidate {
  specir::Witness witness;
  lattice::ParamSet params;
  StrategyKind producer = StrategyKind::Explicit;

  size_t total_length() const {
    size_t n = 0;
    for (const auto &[name, p] : witness) n += p.length();
    return n;
  }
};

enum class Verdict { Sat, Unsat, BoundExhausted };

struct Stats {
  uint64_t iterations = 0;  // synth calls that produced a candidate
  std::map<std::string, uint64_t> synth_wins;
  std::map<std::string, uint64_t> verif_wins;
  int64_t synth_ms = 0;
  int64_t verif_ms = 0;
  int64_t generalize_ms = 0;
  std::vector<lattice::ParamSet> trajectory;
  std::string note;
};

struct SynthesisResult {
  Verdict verdict = Verdict::BoundExhausted;
  specir::Witness witness;      // populated for Sat
  uint64_t minimal_length = 0;  // sum of witness program lengths
  Stats stats;
};

// Witness programs in problem-unknown order, as the compiled evaluator
// expects them.
std::vector<const lvm::Program *> witness_ptrs(const specir::SpecProblem &prob,
                                               const specir::Witness &w);

}  // namespace lsynth::cegis

#endif
