#include "lsynth/cegis/verify.hpp"

#include <random>

#include "lsynth/cegis/symbolic.hpp"

namespace lsynth::cegis {

namespace {

bool past(const Deadline &deadline) {
  return deadline && std::chrono::steady_clock::now() > *deadline;
}

}  // namespace

VerifOutcome verif(const specir::SpecProblem &prob,
                   const specir::Witness &witness, lvm::WordWidth w,
                   const SolverConfig &cfg, uint64_t sample_seed,
                   const Deadline &deadline) {
  specir::CompiledSigma sigma(prob, w);
  std::vector<const lvm::Program *> ptrs = witness_ptrs(prob, witness);

  auto domain = specir::enumerate_domain(prob, w, cfg.exhaustive_cap);
  if (domain) {
    std::vector<uint64_t> values;
    for (uint64_t i = 0; i < domain->size(); ++i) {
      domain->assignment(i, values);
      if (!sigma.eval(ptrs, values)) {
        return {VerifOutcome::Kind::Counterexample, values, "exhaustive", ""};
      }
      if ((i & 0xFFFF) == 0 && past(deadline)) {
        return {VerifOutcome::Kind::Incomplete, {}, "", "deadline"};
      }
    }
    return {VerifOutcome::Kind::Valid, {}, "exhaustive", ""};
  }

  // Domain too large to enumerate: race seeded sampling against the
  // symbolic falsification encoding, in deterministic rounds.
  std::mt19937_64 rng(sample_seed);
  std::vector<uint64_t> masks;
  for (size_t i = 0; i < prob.universals.size(); ++i) {
    masks.push_back(lvm::WordWidth{prob.var_width_at(i, w)}.mask());
  }
  std::optional<SymbolicFalsifier> falsifier;
  if (cfg.symbolic_verify) falsifier.emplace(prob, witness, w);

  uint64_t sampled = 0;
  std::vector<uint64_t> values(prob.universals.size());
  bool sampling_live = true;
  while (true) {
    if (past(deadline)) {
      return {VerifOutcome::Kind::Incomplete, {}, "", "deadline"};
    }
    if (sampling_live) {
      uint64_t chunk = cfg.step_samples;
      for (uint64_t j = 0; j < chunk && sampled < cfg.sample_count;
           ++j, ++sampled) {
        for (size_t i = 0; i < values.size(); ++i) {
          values[i] = rng() & masks[i];
        }
        if (!sigma.eval(ptrs, values)) {
          return {VerifOutcome::Kind::Counterexample, values, "sampling", ""};
        }
      }
      if (sampled >= cfg.sample_count) sampling_live = false;
    }
    if (falsifier) {
      switch (falsifier->step(cfg.step_conflicts)) {
        case sat::Result::Sat: {
          std::vector<uint64_t> cex = falsifier->counterexample();
          return {VerifOutcome::Kind::Counterexample, cex, "symbolic", ""};
        }
        case sat::Result::Unsat:
          return {VerifOutcome::Kind::Valid, {}, "symbolic", ""};
        case sat::Result::Unknown: break;
      }
    } else if (!sampling_live) {
      return {VerifOutcome::Kind::Incomplete,
              {},
              "",
              "domain exceeds the exhaustive cap and the symbolic check is "
              "disabled"};
    }
  }
}

}  // namespace lsynth::cegis
