#include "lsynth/cegis/enumerate.hpp"
#include "lsynth/cegis/strategy.hpp"

namespace lsynth::cegis {

namespace {

// Exhaustive search in the fixed deterministic order; the first program
// vector satisfying every bank test wins. A `None` here is authoritative:
// the whole space at these parameters was visited.
class ExplicitStrategy final : public SynthStrategy {
 public:
  ExplicitStrategy(const specir::SpecProblem &prob, const InputBank &bank,
                   const lattice::ParamSet &params, const SolverConfig &cfg)
      : prob_(prob),
        bank_(bank),
        params_(params),
        budget_(cfg.step_candidates),
        sigma_(prob, lvm::WordWidth{params.w_syn}),
        enum_(prob, params, lvm::WordWidth{params.w_syn},
              cfg.effective_opcodes(), cfg.canonicalize) {}

  StrategyKind kind() const override { return StrategyKind::Explicit; }

  StepOutcome step() override {
    std::vector<lvm::Program> progs;
    std::vector<const lvm::Program *> ptrs(prob_.unknowns.size());
    for (int n = 0; n < budget_; ++n) {
      if (!enum_.next(progs)) return {StepOutcome::Kind::None, {}};
      for (size_t i = 0; i < progs.size(); ++i) ptrs[i] = &progs[i];
      bool ok = true;
      for (const auto &test : bank_.tests()) {
        if (!sigma_.eval(ptrs, test)) {
          ok = false;
          break;
        }
      }
      if (ok) {
        Candidate cand;
        for (size_t i = 0; i < prob_.unknowns.size(); ++i) {
          cand.witness.emplace(prob_.unknowns[i].name, progs[i]);
        }
        cand.params = params_;
        cand.producer = StrategyKind::Explicit;
        return {StepOutcome::Kind::Found, std::move(cand)};
      }
    }
    return {StepOutcome::Kind::Continue, {}};
  }

 private:
  const specir::SpecProblem &prob_;
  const InputBank &bank_;
  lattice::ParamSet params_;
  int budget_;
  specir::CompiledSigma sigma_;
  WitnessEnumerator enum_;
};

}  // namespace

std::unique_ptr<SynthStrategy> make_explicit_strategy(
    const specir::SpecProblem &prob, const InputBank &bank,
    const lattice::ParamSet &params, const SolverConfig &cfg) {
  return std::make_unique<ExplicitStrategy>(prob, bank, params, cfg);
}

}  // namespace lsynth::cegis
