#include "lsynth/cegis/solver.hpp"

#include <future>

#include "lsynth/cegis/gp.hpp"
#include "lsynth/cegis/strategy.hpp"
#include "lsynth/cegis/symbolic.hpp"
#include "lsynth/lattice/generalize.hpp"
#include "lsynth/lvm/table.hpp"

namespace lsynth::cegis {

namespace {

uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

struct RaceResult {
  enum class Kind { Found, None, Timeout };
  Kind kind = Kind::Timeout;
  Candidate candidate;
  StrategyKind winner = StrategyKind::Explicit;
};

// One synth call: every enabled strategy advances by one bounded step per
// round (concurrently when configured), and the first definitive answer in
// strategy-priority order wins; the others are cancelled by simply not
// being stepped again.
RaceResult run_race(std::vector<std::unique_ptr<SynthStrategy>> &strategies,
                    const SolverConfig &cfg, const Deadline &deadline) {
  std::vector<SynthStrategy *> live;
  for (auto &s : strategies) live.push_back(s.get());
  while (!live.empty()) {
    if (deadline && std::chrono::steady_clock::now() > *deadline) {
      return {RaceResult::Kind::Timeout, {}, {}};
    }
    std::vector<StepOutcome> outs(live.size());
    if (cfg.parallel_race && live.size() > 1) {
      std::vector<std::future<StepOutcome>> futs;
      futs.reserve(live.size());
      for (SynthStrategy *s : live) {
        futs.push_back(
            std::async(std::launch::async, [s] { return s->step(); }));
      }
      for (size_t i = 0; i < live.size(); ++i) outs[i] = futs[i].get();
    } else {
      for (size_t i = 0; i < live.size(); ++i) outs[i] = live[i]->step();
    }
    std::vector<SynthStrategy *> still;
    RaceResult result;
    bool decided = false;
    for (size_t i = 0; i < live.size(); ++i) {
      if (decided) break;
      switch (outs[i].kind) {
        case StepOutcome::Kind::Found:
          result = {RaceResult::Kind::Found, std::move(outs[i].candidate),
                    live[i]->kind()};
          decided = true;
          break;
        case StepOutcome::Kind::None:
          result = {RaceResult::Kind::None, {}, live[i]->kind()};
          decided = true;
          break;
        case StepOutcome::Kind::Continue: still.push_back(live[i]); break;
        case StepOutcome::Kind::Inactive: break;
      }
    }
    if (decided) return result;
    live = std::move(still);
  }
  throw SolverError(
      "no candidate strategy can run under this configuration");
}

int64_t ms_between(std::chrono::steady_clock::time_point a,
                   std::chrono::steady_clock::time_point b) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(b - a).count();
}

}  // namespace

int resolve_target_width(const specir::SpecProblem &prob,
                         const SolverConfig &cfg) {
  if (cfg.target_width_override > 0) return cfg.target_width_override;
  int w = 0;
  for (const auto &[name, width] : prob.universals) w = std::max(w, width);
  return w > 0 ? w : 8;
}

SynthesisResult refinement_loop(const specir::SpecProblem &prob,
                                const SolverConfig &cfg) {
  using clock = std::chrono::steady_clock;
  SynthesisResult result;
  Stats &stats = result.stats;
  for (StrategyKind k : cfg.strategies) stats.synth_wins[strategy_name(k)];

  const int target = resolve_target_width(prob, cfg);
  const lvm::WordWidth w_target{target};

  const int target_bits = prob.input_bits_at(w_target);
  const uint64_t bound =
      lvm::max_length_bound(target_bits, cfg.max_length_cap);
  const bool bound_exact =
      target_bits < 63 && (uint64_t{1} << target_bits) <= cfg.max_length_cap;
  uint64_t max_len = bound;
  if (cfg.max_length_override > 0) {
    max_len = std::min<uint64_t>(cfg.max_length_override, bound);
  }
  const bool unsat_eligible =
      bound_exact && max_len == bound && cfg.full_opcode_set();

  lattice::ParamSet params = lattice::initial_params(target);
  params.length = cfg.initial_length;
  params.num_consts = std::min(cfg.initial_consts, cfg.initial_length);
  params.w_syn = std::min(cfg.initial_width, target);
  stats.trajectory.push_back(params);

  InputBank bank;
  std::unique_ptr<GpPopulation> gp;
  lattice::ParamSet gp_params;
  const uint64_t gp_seed = splitmix64(cfg.seed ^ 0x6770);
  uint64_t sample_ctr = 0;
  auto next_sample_seed = [&] {
    return splitmix64(cfg.seed ^ splitmix64(++sample_ctr));
  };

  const auto start = clock::now();
  Deadline deadline;
  if (cfg.timeout_ms > 0) {
    deadline = start + std::chrono::milliseconds(cfg.timeout_ms);
  }

  auto finish = [&](Verdict v, const specir::Witness *wit,
                    const std::string &note) {
    result.verdict = v;
    if (wit) {
      result.witness = *wit;
      result.minimal_length = 0;
      for (const auto &[name, p] : *wit) result.minimal_length += p.length();
    }
    stats.note = note;
    return result;
  };

  auto tally_verif = [&](const VerifOutcome &o) {
    if (o.kind != VerifOutcome::Kind::Incomplete) ++stats.verif_wins[o.winner];
  };

  // Complete target-width check used by the generalization step, with a
  // cheap bank precheck in front.
  specir::CompiledSigma sigma_target(prob, w_target);
  auto generalize_verify = [&](const specir::Witness &wit) -> bool {
    std::vector<const lvm::Program *> ptrs = witness_ptrs(prob, wit);
    for (const auto &test : bank.tests()) {
      if (!sigma_target.eval(ptrs, test)) return false;
    }
    VerifOutcome o = verif(prob, wit, w_target, cfg, next_sample_seed(),
                           deadline);
    tally_verif(o);
    return o.kind == VerifOutcome::Kind::Valid;
  };

  for (;;) {
    if (deadline && clock::now() > *deadline) {
      return finish(Verdict::BoundExhausted, nullptr, "timeout");
    }

    // --- synth: race the candidate strategies over the current bank ---
    const auto synth_start = clock::now();
    std::vector<std::unique_ptr<SynthStrategy>> strategies;
    for (StrategyKind kind : cfg.strategies) {
      switch (kind) {
        case StrategyKind::Explicit:
          strategies.push_back(make_explicit_strategy(prob, bank, params, cfg));
          break;
        case StrategyKind::Symbolic:
          strategies.push_back(make_symbolic_strategy(prob, bank, params, cfg));
          break;
        case StrategyKind::Gp: {
          if (!gp) {
            gp = std::make_unique<GpPopulation>(prob, params, cfg, gp_seed);
            gp_params = params;
          } else if (!(gp_params == params)) {
            auto fresh =
                std::make_unique<GpPopulation>(prob, params, cfg, gp_seed);
            fresh->reseed_from(*gp);
            gp = std::move(fresh);
            gp_params = params;
          }
          strategies.push_back(make_gp_strategy(*gp, bank, cfg));
          break;
        }
      }
    }
    RaceResult race = run_race(strategies, cfg, deadline);
    stats.synth_ms += ms_between(synth_start, clock::now());

    if (race.kind == RaceResult::Kind::Timeout) {
      return finish(Verdict::BoundExhausted, nullptr, "timeout");
    }
    if (race.kind == RaceResult::Kind::None) {
      ++stats.synth_wins[strategy_name(race.winner)];
      auto np =
          lattice::next_params(params, lattice::SearchOutcome::SynthFailed,
                               max_len);
      if (!np) {
        if (unsat_eligible) {
          return finish(Verdict::Unsat, nullptr,
                        "length bound " + std::to_string(max_len) +
                            " exhausted");
        }
        return finish(Verdict::BoundExhausted, nullptr,
                      "length bound exhausted under a restricted "
                      "configuration");
      }
      params = *np;
      stats.trajectory.push_back(params);
      continue;
    }

    ++stats.synth_wins[strategy_name(race.winner)];
    ++stats.iterations;
    Candidate cand = std::move(race.candidate);

    // --- verif at the target width ---
    const auto verif_start = clock::now();
    VerifOutcome tv =
        verif(prob, cand.witness, w_target, cfg, next_sample_seed(), deadline);
    tally_verif(tv);
    stats.verif_ms += ms_between(verif_start, clock::now());
    if (tv.kind == VerifOutcome::Kind::Incomplete) {
      return finish(Verdict::BoundExhausted, nullptr,
                    tv.note.empty() ? "verification incomplete" : tv.note);
    }
    if (tv.kind == VerifOutcome::Kind::Valid) {
      return finish(Verdict::Sat, &cand.witness, "");
    }

    if (params.w_syn == target) {
      // The small-word check coincides with the failed target check:
      // parameters stay, the counterexample grows the bank.
      bank.add(tv.cex);
      continue;
    }

    // --- the small-width edge of the decision tree ---
    const auto small_start = clock::now();
    VerifOutcome sv = verif(prob, cand.witness, lvm::WordWidth{params.w_syn},
                            cfg, next_sample_seed(), deadline);
    tally_verif(sv);
    stats.verif_ms += ms_between(small_start, clock::now());
    if (sv.kind == VerifOutcome::Kind::Incomplete) {
      return finish(Verdict::BoundExhausted, nullptr,
                    sv.note.empty() ? "verification incomplete" : sv.note);
    }

    if (sv.kind == VerifOutcome::Kind::Valid) {
      const auto gen_start = clock::now();
      auto lifted = lattice::generalize(cand, lvm::WordWidth{params.w_syn},
                                        w_target, cfg.generalize_cap,
                                        generalize_verify);
      stats.generalize_ms += ms_between(gen_start, clock::now());
      if (lifted) {
        return finish(Verdict::Sat, &*lifted, "");
      }
      auto np = lattice::next_params(
          params, lattice::SearchOutcome::VerifSmallOkGenFailed, max_len);
      params = *np;
      stats.trajectory.push_back(params);
      continue;
    }

    // Failed at the small width as well: parameters unchanged. The bank
    // gains the target counterexample truncated to the synthesis width,
    // the original for the eventual target-width iterations, and the
    // small-width counterexample (which is always new, guaranteeing
    // progress).
    std::vector<uint64_t> truncated = tv.cex;
    for (size_t i = 0; i < truncated.size(); ++i) {
      truncated[i] &=
          lvm::WordWidth{prob.var_width_at(i, lvm::WordWidth{params.w_syn})}
              .mask();
    }
    bank.add(truncated);
    bank.add(tv.cex);
    bank.add(sv.cex);
  }
}

}  // namespace lsynth::cegis
