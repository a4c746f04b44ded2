#include "lsynth/cegis/gp.hpp"

namespace lsynth::cegis {

GpPopulation::GpPopulation(const specir::SpecProblem &prob,
                           const lattice::ParamSet &params,
                           const SolverConfig &cfg, uint64_t rng_seed)
    : prob_(prob),
      params_(params),
      cfg_(cfg),
      opcodes_(cfg.effective_opcodes()),
      sigma_(prob, lvm::WordWidth{params.w_syn}),
      rng_(rng_seed) {
  for (const specir::UnknownSig &sig : prob_.unknowns) {
    if (static_cast<uint32_t>(params_.length) < sig.out_arity ||
        pool_size(sig.in_arity, 0) == 0) {
      viable_ = false;  // no representable programs at these parameters
      return;
    }
  }
  pop_.reserve(cfg_.population_size);
  for (int i = 0; i < cfg_.population_size; ++i) {
    pop_.push_back(random_individual());
  }
}

uint32_t GpPopulation::pool_size(uint32_t arity, int slot) const {
  return arity + static_cast<uint32_t>(slot) +
         static_cast<uint32_t>(params_.num_consts);
}

GpIndividual::Gene GpPopulation::random_gene(uint32_t arity, int slot) {
  GpIndividual::Gene g;
  g.opcode = static_cast<uint16_t>(rng_() % opcodes_.size());
  uint32_t pool = pool_size(arity, slot);
  for (int j = 0; j < 3; ++j) {
    g.operands[j] = static_cast<uint16_t>(rng_() % pool);
  }
  return g;
}

GpIndividual GpPopulation::random_individual() {
  GpIndividual ind;
  const uint64_t cmask = lvm::WordWidth{params_.w_syn}.mask();
  for (const specir::UnknownSig &sig : prob_.unknowns) {
    std::vector<GpIndividual::Gene> gs;
    for (int i = 0; i < params_.length; ++i) {
      gs.push_back(random_gene(sig.in_arity, i));
    }
    ind.genes.push_back(std::move(gs));
    std::vector<uint64_t> cs;
    for (int i = 0; i < params_.num_consts; ++i) cs.push_back(rng_() & cmask);
    ind.consts.push_back(std::move(cs));
  }
  return ind;
}

void GpPopulation::reseed_from(const GpPopulation &prev) {
  if (!viable_) return;
  pop_.clear();
  rng_ = prev.rng_;
  generation_ = prev.generation_;
  const uint64_t cmask = lvm::WordWidth{params_.w_syn}.mask();
  for (const GpIndividual &old : prev.pop_) {
    GpIndividual ind;
    for (size_t u = 0; u < prob_.unknowns.size(); ++u) {
      std::vector<GpIndividual::Gene> gs;
      for (int i = 0; i < params_.length; ++i) {
        if (u < old.genes.size() &&
            static_cast<size_t>(i) < old.genes[u].size()) {
          gs.push_back(old.genes[u][i]);
        } else {
          gs.push_back(random_gene(prob_.unknowns[u].in_arity, i));
        }
      }
      ind.genes.push_back(std::move(gs));
      std::vector<uint64_t> cs;
      for (int i = 0; i < params_.num_consts; ++i) {
        if (u < old.consts.size() &&
            static_cast<size_t>(i) < old.consts[u].size()) {
          cs.push_back(old.consts[u][i] & cmask);
        } else {
          cs.push_back(rng_() & cmask);
        }
      }
      ind.consts.push_back(std::move(cs));
    }
    pop_.push_back(std::move(ind));
    if (static_cast<int>(pop_.size()) >= cfg_.population_size) break;
  }
  while (static_cast<int>(pop_.size()) < cfg_.population_size) {
    pop_.push_back(random_individual());
  }
}

std::vector<lvm::Program> GpPopulation::materialize(
    const GpIndividual &ind) const {
  std::vector<lvm::Program> progs;
  progs.reserve(prob_.unknowns.size());
  for (size_t u = 0; u < prob_.unknowns.size(); ++u) {
    const specir::UnknownSig &sig = prob_.unknowns[u];
    lvm::Program p;
    p.arity = sig.in_arity;
    p.constants = ind.consts[u];
    for (int i = 0; i < params_.length; ++i) {
      const GpIndividual::Gene &g = ind.genes[u][i];
      lvm::Instruction ins;
      ins.opcode = opcodes_[g.opcode % opcodes_.size()];
      int a = lvm::arity(ins.opcode);
      ins.operands.resize(a);
      uint32_t pool = pool_size(sig.in_arity, i);
      for (int j = 0; j < a; ++j) {
        // Clamp: genes spliced in from later slots may reference temps
        // that do not exist yet at this position.
        uint32_t d = g.operands[j];
        if (d >= pool) d = pool - 1;
        if (d < sig.in_arity) {
          ins.operands[j] = lvm::Operand::input(d);
        } else if (d < sig.in_arity + static_cast<uint32_t>(i)) {
          ins.operands[j] = lvm::Operand::temp(d - sig.in_arity);
        } else {
          ins.operands[j] = lvm::Operand::constant(
              d - sig.in_arity - static_cast<uint32_t>(i));
        }
      }
      p.instructions.push_back(std::move(ins));
    }
    for (uint32_t j = 0; j < sig.out_arity; ++j) {
      p.outputs.push_back(lvm::Operand::temp(
          static_cast<uint32_t>(params_.length) - sig.out_arity + j));
    }
    progs.push_back(std::move(p));
  }
  return progs;
}

Candidate GpPopulation::to_candidate(const GpIndividual &ind) const {
  Candidate cand;
  std::vector<lvm::Program> progs = materialize(ind);
  for (size_t u = 0; u < prob_.unknowns.size(); ++u) {
    cand.witness.emplace(prob_.unknowns[u].name, std::move(progs[u]));
  }
  cand.params = params_;
  cand.producer = StrategyKind::Gp;
  return cand;
}

int GpPopulation::evaluate_one(const GpIndividual &ind,
                               const InputBank &bank) const {
  scratch_progs_ = materialize(ind);
  scratch_ptrs_.resize(scratch_progs_.size());
  for (size_t i = 0; i < scratch_progs_.size(); ++i) {
    scratch_ptrs_[i] = &scratch_progs_[i];
  }
  int fit = 0;
  for (const auto &test : bank.tests()) {
    if (sigma_.eval(scratch_ptrs_, test)) ++fit;
  }
  return fit;
}

void GpPopulation::evaluate(const InputBank &bank) {
  for (GpIndividual &ind : pop_) ind.fitness = evaluate_one(ind, bank);
}

size_t GpPopulation::best_index() const {
  size_t best = 0;
  for (size_t i = 1; i < pop_.size(); ++i) {
    if (pop_[i].fitness > pop_[best].fitness) best = i;
  }
  return best;
}

size_t GpPopulation::select(uint64_t total_weight) {
  // Fitness-proportionate roulette over weight fitness+1.
  uint64_t ticket = rng_() % total_weight;
  for (size_t i = 0; i < pop_.size(); ++i) {
    uint64_t wgt = static_cast<uint64_t>(pop_[i].fitness) + 1;
    if (ticket < wgt) return i;
    ticket -= wgt;
  }
  return pop_.size() - 1;
}

GpIndividual GpPopulation::crossover(const GpIndividual &a,
                                     const GpIndividual &b) {
  GpIndividual child;
  for (size_t u = 0; u < prob_.unknowns.size(); ++u) {
    const int l = params_.length;
    // Keep a prefix of one parent and splice in a same-length segment
    // drawn from an arbitrary position of the other.
    int cut = static_cast<int>(rng_() % (l + 1));
    int take = l - cut;
    int src = take == l ? 0 : static_cast<int>(rng_() % (l - take + 1));
    std::vector<GpIndividual::Gene> gs(a.genes[u].begin(),
                                       a.genes[u].begin() + cut);
    gs.insert(gs.end(), b.genes[u].begin() + src,
              b.genes[u].begin() + src + take);
    child.genes.push_back(std::move(gs));

    const int c = params_.num_consts;
    int ccut = c == 0 ? 0 : static_cast<int>(rng_() % (c + 1));
    std::vector<uint64_t> cs(a.consts[u].begin(), a.consts[u].begin() + ccut);
    cs.insert(cs.end(), b.consts[u].begin() + ccut, b.consts[u].end());
    child.consts.push_back(std::move(cs));
  }
  return child;
}

void GpPopulation::mutate(GpIndividual &ind) {
  const uint64_t cmask = lvm::WordWidth{params_.w_syn}.mask();
  auto flip = [&] {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng_) <
           cfg_.mutation_prob;
  };
  for (size_t u = 0; u < prob_.unknowns.size(); ++u) {
    uint32_t ar = prob_.unknowns[u].in_arity;
    for (int i = 0; i < params_.length; ++i) {
      GpIndividual::Gene &g = ind.genes[u][i];
      if (flip()) g.opcode = static_cast<uint16_t>(rng_() % opcodes_.size());
      uint32_t pool = pool_size(ar, i);
      for (int j = 0; j < 3; ++j) {
        if (flip()) g.operands[j] = static_cast<uint16_t>(rng_() % pool);
      }
    }
    for (int i = 0; i < params_.num_consts; ++i) {
      if (flip()) ind.consts[u][i] = rng_() & cmask;
    }
  }
}

size_t GpPopulation::step_generation(const InputBank &bank) {
  if (pop_.empty()) return 0;
  bool stale = false;
  for (const GpIndividual &ind : pop_) {
    if (ind.fitness < 0) {
      stale = true;
      break;
    }
  }
  if (stale) evaluate(bank);

  uint64_t total_weight = 0;
  for (const GpIndividual &ind : pop_) {
    total_weight += static_cast<uint64_t>(ind.fitness) + 1;
  }

  std::vector<GpIndividual> next;
  next.reserve(pop_.size());
  size_t best = best_index();
  for (int e = 0; e < cfg_.elitism && next.size() < pop_.size(); ++e) {
    next.push_back(pop_[best]);
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  while (next.size() < pop_.size()) {
    size_t pa = select(total_weight);
    size_t pb = select(total_weight);
    GpIndividual child;
    if (unit(rng_) < cfg_.crossover_prob) {
      child = crossover(pop_[pa], pop_[pb]);
    } else {
      child = pop_[pa];
    }
    mutate(child);
    child.fitness = -1;
    next.push_back(std::move(child));
  }
  pop_ = std::move(next);
  evaluate(bank);
  ++generation_;
  return best_index();
}

namespace {

class GpStrategy final : public SynthStrategy {
 public:
  GpStrategy(GpPopulation &pop, const InputBank &bank, const SolverConfig &cfg)
      : pop_(pop), bank_(bank), cfg_(cfg) {}

  StrategyKind kind() const override { return StrategyKind::Gp; }

  StepOutcome step() override {
    if (!pop_.viable()) return {StepOutcome::Kind::Inactive, {}};
    if (first_) {
      // The carried-over population may already contain a satisfier.
      first_ = false;
      pop_.evaluate(bank_);
      size_t best = pop_.best_index();
      if (pop_.individuals()[best].fitness ==
          static_cast<int>(bank_.size())) {
        return {StepOutcome::Kind::Found,
                pop_.to_candidate(pop_.individuals()[best])};
      }
    }
    size_t best = pop_.step_generation(bank_);
    int best_fit = pop_.individuals()[best].fitness;
    if (best_fit == static_cast<int>(bank_.size())) {
      return {StepOutcome::Kind::Found,
              pop_.to_candidate(pop_.individuals()[best])};
    }
    if (best_fit > last_best_) {
      last_best_ = best_fit;
      stall_ = 0;
    } else if (++stall_ > cfg_.gp_stall_generations) {
      return {StepOutcome::Kind::Inactive, {}};
    }
    return {StepOutcome::Kind::Continue, {}};
  }

 private:
  GpPopulation &pop_;
  const InputBank &bank_;
  const SolverConfig &cfg_;
  bool first_ = true;
  int last_best_ = -1;
  uint64_t stall_ = 0;
};

}  // namespace

std::unique_ptr<SynthStrategy> make_gp_strategy(GpPopulation &pop,
                                                const InputBank &bank,
                                                const SolverConfig &cfg) {
  return std::make_unique<GpStrategy>(pop, bank, cfg);
}

}  // namespace lsynth::cegis
