#ifndef LSYNTH_CEGIS_GP_HPP
#define LSYNTH_CEGIS_GP_HPP

#include <array>
#include <random>

#include "lsynth/cegis/strategy.hpp"
#include "lsynth/cegis/types.hpp"

namespace lsynth::cegis {

// Linear genetic programming over fixed-length instruction genomes, one
// genome segment per unknown. Individuals are scored by the number of bank
// tests they satisfy; populations evolve by fitness-proportionate
// selection, segment-splice crossover with SSA repair by clamping, and
// per-gene mutation, with the best individual carried over unchanged.
struct GpIndividual {
  struct Gene {
    uint16_t opcode = 0;  // index into the allowed opcode list
    std::array<uint16_t, 3> operands{0, 0, 0};
  };
  std::vector<std::vector<Gene>> genes;      // [unknown][slot]
  std::vector<std::vector<uint64_t>> consts; // [unknown][const]
  int fitness = -1;
};

class GpPopulation {
 public:
  // Bootstraps a random population for the given parameters.
  GpPopulation(const specir::SpecProblem &prob, const lattice::ParamSet &params,
               const SolverConfig &cfg, uint64_t rng_seed);

  // Incremental evolution: carries the previous population's individuals
  // into a (possibly resized) genome layout instead of restarting from
  // random. Fitness is left stale; the next evaluation recomputes it.
  void reseed_from(const GpPopulation &prev);

  // Recomputes fitness of every individual against the bank.
  void evaluate(const InputBank &bank);

  // One generation: selection, crossover, mutation, elitism, evaluation.
  // Returns the index of the best individual.
  size_t step_generation(const InputBank &bank);

  const std::vector<GpIndividual> &individuals() const { return pop_; }
  uint64_t generation() const { return generation_; }
  size_t best_index() const;
  bool viable() const { return viable_; }

  // Builds the concrete programs for an individual, clamping displaced
  // operand indices into each slot's valid range.
  std::vector<lvm::Program> materialize(const GpIndividual &ind) const;

  Candidate to_candidate(const GpIndividual &ind) const;

 private:
  const specir::SpecProblem &prob_;
  lattice::ParamSet params_;
  const SolverConfig &cfg_;
  std::vector<lvm::Opcode> opcodes_;
  specir::CompiledSigma sigma_;
  std::vector<GpIndividual> pop_;
  std::mt19937_64 rng_;
  uint64_t generation_ = 0;
  bool viable_ = true;

  GpIndividual random_individual();
  GpIndividual::Gene random_gene(uint32_t arity, int slot);
  uint32_t pool_size(uint32_t arity, int slot) const;
  int evaluate_one(const GpIndividual &ind, const InputBank &bank) const;
  size_t select(uint64_t total_weight);
  GpIndividual crossover(const GpIndividual &a, const GpIndividual &b);
  void mutate(GpIndividual &ind);

  mutable std::vector<lvm::Program> scratch_progs_;
  mutable std::vector<const lvm::Program *> scratch_ptrs_;
};

// Adapter that lets a persistent population participate in the race.
std::unique_ptr<SynthStrategy> make_gp_strategy(GpPopulation &pop,
                                                const InputBank &bank,
                                                const SolverConfig &cfg);

}  // namespace lsynth::cegis

#endif
