#ifndef LSYNTH_SAT_SOLVER_HPP
#define LSYNTH_SAT_SOLVER_HPP

#include <cstdint>
#include <span>
#include <vector>

namespace lsynth::sat {

// Literals follow the usual packed convention: variable v yields the
// positive literal 2v and the negative literal 2v+1.
using Var = int32_t;
using Lit = int32_t;

inline Lit mk_lit(Var v, bool negated = false) { return v * 2 + (negated ? 1 : 0); }
inline Lit neg(Lit l) { return l ^ 1; }
inline Var var_of(Lit l) { return l >> 1; }
inline bool sign_of(Lit l) { return l & 1; }

enum class Result { Sat, Unsat, Unknown };

// Conflict-driven clause learning solver: two-watched-literal propagation,
// VSIDS-style activities, phase saving, Luby restarts, first-UIP learning
// with recursive minimization, and activity-based learnt-clause reduction.
// solve() takes a conflict budget and is resumable, which lets a caller
// interleave solving with other candidate strategies deterministically.
class Solver {
 public:
  Var add_var();
  int num_vars() const { return static_cast<int>(assign_.size()); }

  // Returns false if the clause set is already known unsatisfiable.
  bool add_clause(std::span<const Lit> lits);
  bool add_clause(std::initializer_list<Lit> lits) {
    return add_clause(std::span<const Lit>(lits.begin(), lits.size()));
  }

  // budget < 0 means no budget.
  Result solve(int64_t conflict_budget = -1);

  bool model_value(Var v) const { return model_[v]; }

  int64_t conflicts() const { return stats_conflicts_; }
  int64_t propagations() const { return stats_propagations_; }

 private:
  struct Clause {
    uint32_t offset;  // into lit_pool_
    uint32_t size;
    bool learnt;
    double activity;
  };
  struct Watch {
    int32_t clause;
    Lit blocker;
  };

  // -1 unassigned, 0 false, 1 true (for the positive literal of the var)
  std::vector<int8_t> assign_;
  std::vector<int8_t> phase_;
  std::vector<int32_t> level_;
  std::vector<int32_t> reason_;
  std::vector<double> activity_;
  std::vector<Lit> trail_;
  std::vector<int32_t> trail_lim_;
  size_t qhead_ = 0;

  std::vector<Lit> lit_pool_;
  std::vector<Clause> clauses_;
  std::vector<std::vector<Watch>> watches_;

  // Order heap (binary max-heap on activity).
  std::vector<Var> heap_;
  std::vector<int32_t> heap_pos_;

  std::vector<bool> model_;
  bool unsat_ = false;
  double var_inc_ = 1.0;
  double cla_inc_ = 1.0;
  int64_t stats_conflicts_ = 0;
  int64_t stats_propagations_ = 0;
  int64_t conflicts_since_reduce_ = 0;
  int64_t reduce_limit_ = 4000;
  int restart_idx_ = 0;

  std::vector<int8_t> seen_;
  std::vector<Lit> learnt_tmp_;
  std::vector<Lit> analyze_stack_;

  int decision_level() const { return static_cast<int>(trail_lim_.size()); }
  int8_t value(Lit l) const {
    int8_t a = assign_[var_of(l)];
    return a < 0 ? int8_t{-1} : int8_t(a ^ static_cast<int8_t>(sign_of(l)));
  }
  void enqueue(Lit l, int32_t from);
  int32_t propagate();
  void analyze(int32_t confl, std::vector<Lit> &out_learnt, int &out_btlevel);
  bool lit_redundant(Lit l, uint32_t abstract_levels);
  void backtrack(int level);
  void bump_var(Var v);
  void bump_clause(int32_t ci);
  void decay();
  Var pick_branch();
  int32_t attach_clause(std::span<const Lit> lits, bool learnt);
  void reduce_db();
  void detach_clause(int32_t ci);

  void heap_insert(Var v);
  void heap_update(Var v);
  Var heap_pop();
  void heap_sift_up(int i);
  void heap_sift_down(int i);
};

}  // namespace lsynth::sat

#endif
