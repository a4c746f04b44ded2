#include "lsynth/sat/solver.hpp"

#include <algorithm>
#include <cmath>

namespace lsynth::sat {

namespace {

// Luby restart sequence, scaled by a base interval.
int64_t luby(int64_t i) {
  int64_t k = 1;
  while ((int64_t{1} << k) - 1 < i + 1) ++k;
  while ((int64_t{1} << k) - 1 != i + 1) {
    --k;
    i -= (int64_t{1} << k) - 1;
  }
  return int64_t{1} << (k - 1);
}

constexpr double kVarDecay = 0.95;
constexpr double kClaDecay = 0.999;
constexpr int64_t kRestartBase = 128;

}  // namespace

Var Solver::add_var() {
  Var v = static_cast<Var>(assign_.size());
  assign_.push_back(-1);
  phase_.push_back(0);
  level_.push_back(0);
  reason_.push_back(-1);
  activity_.push_back(0.0);
  watches_.emplace_back();
  watches_.emplace_back();
  heap_pos_.push_back(-1);
  seen_.push_back(0);
  heap_insert(v);
  return v;
}

bool Solver::add_clause(std::span<const Lit> lits) {
  if (unsat_) return false;
  // Root-level simplification: drop false/duplicate literals, detect taut.
  std::vector<Lit> cl(lits.begin(), lits.end());
  std::sort(cl.begin(), cl.end());
  cl.erase(std::unique(cl.begin(), cl.end()), cl.end());
  std::vector<Lit> out;
  for (size_t i = 0; i < cl.size(); ++i) {
    if (i + 1 < cl.size() && cl[i + 1] == neg(cl[i]) &&
        var_of(cl[i]) == var_of(cl[i + 1])) {
      return true;  // tautology
    }
    int8_t v = value(cl[i]);
    if (decision_level() == 0) {
      if (v == 1) return true;
      if (v == 0) continue;
    }
    out.push_back(cl[i]);
  }
  if (out.empty()) {
    unsat_ = true;
    return false;
  }
  if (out.size() == 1) {
    if (value(out[0]) == 0) {
      unsat_ = true;
      return false;
    }
    if (value(out[0]) == -1) {
      enqueue(out[0], -1);
      if (propagate() != -1) {
        unsat_ = true;
        return false;
      }
    }
    return true;
  }
  attach_clause(out, false);
  return true;
}

int32_t Solver::attach_clause(std::span<const Lit> lits, bool learnt) {
  Clause c;
  c.offset = static_cast<uint32_t>(lit_pool_.size());
  c.size = static_cast<uint32_t>(lits.size());
  c.learnt = learnt;
  c.activity = 0.0;
  lit_pool_.insert(lit_pool_.end(), lits.begin(), lits.end());
  int32_t ci = static_cast<int32_t>(clauses_.size());
  clauses_.push_back(c);
  watches_[neg(lits[0])].push_back({ci, lits[1]});
  watches_[neg(lits[1])].push_back({ci, lits[0]});
  return ci;
}

void Solver::detach_clause(int32_t ci) {
  const Clause &c = clauses_[ci];
  for (int k = 0; k < 2; ++k) {
    auto &ws = watches_[neg(lit_pool_[c.offset + k])];
    for (size_t i = 0; i < ws.size(); ++i) {
      if (ws[i].clause == ci) {
        ws[i] = ws.back();
        ws.pop_back();
        break;
      }
    }
  }
}

void Solver::enqueue(Lit l, int32_t from) {
  Var v = var_of(l);
  assign_[v] = sign_of(l) ? 0 : 1;
  level_[v] = decision_level();
  reason_[v] = from;
  trail_.push_back(l);
}

int32_t Solver::propagate() {
  while (qhead_ < trail_.size()) {
    Lit p = trail_[qhead_++];
    ++stats_propagations_;
    auto &ws = watches_[p];
    size_t i = 0, j = 0;
    while (i < ws.size()) {
      Watch w = ws[i];
      if (value(w.blocker) == 1) {
        ws[j++] = ws[i++];
        continue;
      }
      Clause &c = clauses_[w.clause];
      Lit *cl = &lit_pool_[c.offset];
      // Make sure the false literal is in slot 1.
      Lit not_p = neg(p);
      if (cl[0] == not_p) std::swap(cl[0], cl[1]);
      if (value(cl[0]) == 1) {
        ws[j++] = {w.clause, cl[0]};
        ++i;
        continue;
      }
      // Look for a new watch.
      bool moved = false;
      for (uint32_t k = 2; k < c.size; ++k) {
        if (value(cl[k]) != 0) {
          std::swap(cl[1], cl[k]);
          watches_[neg(cl[1])].push_back({w.clause, cl[0]});
          moved = true;
          break;
        }
      }
      if (moved) {
        ++i;
        continue;
      }
      // Unit or conflict.
      if (value(cl[0]) == 0) {
        // Conflict: restore remaining watches and report.
        while (i < ws.size()) ws[j++] = ws[i++];
        ws.resize(j);
        return w.clause;
      }
      enqueue(cl[0], w.clause);
      ws[j++] = ws[i++];
    }
    ws.resize(j);
  }
  return -1;
}

void Solver::bump_var(Var v) {
  activity_[v] += var_inc_;
  if (activity_[v] > 1e100) {
    for (double &a : activity_) a *= 1e-100;
    var_inc_ *= 1e-100;
  }
  if (heap_pos_[v] >= 0) heap_sift_up(heap_pos_[v]);
}

void Solver::bump_clause(int32_t ci) {
  Clause &c = clauses_[ci];
  c.activity += cla_inc_;
  if (c.activity > 1e20) {
    for (Clause &cc : clauses_) {
      if (cc.learnt) cc.activity *= 1e-20;
    }
    cla_inc_ *= 1e-20;
  }
}

void Solver::decay() {
  var_inc_ /= kVarDecay;
  cla_inc_ /= kClaDecay;
}

void Solver::analyze(int32_t confl, std::vector<Lit> &out_learnt,
                     int &out_btlevel) {
  out_learnt.clear();
  out_learnt.push_back(0);  // placeholder for the asserting literal
  int path_count = 0;
  Lit p = -1;
  size_t index = trail_.size();

  do {
    Clause &c = clauses_[confl];
    if (c.learnt) bump_clause(confl);
    for (uint32_t k = (p == -1 ? 0 : 1); k < c.size; ++k) {
      Lit q = lit_pool_[c.offset + k];
      Var v = var_of(q);
      if (!seen_[v] && level_[v] > 0) {
        seen_[v] = 1;
        bump_var(v);
        if (level_[v] >= decision_level()) {
          ++path_count;
        } else {
          out_learnt.push_back(q);
        }
      }
    }
    while (!seen_[var_of(trail_[index - 1])]) --index;
    p = trail_[--index];
    confl = reason_[var_of(p)];
    seen_[var_of(p)] = 0;
    --path_count;
  } while (path_count > 0);
  out_learnt[0] = neg(p);

  // Recursive minimization.
  uint32_t abstract_levels = 0;
  for (size_t i = 1; i < out_learnt.size(); ++i) {
    abstract_levels |= uint32_t{1} << (level_[var_of(out_learnt[i])] & 31);
  }
  size_t keep = 1;
  for (size_t i = 1; i < out_learnt.size(); ++i) {
    Lit l = out_learnt[i];
    if (reason_[var_of(l)] == -1 || !lit_redundant(l, abstract_levels)) {
      out_learnt[keep++] = l;
    }
  }
  std::vector<Lit> to_clear(out_learnt.begin(), out_learnt.end());
  out_learnt.resize(keep);

  if (out_learnt.size() == 1) {
    out_btlevel = 0;
  } else {
    size_t max_i = 1;
    for (size_t i = 2; i < out_learnt.size(); ++i) {
      if (level_[var_of(out_learnt[i])] > level_[var_of(out_learnt[max_i])]) {
        max_i = i;
      }
    }
    std::swap(out_learnt[1], out_learnt[max_i]);
    out_btlevel = level_[var_of(out_learnt[1])];
  }
  for (Lit l : to_clear) seen_[var_of(l)] = 0;
  for (Lit l : analyze_stack_) seen_[var_of(l)] = 0;
  analyze_stack_.clear();
}

bool Solver::lit_redundant(Lit l, uint32_t abstract_levels) {
  size_t stack_base = analyze_stack_.size();
  analyze_stack_.push_back(l);
  size_t top = stack_base;
  while (top < analyze_stack_.size()) {
    Lit cur = analyze_stack_[top++];
    int32_t r = reason_[var_of(cur)];
    if (r == -1) {
      for (size_t i = stack_base; i < analyze_stack_.size(); ++i) {
        seen_[var_of(analyze_stack_[i])] = 0;
      }
      analyze_stack_.resize(stack_base);
      return false;
    }
    const Clause &c = clauses_[r];
    for (uint32_t k = 1; k < c.size; ++k) {
      Lit q = lit_pool_[c.offset + k];
      Var v = var_of(q);
      if (seen_[v] || level_[v] == 0) continue;
      if (reason_[v] == -1 ||
          !(abstract_levels & (uint32_t{1} << (level_[v] & 31)))) {
        for (size_t i = stack_base; i < analyze_stack_.size(); ++i) {
          seen_[var_of(analyze_stack_[i])] = 0;
        }
        analyze_stack_.resize(stack_base);
        return false;
      }
      seen_[v] = 1;
      analyze_stack_.push_back(q);
    }
  }
  // Leave seen_ marks; analyze() clears them via to_clear/analyze_stack_.
  return true;
}

void Solver::backtrack(int bt_level) {
  if (decision_level() <= bt_level) return;
  size_t bound = trail_lim_[bt_level];
  for (size_t i = trail_.size(); i > bound; --i) {
    Var v = var_of(trail_[i - 1]);
    phase_[v] = assign_[v];
    assign_[v] = -1;
    reason_[v] = -1;
    if (heap_pos_[v] < 0) heap_insert(v);
  }
  trail_.resize(bound);
  trail_lim_.resize(bt_level);
  qhead_ = bound;
}

Var Solver::pick_branch() {
  while (!heap_.empty()) {
    Var v = heap_pop();
    if (assign_[v] < 0) return v;
  }
  return -1;
}

void Solver::reduce_db() {
  // Drop the least active half of the learnt clauses, keeping reasons.
  std::vector<int32_t> learnts;
  for (int32_t i = 0; i < static_cast<int32_t>(clauses_.size()); ++i) {
    if (clauses_[i].learnt) learnts.push_back(i);
  }
  if (learnts.size() < 100) return;
  std::sort(learnts.begin(), learnts.end(), [&](int32_t a, int32_t b) {
    return clauses_[a].activity < clauses_[b].activity;
  });
  std::vector<bool> is_reason(clauses_.size(), false);
  for (Lit l : trail_) {
    int32_t r = reason_[var_of(l)];
    if (r >= 0) is_reason[r] = true;
  }
  size_t limit = learnts.size() / 2;
  std::vector<bool> dead(clauses_.size(), false);
  for (size_t i = 0; i < limit; ++i) {
    int32_t ci = learnts[i];
    if (is_reason[ci] || clauses_[ci].size <= 2) continue;
    detach_clause(ci);
    dead[ci] = true;
  }
  // Compact the clause array so indices stay stable via a remap.
  std::vector<int32_t> remap(clauses_.size(), -1);
  std::vector<Clause> kept;
  std::vector<Lit> pool;
  for (size_t i = 0; i < clauses_.size(); ++i) {
    if (dead[i]) continue;
    remap[i] = static_cast<int32_t>(kept.size());
    Clause c = clauses_[i];
    uint32_t off = static_cast<uint32_t>(pool.size());
    pool.insert(pool.end(), lit_pool_.begin() + c.offset,
                lit_pool_.begin() + c.offset + c.size);
    c.offset = off;
    kept.push_back(c);
  }
  clauses_ = std::move(kept);
  lit_pool_ = std::move(pool);
  for (auto &ws : watches_) {
    for (auto &w : ws) w.clause = remap[w.clause];
  }
  for (Lit l : trail_) {
    int32_t &r = reason_[var_of(l)];
    if (r >= 0) r = remap[r];
  }
}

Result Solver::solve(int64_t conflict_budget) {
  if (unsat_) return Result::Unsat;
  int64_t budget_left = conflict_budget;
  int64_t restart_limit = kRestartBase * luby(restart_idx_);
  int64_t conflicts_this_restart = 0;

  for (;;) {
    int32_t confl = propagate();
    if (confl != -1) {
      ++stats_conflicts_;
      ++conflicts_this_restart;
      ++conflicts_since_reduce_;
      if (decision_level() == 0) {
        unsat_ = true;
        return Result::Unsat;
      }
      int bt_level = 0;
      analyze(confl, learnt_tmp_, bt_level);
      backtrack(bt_level);
      if (learnt_tmp_.size() == 1) {
        enqueue(learnt_tmp_[0], -1);
      } else {
        int32_t ci = attach_clause(learnt_tmp_, true);
        bump_clause(ci);
        enqueue(learnt_tmp_[0], ci);
      }
      decay();
      if (budget_left > 0 && --budget_left == 0) {
        backtrack(0);
        return Result::Unknown;
      }
      if (conflicts_this_restart >= restart_limit) {
        ++restart_idx_;
        backtrack(0);
        restart_limit = kRestartBase * luby(restart_idx_);
        conflicts_this_restart = 0;
      }
      if (conflicts_since_reduce_ >= reduce_limit_) {
        backtrack(0);
        reduce_db();
        conflicts_since_reduce_ = 0;
        reduce_limit_ += reduce_limit_ / 3;
      }
    } else {
      Var next = pick_branch();
      if (next == -1) {
        model_.assign(assign_.size(), false);
        for (size_t v = 0; v < assign_.size(); ++v) model_[v] = assign_[v] == 1;
        backtrack(0);
        return Result::Sat;
      }
      trail_lim_.push_back(static_cast<int32_t>(trail_.size()));
      enqueue(mk_lit(next, phase_[next] == 0), -1);
    }
  }
}

void Solver::heap_insert(Var v) {
  heap_pos_[v] = static_cast<int32_t>(heap_.size());
  heap_.push_back(v);
  heap_sift_up(heap_pos_[v]);
}

Var Solver::heap_pop() {
  Var top = heap_[0];
  heap_pos_[top] = -1;
  heap_[0] = heap_.back();
  heap_.pop_back();
  if (!heap_.empty()) {
    heap_pos_[heap_[0]] = 0;
    heap_sift_down(0);
  }
  return top;
}

void Solver::heap_sift_up(int i) {
  Var v = heap_[i];
  while (i > 0) {
    int parent = (i - 1) / 2;
    if (activity_[heap_[parent]] >= activity_[v]) break;
    heap_[i] = heap_[parent];
    heap_pos_[heap_[i]] = i;
    i = parent;
  }
  heap_[i] = v;
  heap_pos_[v] = i;
}

void Solver::heap_sift_down(int i) {
  Var v = heap_[i];
  int n = static_cast<int>(heap_.size());
  for (;;) {
    int child = 2 * i + 1;
    if (child >= n) break;
    if (child + 1 < n && activity_[heap_[child + 1]] > activity_[heap_[child]]) {
      ++child;
    }
    if (activity_[heap_[child]] <= activity_[v]) break;
    heap_[i] = heap_[child];
    heap_pos_[heap_[i]] = i;
    i = child;
  }
  heap_[i] = v;
  heap_pos_[v] = i;
}

}  // namespace lsynth::sat
