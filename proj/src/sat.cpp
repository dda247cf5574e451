#include "uf1/sat.hpp"

#include <algorithm>
#include <cmath>

namespace uf1::sat {

namespace {

double luby(double y, int x) {
  int size = 1, seq = 0;
  while (size < x + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x = x % size;
  }
  return std::pow(y, seq);
}

}  // namespace

Solver::Solver() = default;

Var Solver::new_var() {
  Var v = num_vars();
  assigns_.push_back(kUndef);
  reason_.push_back(kNoReason);
  levels_.push_back(0);
  phase_.push_back(default_positive_ ? 0 : 1);
  seen_.push_back(0);
  activity_.push_back(0);
  heap_pos_.push_back(-1);
  watches_.emplace_back();
  watches_.emplace_back();
  heap_insert(v);
  return v;
}

void Solver::attach(int cref) {
  const Clause& c = clauses_[cref];
  watches_[(~c.lits[0]).x].push_back({cref, c.lits[1]});
  watches_[(~c.lits[1]).x].push_back({cref, c.lits[0]});
}

bool Solver::add_clause(std::vector<Lit> lits) {
  if (!ok_) return false;
  cancel_until(0);
  std::sort(lits.begin(), lits.end());
  std::vector<Lit> out;
  Lit prev{-2};
  for (Lit p : lits) {
    if (value(p) == kTrue || p == ~prev) return true;
    if (value(p) != kFalse && p != prev) out.push_back(p);
    prev = p;
  }
  ++num_original_;
  if (out.empty()) return ok_ = false;
  if (out.size() == 1) {
    enqueue(out[0], kNoReason);
    if (propagate() != kNoReason) ok_ = false;
    return ok_;
  }
  clauses_.push_back({std::move(out), false, false, 0});
  attach(static_cast<int>(clauses_.size()) - 1);
  return true;
}

void Solver::enqueue(Lit p, int reason) {
  Var v = var(p);
  assigns_[v] = static_cast<int8_t>(sign(p));
  reason_[v] = reason;
  levels_[v] = level();
  trail_.push_back(p);
}

int Solver::propagate() {
  int confl = kNoReason;
  while (qhead_ < trail_.size()) {
    Lit p = trail_[qhead_++];
    std::vector<Watcher>& ws = watches_[p.x];
    Lit false_lit = ~p;
    size_t i = 0, j = 0;
    while (i < ws.size()) {
      Watcher w = ws[i++];
      if (value(w.blocker) == kTrue) {
        ws[j++] = w;
        continue;
      }
      Clause& c = clauses_[w.cref];
      if (c.deleted) continue;
      if (c.lits[0] == false_lit) std::swap(c.lits[0], c.lits[1]);
      Lit first = c.lits[0];
      Watcher nw{w.cref, first};
      if (first != w.blocker && value(first) == kTrue) {
        ws[j++] = nw;
        continue;
      }
      bool moved = false;
      for (size_t k = 2; k < c.lits.size(); ++k) {
        if (value(c.lits[k]) != kFalse) {
          std::swap(c.lits[1], c.lits[k]);
          watches_[(~c.lits[1]).x].push_back(nw);
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[j++] = nw;
      if (value(first) == kFalse) {
        confl = w.cref;
        qhead_ = trail_.size();
        while (i < ws.size()) ws[j++] = ws[i++];
      } else {
        enqueue(first, w.cref);
      }
    }
    ws.resize(j);
    if (confl != kNoReason) break;
  }
  return confl;
}

void Solver::bump_var(Var v) {
  if ((activity_[v] += var_inc_) > 1e100) {
    for (double& a : activity_) a *= 1e-100;
    var_inc_ *= 1e-100;
  }
  if (heap_pos_[v] >= 0) heap_up(heap_pos_[v]);
}

void Solver::bump_clause(Clause& c) {
  if ((c.activity += cla_inc_) > 1e20) {
    for (int cr : learnts_) clauses_[cr].activity *= 1e-20;
    cla_inc_ *= 1e-20;
  }
}

bool Solver::redundant(Lit p) const {
  int r = reason_[var(p)];
  if (r == kNoReason) return false;
  const Clause& c = clauses_[r];
  for (size_t k = 1; k < c.lits.size(); ++k) {
    Var u = var(c.lits[k]);
    if (!seen_[u] && levels_[u] > 0) return false;
  }
  return true;
}

void Solver::analyze(int confl, std::vector<Lit>& learnt, int& bt_level) {
  learnt.clear();
  learnt.push_back(Lit{});
  int path = 0;
  Lit p{-2};
  int index = static_cast<int>(trail_.size()) - 1;
  do {
    Clause& c = clauses_[confl];
    if (c.learnt) bump_clause(c);
    for (size_t j = (p.x == -2 ? 0 : 1); j < c.lits.size(); ++j) {
      Lit q = c.lits[j];
      Var v = var(q);
      if (!seen_[v] && levels_[v] > 0) {
        bump_var(v);
        seen_[v] = 1;
        if (levels_[v] >= level()) ++path;
        else learnt.push_back(q);
      }
    }
    while (!seen_[var(trail_[index--])]) {
    }
    p = trail_[index + 1];
    confl = reason_[var(p)];
    seen_[var(p)] = 0;
    --path;
  } while (path > 0);
  learnt[0] = ~p;

  std::vector<Lit> all(learnt.begin() + 1, learnt.end());
  size_t j = 1;
  for (size_t i = 1; i < learnt.size(); ++i)
    if (!redundant(learnt[i])) learnt[j++] = learnt[i];
  learnt.resize(j);
  for (Lit q : all) seen_[var(q)] = 0;

  bt_level = 0;
  if (learnt.size() > 1) {
    size_t max_i = 1;
    for (size_t i = 2; i < learnt.size(); ++i)
      if (levels_[var(learnt[i])] > levels_[var(learnt[max_i])]) max_i = i;
    std::swap(learnt[1], learnt[max_i]);
    bt_level = levels_[var(learnt[1])];
  }
}

void Solver::analyze_final(Lit a) {
  core_.clear();
  core_.push_back(a);
  if (level() == 0) return;
  seen_[var(a)] = 1;
  for (int i = static_cast<int>(trail_.size()) - 1; i >= trail_lim_[0]; --i) {
    Var x = var(trail_[i]);
    if (!seen_[x]) continue;
    if (reason_[x] == kNoReason) {
      if (trail_[i] != a) core_.push_back(trail_[i]);
    } else {
      const Clause& c = clauses_[reason_[x]];
      for (size_t k = 1; k < c.lits.size(); ++k)
        if (levels_[var(c.lits[k])] > 0) seen_[var(c.lits[k])] = 1;
    }
    seen_[x] = 0;
  }
  seen_[var(a)] = 0;
}

void Solver::cancel_until(int lvl) {
  if (level() <= lvl) return;
  for (int c = static_cast<int>(trail_.size()) - 1; c >= trail_lim_[lvl]; --c) {
    Var v = var(trail_[c]);
    assigns_[v] = kUndef;
    reason_[v] = kNoReason;
    phase_[v] = sign(trail_[c]);
    if (heap_pos_[v] < 0) heap_insert(v);
  }
  trail_.resize(trail_lim_[lvl]);
  qhead_ = trail_.size();
  trail_lim_.resize(lvl);
}

Lit Solver::pick_branch() {
  while (!heap_.empty()) {
    Var v = heap_pop();
    if (assigns_[v] == kUndef) return mk_lit(v, phase_[v]);
  }
  return Lit{-2};
}

void Solver::reduce_db() {
  std::sort(learnts_.begin(), learnts_.end(), [&](int a, int b) {
    return clauses_[a].activity < clauses_[b].activity;
  });
  std::vector<int> keep;
  size_t half = learnts_.size() / 2;
  for (size_t i = 0; i < learnts_.size(); ++i) {
    Clause& c = clauses_[learnts_[i]];
    bool locked = reason_[var(c.lits[0])] == learnts_[i] && value(c.lits[0]) == kTrue;
    if (i < half && !locked && c.lits.size() > 2) {
      c.deleted = true;
      c.lits.clear();
      c.lits.shrink_to_fit();
    } else {
      keep.push_back(learnts_[i]);
    }
  }
  learnts_ = std::move(keep);
}

Result Solver::solve(const std::vector<Lit>& assumptions, int64_t conflict_budget) {
  model_.clear();
  core_.clear();
  if (!ok_) return Result::Unsat;
  cancel_until(0);
  assumptions_ = assumptions;
  max_learnts_ = std::max<double>(static_cast<double>(num_original_) / 3.0, 2000.0);
  uint64_t start = conflicts_;
  std::vector<Lit> learnt;
  for (int restart = 0;; ++restart) {
    int64_t limit = static_cast<int64_t>(luby(2, restart) * 100);
    int64_t here = 0;
    for (;;) {
      int confl = propagate();
      if (confl != kNoReason) {
        ++conflicts_;
        ++here;
        if (level() == 0) {
          ok_ = false;
          return Result::Unsat;
        }
        int bt;
        analyze(confl, learnt, bt);
        cancel_until(bt);
        if (learnt.size() == 1) {
          enqueue(learnt[0], kNoReason);
        } else {
          clauses_.push_back({learnt, true, false, 0});
          int cref = static_cast<int>(clauses_.size()) - 1;
          attach(cref);
          learnts_.push_back(cref);
          bump_clause(clauses_[cref]);
          enqueue(learnt[0], cref);
        }
        var_inc_ /= 0.95;
        cla_inc_ /= 0.999;
        continue;
      }
      if (conflict_budget >= 0 && static_cast<int64_t>(conflicts_ - start) >= conflict_budget) {
        cancel_until(0);
        return Result::Unknown;
      }
      if (here >= limit) break;
      if (static_cast<double>(learnts_.size()) - static_cast<double>(trail_.size()) >= max_learnts_)
        reduce_db();
      Lit next{-2};
      while (level() < static_cast<int>(assumptions_.size())) {
        Lit a = assumptions_[level()];
        if (value(a) == kTrue) {
          trail_lim_.push_back(static_cast<int>(trail_.size()));
        } else if (value(a) == kFalse) {
          analyze_final(a);
          cancel_until(0);
          return Result::Unsat;
        } else {
          next = a;
          break;
        }
      }
      if (next.x == -2) {
        next = pick_branch();
        if (next.x == -2) {
          model_.assign(assigns_.size(), false);
          for (size_t v = 0; v < assigns_.size(); ++v) model_[v] = assigns_[v] == kTrue;
          cancel_until(0);
          return Result::Sat;
        }
      }
      trail_lim_.push_back(static_cast<int>(trail_.size()));
      enqueue(next, kNoReason);
    }
    cancel_until(0);
    max_learnts_ *= 1.1;
  }
}

// ---------------------------------------------------------------- heap

void Solver::heap_insert(Var v) {
  heap_pos_[v] = static_cast<int>(heap_.size());
  heap_.push_back(v);
  heap_up(heap_pos_[v]);
}

void Solver::heap_up(int i) {
  Var v = heap_[i];
  while (i > 0) {
    int parent = (i - 1) >> 1;
    if (!heap_less(v, heap_[parent])) break;
    heap_[i] = heap_[parent];
    heap_pos_[heap_[i]] = i;
    i = parent;
  }
  heap_[i] = v;
  heap_pos_[v] = i;
}

void Solver::heap_down(int i) {
  Var v = heap_[i];
  int n = static_cast<int>(heap_.size());
  for (;;) {
    int child = 2 * i + 1;
    if (child >= n) break;
    if (child + 1 < n && heap_less(heap_[child + 1], heap_[child])) ++child;
    if (!heap_less(heap_[child], v)) break;
    heap_[i] = heap_[child];
    heap_pos_[heap_[i]] = i;
    i = child;
  }
  heap_[i] = v;
  heap_pos_[v] = i;
}

Var Solver::heap_pop() {
  Var top = heap_[0];
  heap_pos_[top] = -1;
  Var last = heap_.back();
  heap_.pop_back();
  if (!heap_.empty()) {
    heap_[0] = last;
    heap_pos_[last] = 0;
    heap_down(0);
  }
  return top;
}

}  // namespace uf1::sat
