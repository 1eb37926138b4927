#include "survey/cdcl.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace survey {

namespace {

std::uint32_t to_lit(Literal l) {
  return static_cast<std::uint32_t>(2 * l.index() + (l.positive() ? 0 : 1));
}

// Luby sequence 1 1 2 1 1 2 4 ...
double luby(double y, std::uint64_t x) {
  std::uint64_t size = 1, seq = 0;
  while (size < x + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x %= size;
  }
  return std::pow(y, static_cast<double>(seq));
}

constexpr double kVarDecay = 0.95;
constexpr double kClauseDecay = 0.999;
constexpr std::uint64_t kRestartBase = 100;

}  // namespace

CdclSolver::CdclSolver(std::size_t num_vars)
    : num_vars_(num_vars),
      watches_(2 * num_vars),
      assigns_(num_vars, -1),
      polarity_(num_vars, 0),
      level_(num_vars, 0),
      reason_(num_vars, kNoReason),
      seen_(num_vars, 0),
      activity_(num_vars, 0.0),
      heap_pos_(num_vars, -1) {
  for (std::size_t v = 0; v < num_vars; ++v) heap_insert(v);
}

CdclSolver::CdclSolver(const Formula& f) : CdclSolver(f.num_vars()) {
  for (const Clause& c : f.clauses())
    if (!add_clause(c)) break;
  max_learnts_ = std::max(1000.0, static_cast<double>(f.num_clauses()) / 3.0);
}

bool CdclSolver::add_clause(std::span<const Literal> clause) {
  if (!ok_) return false;
  cancel_until(0);
  std::vector<Lit> lits;
  lits.reserve(clause.size());
  for (Literal l : clause) lits.push_back(to_lit(l));
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  std::vector<Lit> kept;
  for (std::size_t i = 0; i < lits.size(); ++i) {
    if (i + 1 < lits.size() && (lits[i] ^ 1) == lits[i + 1]) return true;
    const int v = value(lits[i]);
    if (v == 1) return true;
    if (v == -1) kept.push_back(lits[i]);
  }
  if (kept.empty()) return ok_ = false;
  if (kept.size() == 1) {
    enqueue(kept[0], kNoReason);
    if (propagate() != kNoReason) ok_ = false;
    return ok_;
  }
  attach(std::move(kept), false);
  return true;
}

std::uint32_t CdclSolver::attach(std::vector<Lit> lits, bool learnt) {
  const auto cref = static_cast<std::uint32_t>(clauses_.size());
  watches_[lits[0]].push_back({cref, lits[1]});
  watches_[lits[1]].push_back({cref, lits[0]});
  clauses_.push_back({std::move(lits), 0.0, learnt, false});
  if (learnt) ++num_learnts_;
  return cref;
}

void CdclSolver::enqueue(Lit l, std::uint32_t reason) {
  const std::size_t v = l >> 1;
  assigns_[v] = static_cast<std::int8_t>((l & 1) ? 0 : 1);
  level_[v] = static_cast<std::uint32_t>(decision_level());
  reason_[v] = reason;
  trail_.push_back(l);
}

// Returns the conflicting clause or kNoReason.
std::uint32_t CdclSolver::propagate() {
  std::uint32_t confl = kNoReason;
  while (qhead_ < trail_.size()) {
    const Lit false_lit = trail_[qhead_++] ^ 1;
    auto& ws = watches_[false_lit];
    std::size_t i = 0, j = 0;
    while (i < ws.size()) {
      const Watch w = ws[i];
      if (value(w.blocker) == 1) {
        ws[j++] = ws[i++];
        continue;
      }
      auto& c = clauses_[w.cref].lits;
      if (c[0] == false_lit) std::swap(c[0], c[1]);
      ++i;
      const Lit first = c[0];
      if (first != w.blocker && value(first) == 1) {
        ws[j++] = {w.cref, first};
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < c.size(); ++k) {
        if (value(c[k]) != 0) {
          std::swap(c[1], c[k]);
          watches_[c[1]].push_back({w.cref, first});
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[j++] = {w.cref, first};
      if (value(first) == 0) {
        confl = w.cref;
        qhead_ = trail_.size();
        while (i < ws.size()) ws[j++] = ws[i++];
      } else {
        enqueue(first, w.cref);
        ++stats_.propagations;
      }
    }
    ws.resize(j);
  }
  return confl;
}

bool CdclSolver::redundant(Lit l) const {
  const std::uint32_t r = reason_[l >> 1];
  if (r == kNoReason) return false;
  const auto& c = clauses_[r].lits;
  for (std::size_t k = 1; k < c.size(); ++k) {
    const std::size_t v = c[k] >> 1;
    if (!seen_[v] && level_[v] > 0) return false;
  }
  return true;
}

void CdclSolver::analyze(std::uint32_t confl, std::vector<Lit>& learnt,
                         std::size_t& bt_level) {
  learnt.assign(1, 0);
  std::size_t path = 0;
  Lit p = 0;
  bool have_p = false;
  std::size_t idx = trail_.size();
  do {
    ClauseData& c = clauses_[confl];
    if (c.learnt) bump_clause(c);
    for (std::size_t k = have_p ? 1 : 0; k < c.lits.size(); ++k) {
      const Lit q = c.lits[k];
      const std::size_t v = q >> 1;
      if (seen_[v] || level_[v] == 0) continue;
      bump_var(v);
      seen_[v] = 1;
      if (level_[v] >= decision_level())
        ++path;
      else
        learnt.push_back(q);
    }
    while (!seen_[trail_[--idx] >> 1]) {
    }
    p = trail_[idx];
    have_p = true;
    confl = reason_[p >> 1];
    seen_[p >> 1] = 0;
    --path;
  } while (path > 0);
  learnt[0] = p ^ 1;

  analyzed_.assign(learnt.begin() + 1, learnt.end());
  std::size_t keep = 1;
  for (std::size_t k = 1; k < learnt.size(); ++k)
    if (!redundant(learnt[k])) learnt[keep++] = learnt[k];
  learnt.resize(keep);
  for (Lit l : analyzed_) seen_[l >> 1] = 0;

  bt_level = 0;
  if (learnt.size() > 1) {
    std::size_t best = 1;
    for (std::size_t k = 2; k < learnt.size(); ++k)
      if (level_[learnt[k] >> 1] > level_[learnt[best] >> 1]) best = k;
    std::swap(learnt[1], learnt[best]);
    bt_level = level_[learnt[1] >> 1];
  }
}

void CdclSolver::cancel_until(std::size_t level) {
  if (decision_level() <= level) return;
  for (std::size_t k = trail_.size(); k-- > trail_lim_[level];) {
    const std::size_t v = trail_[k] >> 1;
    polarity_[v] = assigns_[v];
    assigns_[v] = -1;
    reason_[v] = kNoReason;
    if (heap_pos_[v] < 0) heap_insert(v);
  }
  trail_.resize(trail_lim_[level]);
  trail_lim_.resize(level);
  qhead_ = trail_.size();
}

bool CdclSolver::locked(std::uint32_t cref) const {
  const Lit l = clauses_[cref].lits[0];
  return value(l) == 1 && reason_[l >> 1] == cref;
}

void CdclSolver::reduce_db() {
  std::vector<std::uint32_t> learnts;
  for (std::uint32_t c = 0; c < clauses_.size(); ++c)
    if (clauses_[c].learnt && !clauses_[c].deleted) learnts.push_back(c);
  std::sort(learnts.begin(), learnts.end(), [&](std::uint32_t a, std::uint32_t b) {
    return clauses_[a].activity < clauses_[b].activity;
  });
  const std::size_t target = learnts.size() / 2;
  std::size_t removed = 0;
  for (std::uint32_t c : learnts) {
    if (removed >= target) break;
    if (clauses_[c].lits.size() <= 2 || locked(c)) continue;
    clauses_[c].deleted = true;
    clauses_[c].lits.clear();
    clauses_[c].lits.shrink_to_fit();
    ++removed;
  }
  num_learnts_ -= removed;
  rebuild_watches();
}

void CdclSolver::rebuild_watches() {
  for (auto& ws : watches_) ws.clear();
  for (std::uint32_t c = 0; c < clauses_.size(); ++c) {
    if (clauses_[c].deleted) continue;
    const auto& l = clauses_[c].lits;
    watches_[l[0]].push_back({c, l[1]});
    watches_[l[1]].push_back({c, l[0]});
  }
}

void CdclSolver::bump_var(std::size_t v) {
  if ((activity_[v] += var_inc_) > 1e100) {
    for (double& a : activity_) a *= 1e-100;
    var_inc_ *= 1e-100;
  }
  if (heap_pos_[v] >= 0) heap_up(static_cast<std::size_t>(heap_pos_[v]));
}

void CdclSolver::bump_clause(ClauseData& c) {
  if ((c.activity += clause_inc_) > 1e20) {
    for (auto& d : clauses_)
      if (d.learnt) d.activity *= 1e-20;
    clause_inc_ *= 1e-20;
  }
}

void CdclSolver::heap_insert(std::size_t v) {
  heap_pos_[v] = static_cast<std::ptrdiff_t>(heap_.size());
  heap_.push_back(v);
  heap_up(heap_.size() - 1);
}

std::size_t CdclSolver::heap_pop() {
  const std::size_t top = heap_[0];
  heap_pos_[top] = -1;
  heap_[0] = heap_.back();
  heap_.pop_back();
  if (!heap_.empty()) {
    heap_pos_[heap_[0]] = 0;
    heap_down(0);
  }
  return top;
}

void CdclSolver::heap_up(std::size_t pos) {
  const std::size_t v = heap_[pos];
  while (pos > 0) {
    const std::size_t parent = (pos - 1) / 2;
    if (!heap_less(v, heap_[parent])) break;
    heap_[pos] = heap_[parent];
    heap_pos_[heap_[pos]] = static_cast<std::ptrdiff_t>(pos);
    pos = parent;
  }
  heap_[pos] = v;
  heap_pos_[v] = static_cast<std::ptrdiff_t>(pos);
}

void CdclSolver::heap_down(std::size_t pos) {
  const std::size_t v = heap_[pos];
  for (;;) {
    std::size_t child = 2 * pos + 1;
    if (child >= heap_.size()) break;
    if (child + 1 < heap_.size() && heap_less(heap_[child + 1], heap_[child])) ++child;
    if (!heap_less(heap_[child], v)) break;
    heap_[pos] = heap_[child];
    heap_pos_[heap_[pos]] = static_cast<std::ptrdiff_t>(pos);
    pos = child;
  }
  heap_[pos] = v;
  heap_pos_[v] = static_cast<std::ptrdiff_t>(pos);
}

SolveStatus CdclSolver::solve(std::uint64_t conflict_budget) {
  if (!ok_) return SolveStatus::kUnsat;
  cancel_until(0);
  if (propagate() != kNoReason) {
    ok_ = false;
    return SolveStatus::kUnsat;
  }
  std::uint64_t spent = 0;
  std::uint64_t restarts = 0;
  std::vector<Lit> learnt;
  for (;;) {
    const auto limit = static_cast<std::uint64_t>(luby(2.0, restarts) * kRestartBase);
    std::uint64_t in_restart = 0;
    for (;;) {
      const std::uint32_t confl = propagate();
      if (confl != kNoReason) {
        ++conflicts_;
        ++stats_.conflicts;
        ++spent;
        ++in_restart;
        if (decision_level() == 0) {
          ok_ = false;
          return SolveStatus::kUnsat;
        }
        std::size_t bt = 0;
        analyze(confl, learnt, bt);
        cancel_until(bt);
        if (learnt.size() == 1) {
          enqueue(learnt[0], kNoReason);
        } else {
          const std::uint32_t cref = attach(learnt, true);
          bump_clause(clauses_[cref]);
          enqueue(learnt[0], cref);
        }
        var_inc_ /= kVarDecay;
        clause_inc_ /= kClauseDecay;
        if (spent >= conflict_budget) {
          cancel_until(0);
          return SolveStatus::kUnknown;
        }
        continue;
      }
      if (in_restart >= limit) {
        cancel_until(0);
        break;
      }
      if (static_cast<double>(num_learnts_) - static_cast<double>(trail_.size()) >=
          max_learnts_) {
        reduce_db();
        max_learnts_ *= 1.1;
      }
      std::size_t next = num_vars_;
      while (!heap_.empty()) {
        const std::size_t v = heap_pop();
        if (assigns_[v] < 0) {
          next = v;
          break;
        }
      }
      if (next == num_vars_) return SolveStatus::kSat;
      ++stats_.decisions;
      trail_lim_.push_back(trail_.size());
      enqueue(static_cast<Lit>(2 * next + (polarity_[next] == 1 ? 0 : 1)), kNoReason);
    }
    ++restarts;
  }
}

Assignment CdclSolver::model() const {
  Assignment a(num_vars_);
  for (std::size_t v = 0; v < num_vars_; ++v) a[v] = assigns_[v] == 1 ? 1 : 0;
  return a;
}

ModelList enumerate_models_cdcl(const Formula& f, std::size_t limit,
                                std::uint64_t conflict_budget,
                                std::span<const std::size_t> projection) {
  ModelList out;
  CdclSolver solver(f);
  std::vector<std::size_t> all;
  if (projection.empty()) {
    all.resize(f.num_vars());
    for (std::size_t v = 0; v < all.size(); ++v) all[v] = v;
    projection = all;
  }
  std::vector<Literal> block;
  while (out.models.size() < limit) {
    const std::uint64_t used = solver.conflicts();
    const std::uint64_t left =
        conflict_budget == kUnlimited ? kUnlimited
                                      : (used >= conflict_budget ? 0 : conflict_budget - used);
    const SolveStatus s = solver.solve(left);
    if (s == SolveStatus::kUnsat) {
      out.complete = true;
      break;
    }
    if (s == SolveStatus::kUnknown) break;
    Assignment m = solver.model();
    if (!evaluate(f, m)) throw std::logic_error("cdcl returned a non-model");
    block.clear();
    for (std::size_t v : projection)
      block.emplace_back(static_cast<std::uint32_t>(v + 1), m[v] == 0);
    out.models.push_back(std::move(m));
    if (!solver.add_clause(block)) {
      out.complete = true;
      break;
    }
  }
  out.stats = solver.stats();
  return out;
}

}  // namespace survey
