#include "survey/formula.hpp"

#include <algorithm>
#include <deque>

#include "survey/rng.hpp"

namespace survey {

Formula::Formula(std::size_t num_vars, std::vector<Clause> clauses)
    : num_vars_(num_vars), clauses_(std::move(clauses)) {
  for (std::size_t i = 0; i < clauses_.size(); ++i) {
    const Clause& c = clauses_[i];
    if (c.empty())
      throw FormulaError("clause " + std::to_string(i) + " is empty");
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (c[j].var() == 0 || c[j].var() > num_vars_)
        throw FormulaError("clause " + std::to_string(i) + " references variable " +
                           std::to_string(c[j].var()) + " outside 1.." +
                           std::to_string(num_vars_));
      for (std::size_t k = 0; k < j; ++k)
        if (c[k] == c[j])
          throw FormulaError("clause " + std::to_string(i) +
                             " repeats literal " + std::to_string(c[j].dimacs()));
    }
    num_literals_ += c.size();
  }
}

bool Formula::has_unit_clause() const {
  return std::any_of(clauses_.begin(), clauses_.end(),
                     [](const Clause& c) { return c.size() == 1; });
}

bool Formula::has_tautology() const {
  for (const Clause& c : clauses_)
    for (std::size_t j = 0; j < c.size(); ++j)
      for (std::size_t k = 0; k < j; ++k)
        if (c[k] == ~c[j]) return true;
  return false;
}

bool clause_satisfied(const Clause& c, const Assignment& a) {
  for (Literal l : c)
    if (l.satisfied_by(a[l.index()] != 0)) return true;
  return false;
}

bool evaluate(const Formula& f, const Assignment& a) {
  if (a.size() != f.num_vars())
    throw FormulaError("assignment length " + std::to_string(a.size()) +
                       " does not match " + std::to_string(f.num_vars()) +
                       " variables");
  return std::all_of(f.clauses().begin(), f.clauses().end(),
                     [&](const Clause& c) { return clause_satisfied(c, a); });
}

Formula generate_random_ksat(std::size_t n, std::size_t m, std::size_t k,
                             std::uint64_t seed) {
  if (k == 0 || n < k)
    throw std::invalid_argument("random k-SAT needs at least k=" +
                                std::to_string(k) + " variables, got " +
                                std::to_string(n));
  Rng rng(seed);
  std::vector<Clause> clauses;
  clauses.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    Clause c;
    c.reserve(k);
    while (c.size() < k) {
      const auto var = static_cast<std::uint32_t>(uniform_below(rng, n) + 1);
      if (std::any_of(c.begin(), c.end(),
                      [var](Literal l) { return l.var() == var; }))
        continue;
      c.emplace_back(var, coin(rng));
    }
    clauses.push_back(std::move(c));
  }
  return Formula(n, std::move(clauses));
}

Formula generate_random_tree(std::size_t n, std::uint64_t seed,
                             std::size_t max_clause_size) {
  if (n < 2 || max_clause_size < 2)
    throw std::invalid_argument("tree formulas need n >= 2 and clauses of size >= 2");
  Rng rng(seed);
  std::vector<Clause> clauses;
  std::size_t used = 1;
  while (used < n) {
    const std::size_t fresh_max = std::min(max_clause_size - 1, n - used);
    const std::size_t fresh = 1 + uniform_below(rng, fresh_max);
    Clause c;
    c.emplace_back(static_cast<std::uint32_t>(uniform_below(rng, used) + 1), coin(rng));
    for (std::size_t j = 0; j < fresh; ++j)
      c.emplace_back(static_cast<std::uint32_t>(++used), coin(rng));
    // Shuffle so the attachment point is not always first.
    for (std::size_t j = c.size(); j > 1; --j)
      std::swap(c[j - 1], c[uniform_below(rng, j)]);
    clauses.push_back(std::move(c));
  }
  return Formula(n, std::move(clauses));
}

Assignment Simplified::lift(const Assignment& residual_assignment) const {
  Assignment out(fixed.size(), 0);
  for (std::size_t v = 0; v < fixed.size(); ++v) {
    if (fixed[v])
      out[v] = *fixed[v] ? 1 : 0;
    else
      out[v] = residual_assignment.at(static_cast<std::size_t>(old_to_new[v]));
  }
  return out;
}

std::optional<Simplified> simplify(const Formula& f,
                                   const PartialAssignment& fixed) {
  if (fixed.size() != f.num_vars())
    throw FormulaError("partial assignment length does not match formula");

  PartialAssignment value = fixed;
  const std::size_t m = f.num_clauses();
  std::vector<std::vector<std::size_t>> occurs(f.num_vars());
  for (std::size_t i = 0; i < m; ++i)
    for (Literal l : f.clause(i)) occurs[l.index()].push_back(i);

  std::vector<bool> satisfied(m, false);
  std::vector<std::size_t> free_count(m, 0);
  std::deque<std::size_t> queue;

  auto settle = [&](std::size_t i) -> bool {
    // Returns false on an empty clause; enqueues the implied literal of a unit.
    if (satisfied[i]) return true;
    if (free_count[i] == 0) return false;
    if (free_count[i] == 1) {
      for (Literal l : f.clause(i)) {
        if (!value[l.index()]) {
          value[l.index()] = l.positive();
          queue.push_back(l.index());
          break;
        }
      }
    }
    return true;
  };

  for (std::size_t i = 0; i < m; ++i) {
    for (Literal l : f.clause(i)) {
      const auto& v = value[l.index()];
      if (!v)
        ++free_count[i];
      else if (l.satisfied_by(*v))
        satisfied[i] = true;
    }
  }
  // Counts above already reflect the caller's fixings; the queue only
  // carries implied ones.
  for (std::size_t i = 0; i < m; ++i)
    if (!settle(i)) return std::nullopt;

  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t i : occurs[v]) {
      if (satisfied[i]) continue;
      for (Literal l : f.clause(i)) {
        if (l.index() != v) continue;
        if (l.satisfied_by(*value[v])) {
          satisfied[i] = true;
        } else {
          --free_count[i];
        }
      }
      if (!settle(i)) return std::nullopt;
    }
  }

  std::vector<Clause> work;
  work.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (satisfied[i]) continue;
    Clause reduced;
    for (Literal l : f.clause(i))
      if (!value[l.index()]) reduced.push_back(l);
    work.push_back(std::move(reduced));
  }

  Simplified out;
  out.fixed = std::move(value);
  out.old_to_new.assign(f.num_vars(), -1);
  for (std::size_t v = 0; v < f.num_vars(); ++v) {
    if (!out.fixed[v]) {
      out.old_to_new[v] = static_cast<std::int64_t>(out.new_to_old.size());
      out.new_to_old.push_back(v);
    }
  }
  std::vector<Clause> residual;
  for (std::size_t i = 0; i < work.size(); ++i) {
    Clause c;
    c.reserve(work[i].size());
    for (Literal l : work[i])
      c.emplace_back(
          static_cast<std::uint32_t>(out.old_to_new[l.index()] + 1),
          l.positive());
    residual.push_back(std::move(c));
  }
  out.residual = Formula(out.new_to_old.size(), std::move(residual));
  return out;
}

}  // namespace survey
