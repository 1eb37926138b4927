#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "survey/formula.hpp"
#include "survey/solver.hpp"

namespace survey {

/// Incremental CDCL solver: two watched literals with blockers, first-UIP
/// learning with local minimization, VSIDS, phase saving, Luby restarts and
/// activity-based clause deletion. Clauses may be added between solve calls,
/// which is how model enumeration blocks the models it has seen.
class CdclSolver {
 public:
  explicit CdclSolver(std::size_t num_vars);
  explicit CdclSolver(const Formula& f);

  /// Returns false once the clause set is known to be unsatisfiable.
  bool add_clause(std::span<const Literal> clause);

  /// kUnknown when `conflict_budget` conflicts pass without an answer.
  SolveStatus solve(std::uint64_t conflict_budget = kUnlimited);

  /// Valid after solve() returned kSat.
  Assignment model() const;

  std::size_t num_vars() const { return num_vars_; }
  std::uint64_t conflicts() const { return conflicts_; }
  const SolveStats& stats() const { return stats_; }

 private:
  using Lit = std::uint32_t;  // 2 * var + negated
  static constexpr std::uint32_t kNoReason = std::numeric_limits<std::uint32_t>::max();

  struct Watch {
    std::uint32_t cref;
    Lit blocker;
  };
  struct ClauseData {
    std::vector<Lit> lits;
    double activity = 0.0;
    bool learnt = false;
    bool deleted = false;
  };

  int value(Lit l) const {
    const std::int8_t v = assigns_[l >> 1];
    return v < 0 ? -1 : (v ^ static_cast<int>(l & 1));
  }
  std::size_t decision_level() const { return trail_lim_.size(); }

  void enqueue(Lit l, std::uint32_t reason);
  std::uint32_t propagate();
  void analyze(std::uint32_t confl, std::vector<Lit>& learnt, std::size_t& bt_level);
  bool redundant(Lit l) const;
  void cancel_until(std::size_t level);
  std::uint32_t attach(std::vector<Lit> lits, bool learnt);
  void reduce_db();
  void rebuild_watches();
  bool locked(std::uint32_t cref) const;

  void bump_var(std::size_t v);
  void bump_clause(ClauseData& c);
  void heap_insert(std::size_t v);
  std::size_t heap_pop();
  void heap_up(std::size_t pos);
  void heap_down(std::size_t pos);
  bool heap_less(std::size_t a, std::size_t b) const { return activity_[a] > activity_[b]; }

  std::size_t num_vars_;
  bool ok_ = true;
  std::vector<ClauseData> clauses_;
  std::vector<std::vector<Watch>> watches_;
  std::vector<std::int8_t> assigns_;
  std::vector<std::int8_t> polarity_;
  std::vector<std::uint32_t> level_;
  std::vector<std::uint32_t> reason_;
  std::vector<Lit> trail_;
  std::vector<std::size_t> trail_lim_;
  std::size_t qhead_ = 0;
  std::vector<std::uint8_t> seen_;
  std::vector<Lit> analyzed_;

  std::vector<double> activity_;
  double var_inc_ = 1.0;
  double clause_inc_ = 1.0;
  std::vector<std::size_t> heap_;
  std::vector<std::ptrdiff_t> heap_pos_;

  std::size_t num_learnts_ = 0;
  double max_learnts_ = 0.0;
  std::uint64_t conflicts_ = 0;
  SolveStats stats_;
};

/// All models of `f` up to `limit`, projected onto `projection` (every
/// variable when empty): after each model a clause forbidding its values on
/// the projection is added. With a projection onto variables that determine
/// the rest, every model is returned exactly once. `conflict_budget` bounds
/// the total conflicts over the whole enumeration.
ModelList enumerate_models_cdcl(
    const Formula& f, std::size_t limit = std::numeric_limits<std::size_t>::max(),
    std::uint64_t conflict_budget = kUnlimited,
    std::span<const std::size_t> projection = {});

}  // namespace survey
