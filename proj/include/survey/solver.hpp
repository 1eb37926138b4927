#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "survey/formula.hpp"

namespace survey {

enum class SolveStatus { kSat, kUnsat, kUnknown };

const char* to_string(SolveStatus s);

struct SolveStats {
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
  std::uint64_t flips = 0;
  std::uint64_t conflicts = 0;
};

struct SolveResult {
  SolveStatus status = SolveStatus::kUnknown;
  /// Present iff status is kSat; always re-checked with evaluate().
  std::optional<Assignment> model;
  SolveStats stats;
};

inline constexpr std::uint64_t kUnlimited =
    std::numeric_limits<std::uint64_t>::max();

/// DPLL with two-watched-literal unit propagation, no learning. Branches on
/// the lowest-index unassigned variable, value 1 first. Budget exhaustion
/// yields kUnknown.
SolveResult dpll_solve(const Formula& f, std::uint64_t decision_budget = kUnlimited);

struct ModelList {
  std::vector<Assignment> models;
  /// True when the search space was exhausted (the list is every model).
  bool complete = false;
  SolveStats stats;
};

/// All models up to `limit`, in DPLL order. After each model the search
/// blocks it by flipping the deepest unflipped decision, which is exactly the
/// blocking clause over the current decision literals under chronological
/// backtracking.
ModelList enumerate_models(const Formula& f,
                           std::size_t limit = std::numeric_limits<std::size_t>::max(),
                           std::uint64_t decision_budget = kUnlimited);

/// Calls `visit` for each model without materializing the list. `visit`
/// returns false to stop early. Returns the completion flag and stats.
template <typename Visit>
ModelList for_each_model(const Formula& f, Visit&& visit,
                         std::uint64_t decision_budget = kUnlimited);

struct WalkSatConfig {
  std::uint64_t max_flips = 10'000'000;
  double noise = 0.5;
  /// Flips between restarts from a fresh random assignment; 0 disables
  /// restarts.
  std::uint64_t restart_interval = 0;
  std::uint64_t seed = 0;
};

/// WalkSAT/SKC: pick a random unsatisfied clause; flip a zero-break variable
/// if one exists, else with probability `noise` a random variable of the
/// clause, else a minimum-break one.
SolveResult walksat(const Formula& f, const WalkSatConfig& config,
                    const std::optional<Assignment>& initial = std::nullopt);

struct SampleSet {
  std::vector<Assignment> models;
  std::size_t requested = 0;
  std::size_t distinct = 0;
  std::vector<std::string> warnings;
};

/// k models from independent walksat runs, run i seeded with
/// derive_seed(seed, i). Duplicates are kept and counted. Not uniform.
SampleSet sample_solutions(const Formula& f, std::size_t k, std::uint64_t seed,
                           WalkSatConfig config = {});

// -- implementation detail -------------------------------------------------

namespace detail {

/// Chronological DPLL engine shared by solve and enumeration.
class Dpll {
 public:
  explicit Dpll(const Formula& f);

  /// Advances to the next model. Returns kSat with the model in model(),
  /// kUnsat when exhausted, kUnknown when the budget ran out.
  SolveStatus next(std::uint64_t decision_budget);
  Assignment model() const;
  const SolveStats& stats() const { return stats_; }

 private:
  static std::size_t lit_code(Literal l) {
    return 2 * l.index() + (l.positive() ? 0 : 1);
  }
  int lit_value(std::size_t code) const {
    const std::int8_t v = value_[code >> 1];
    if (v < 0) return -1;
    return (code & 1) ? (v == 0) : (v == 1);
  }
  void assign(std::size_t code);
  bool propagate();
  /// Undoes the deepest unflipped decision and takes its other branch.
  bool backtrack();

  struct Decision {
    std::size_t trail_pos;
    std::size_t var;
    bool flipped;
  };

  std::size_t num_vars_;
  std::vector<std::vector<std::size_t>> clauses_;
  std::vector<std::vector<std::size_t>> watches_;
  std::vector<std::int8_t> value_;
  std::vector<std::size_t> trail_;
  std::size_t qhead_ = 0;
  std::vector<Decision> decisions_;
  std::size_t next_var_ = 0;
  bool started_ = false;
  bool exhausted_ = false;
  bool have_model_ = false;
  SolveStats stats_;
};

}  // namespace detail

template <typename Visit>
ModelList for_each_model(const Formula& f, Visit&& visit,
                         std::uint64_t decision_budget) {
  detail::Dpll engine(f);
  ModelList out;
  for (;;) {
    const SolveStatus s = engine.next(decision_budget);
    if (s == SolveStatus::kUnsat) {
      out.complete = true;
      break;
    }
    if (s == SolveStatus::kUnknown) break;
    if (!visit(engine.model())) break;
  }
  out.stats = engine.stats();
  return out;
}

}  // namespace survey
