#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace survey {

/// A signed reference to a 1-based variable, stored DIMACS-style.
class Literal {
 public:
  constexpr Literal() = default;
  constexpr Literal(std::uint32_t var, bool positive)
      : code_(positive ? static_cast<std::int32_t>(var)
                       : -static_cast<std::int32_t>(var)) {}

  static constexpr Literal FromDimacs(std::int32_t code) {
    Literal l;
    l.code_ = code;
    return l;
  }

  constexpr std::uint32_t var() const {
    return static_cast<std::uint32_t>(code_ < 0 ? -code_ : code_);
  }
  /// Zero-based variable index.
  constexpr std::size_t index() const { return var() - 1; }
  constexpr bool positive() const { return code_ > 0; }
  constexpr std::int32_t dimacs() const { return code_; }
  constexpr Literal operator~() const { return FromDimacs(-code_); }

  /// True iff assigning `value` to the variable makes this literal true.
  constexpr bool satisfied_by(bool value) const { return value == positive(); }

  friend constexpr bool operator==(Literal, Literal) = default;

 private:
  std::int32_t code_ = 0;
};

using Clause = std::vector<Literal>;

/// Complete truth assignment, one byte (0 or 1) per variable, zero-based.
using Assignment = std::vector<std::uint8_t>;

/// Partial assignment: nullopt marks a free variable.
using PartialAssignment = std::vector<std::optional<bool>>;

class FormulaError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Immutable CNF formula over variables 1..N.
class Formula {
 public:
  Formula() = default;
  /// Throws FormulaError on an empty clause, a literal outside 1..num_vars,
  /// or a repeated literal within a clause.
  Formula(std::size_t num_vars, std::vector<Clause> clauses);

  std::size_t num_vars() const { return num_vars_; }
  std::size_t num_clauses() const { return clauses_.size(); }
  std::size_t num_literals() const { return num_literals_; }
  double ratio() const {
    return num_vars_ == 0 ? 0.0
                          : static_cast<double>(clauses_.size()) / num_vars_;
  }

  const std::vector<Clause>& clauses() const { return clauses_; }
  const Clause& clause(std::size_t i) const { return clauses_[i]; }

  bool has_unit_clause() const;
  bool has_tautology() const;

  friend bool operator==(const Formula&, const Formula&) = default;

 private:
  std::size_t num_vars_ = 0;
  std::size_t num_literals_ = 0;
  std::vector<Clause> clauses_;
};

bool clause_satisfied(const Clause& c, const Assignment& a);

/// True iff every clause has a literal made true by `a`.
bool evaluate(const Formula& f, const Assignment& a);

/// Uniform random k-CNF: each clause draws k distinct variables without
/// replacement and independent fair signs. Duplicate clauses are allowed.
Formula generate_random_ksat(std::size_t n, std::size_t m, std::size_t k,
                             std::uint64_t seed);

inline Formula generate_random_3sat(std::size_t n, std::size_t m,
                                    std::uint64_t seed) {
  return generate_random_ksat(n, m, 3, seed);
}

/// Random formula whose factor graph is a tree: each new clause joins one
/// existing variable to between 1 and max_clause_size-1 fresh ones, with
/// random signs. No unit clauses.
Formula generate_random_tree(std::size_t n, std::uint64_t seed,
                             std::size_t max_clause_size = 3);

/// Result of fixing variables and unit-propagating.
struct Simplified {
  Formula residual;
  /// All fixings over the original variables, including implied ones.
  PartialAssignment fixed;
  /// old zero-based index -> new zero-based index, or -1 when fixed.
  std::vector<std::int64_t> old_to_new;
  /// new zero-based index -> old zero-based index.
  std::vector<std::size_t> new_to_old;

  /// Lifts an assignment of the residual back to the original variables.
  Assignment lift(const Assignment& residual_assignment) const;
};

/// Removes satisfied clauses and false literals, unit-propagates to a
/// fixpoint and renumbers the unfixed variables densely. Returns nullopt
/// when an empty clause arises.
std::optional<Simplified> simplify(const Formula& f,
                                   const PartialAssignment& fixed);

}  // namespace survey
