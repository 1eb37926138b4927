#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "survey/covers.hpp"
#include "survey/formula.hpp"
#include "survey/propagation.hpp"
#include "survey/solver.hpp"

namespace survey {

// -- decimation --------------------------------------------------------------

struct DecimationConfig {
  /// Fraction of the remaining variables fixed per round.
  double fix_fraction = 0.01;
  /// Minimum |m| for a variable to be fixed.
  double extreme_threshold = 0.0;
  /// Below this max |m| the survey counts as trivial and walksat takes over.
  double trivial_threshold = 0.01;
  SpConfig sp;
  /// Damping values tried in turn, each from a fresh random start, when SP
  /// does not converge. SP_FAILED only after the last one also fails.
  std::vector<double> sp_retry_damping{0.5, 0.8, 0.9};
  WalkSatConfig walksat;
  std::uint64_t seed = 0;
  /// Zero disables the limit.
  std::size_t max_rounds = 0;
  double budget_seconds = 0.0;

  void validate() const;
};

enum class DecimationStatus { kSolved, kContradiction, kSpFailed, kBudget };
const char* to_string(DecimationStatus s);

struct DecimationRound {
  std::size_t round = 0;
  std::size_t n_remaining = 0;
  std::size_t sp_iters = 0;
  double max_abs_m = 0.0;
  std::size_t n_fixed = 0;
  std::string status;
};

struct DecimationOutcome {
  DecimationStatus status = DecimationStatus::kBudget;
  /// Present iff solved; satisfies the input formula.
  std::optional<Assignment> assignment;
  std::vector<DecimationRound> log;
  /// The formula left when SP or walksat gave up.
  std::optional<Formula> residual;
};

/// Survey-guided decimation: run SP, fix the most magnetized slice, simplify,
/// repeat; hand a trivial survey to walksat. No backtracking.
DecimationOutcome decimate(const Formula& f, const DecimationConfig& cfg);

/// round,n_remaining,sp_iters,max_abs_m,n_fixed,status
void write_decimation_log_csv(std::ostream& out, const DecimationOutcome& d);

// -- marginal estimators -----------------------------------------------------

/// Frequencies over every model (uniform prior). Throws std::domain_error if
/// the formula is unsatisfiable; marks the table incomplete when more than
/// `model_cap` models exist (frequencies then cover the first `model_cap`).
MarginalTable exact_solution_marginals(
    const Formula& f, std::size_t model_cap = std::numeric_limits<std::size_t>::max());

struct SampledMarginals {
  MarginalTable table;
  std::size_t samples = 0;
  std::size_t distinct = 0;
  std::vector<std::string> warnings;
};

/// Frequencies over k walksat samples, duplicates counted.
SampledMarginals sampled_solution_marginals(const Formula& f, std::size_t k,
                                            std::uint64_t seed,
                                            WalkSatConfig walksat = {});

/// Frequencies over a given multiset of models.
MarginalTable solution_marginals_from(std::span<const Assignment> models,
                                      std::size_t num_vars);

enum class CoverMethod { kBruteForce, kSat };

/// Uniform frequencies over all covers, the trivial one included.
MarginalTable exact_cover_marginals(const Formula& f,
                                    CoverMethod method = CoverMethod::kSat);

/// Frequencies over a given multiset of covers.
MarginalTable cover_marginals_from(std::span<const GeneralizedAssignment> covers,
                                   std::size_t num_vars);
MarginalTable cover_marginals_from(std::span<const CoverRecord> covers,
                                   std::size_t num_vars);

/// Peels each of the given solutions and averages over the resulting covers,
/// trivial outcomes included.
MarginalTable peeled_cover_marginals(const Formula& f,
                                     std::span<const Assignment> solutions,
                                     PeelOrder order = PeelOrder::kLowestIndex,
                                     std::uint64_t seed = 0);

struct PeeledMarginals {
  MarginalTable table;
  std::size_t samples = 0;
  std::size_t trivial = 0;
  std::vector<std::string> warnings;
};

/// Samples k solutions with walksat, then peels them.
PeeledMarginals peeled_cover_marginals(const Formula& f, std::size_t k,
                                       std::uint64_t seed,
                                       PeelOrder order = PeelOrder::kLowestIndex,
                                       WalkSatConfig walksat = {});

}  // namespace survey
