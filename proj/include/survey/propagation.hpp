#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "survey/factor_graph.hpp"

namespace survey {

/// Which implementation of a sweep to run. kReference evaluates the message
/// equations edge by edge with direct products and is kept as the test
/// oracle; kParallel is the OpenMP kernel used everywhere else.
enum class Exec { kReference, kParallel };

enum class RunStatus { kConverged, kUnconverged, kContradiction };
const char* to_string(RunStatus s);

struct MessageInit {
  enum class Kind { kRandom, kUniform };
  Kind kind = Kind::kRandom;
  std::uint64_t seed = 0;
  double value = 0.0;

  static MessageInit Random(std::uint64_t seed) { return {Kind::kRandom, seed, 0.0}; }
  static MessageInit Uniform(double v) { return {Kind::kUniform, 0, v}; }
};

// -- marginals ---------------------------------------------------------------

enum class Semantics { kSolution, kCover };
const char* to_string(Semantics s);

struct VarMarginal {
  double p_plus = 0.0;
  double p_minus = 0.0;
  double p_star = 0.0;
  double magnetization() const { return p_plus - p_minus; }
};

struct MarginalTable {
  Semantics semantics = Semantics::kCover;
  std::vector<VarMarginal> vars;
  /// False when the estimator behind the table stopped early.
  bool complete = true;
};

/// m(x) = p_plus(x) - p_minus(x).
std::vector<double> magnetization(const MarginalTable& t);

/// var,p_plus,p_minus,p_star,m with optional semantics/estimator columns.
void write_marginals_csv(std::ostream& out, const MarginalTable& t,
                         const std::string& estimator = "");

// -- survey propagation ------------------------------------------------------

struct SpState {
  /// eta[e] is the survey a->x on edge e = (a, x), in [0, 1].
  std::vector<double> eta;
  std::size_t iterations = 0;
  double residual = 0.0;
};

struct SpConfig {
  double damping = 0.0;
  double tolerance = 1e-3;
  std::size_t max_iters = 1000;
  Exec exec = Exec::kParallel;
};

SpState sp_init(const FactorGraph& g, const MessageInit& init);

/// One synchronous sweep, new = (1 - damping) * computed + damping * old.
/// Returns nullopt when some variable's normalizer vanishes.
std::optional<SpState> sp_update(const FactorGraph& g, const SpState& s,
                                 double damping, Exec exec = Exec::kParallel);

struct SpRun {
  RunStatus status = RunStatus::kUnconverged;
  SpState state;
  /// Max-norm residual after each sweep.
  std::vector<double> residuals;
};

/// Sweeps until the residual drops below the tolerance. `iterations` counts
/// the sweeps before the one that confirmed convergence, so a fixed-point
/// start converges at iteration 0.
SpRun sp_run(const FactorGraph& g, const MessageInit& init, const SpConfig& cfg);
SpRun sp_run(const FactorGraph& g, SpState start, const SpConfig& cfg);

/// Cover-semantics biases from the surveys. nullopt if for some variable all
/// three weights vanish.
std::optional<MarginalTable> sp_biases(const FactorGraph& g, const SpState& s);

void write_residuals_csv(std::ostream& out, std::span<const double> residuals);

// -- belief propagation on the cover problem ---------------------------------

/// Message over a variable-node value (r, w): request r from the clause,
/// warning w from the variable. (1,1) cannot occur.
struct RequestWarning {
  double request = 0.0;  // (1, 0)
  double idle = 0.0;     // (0, 0)
  double warning = 0.0;  // (0, 1)
};

struct CoverBpState {
  std::vector<RequestWarning> var_to_clause;
  std::vector<RequestWarning> clause_to_var;
};

/// Random positive normalized messages. With `equivalence` the
/// var-to-clause messages get request == idle and the clause-to-var
/// messages idle == warning, the condition under which this iteration
/// coincides with SP.
CoverBpState cover_bp_init_random(const FactorGraph& g, std::uint64_t seed,
                                  bool equivalence);

/// Clause-to-var messages (eta, 1 - eta, 1 - eta), normalized, paired with
/// var-to-clause messages recomputed from them.
CoverBpState cover_bp_init_from_eta(const FactorGraph& g,
                                    std::span<const double> eta);

/// One sweep: var-to-clause messages from the current clause-to-var ones,
/// then clause-to-var messages from the new var-to-clause ones. Each message
/// is normalized to sum 1. nullopt on an all-zero message.
std::optional<CoverBpState> cover_bp_update(const FactorGraph& g,
                                            const CoverBpState& s);

/// Rescaled requests request / (request + idle) of the clause-to-var
/// messages; equals the SP surveys when idle == warning.
std::vector<double> cover_bp_eta(const FactorGraph& g, const CoverBpState& s);

/// The same quantity computed from the var-to-clause messages:
/// prod over y in V(a)\x of warning / (idle + warning).
std::vector<double> cover_bp_eta_from_warnings(const FactorGraph& g,
                                               const CoverBpState& s);

enum class Precision { kDouble, kQuad };

struct LockstepResult {
  /// Sweeps compared. Fewer than requested when an iteration stopped on a
  /// vanishing normalizer.
  std::size_t sweeps = 0;
  bool sp_contradiction = false;
  bool bp_contradiction = false;
  /// Max over compared sweeps and edges of |rescaled request - eta|.
  double max_diff = 0.0;
  /// Smallest 1 - eta seen; tiny values mean the surveys were collapsing
  /// onto a contradiction.
  double min_complement = 1.0;
};

/// Iterates undamped SP and the request/warning messages side by side, SP
/// starting from cover_bp_eta(init), and compares them after every sweep.
/// kQuad carries both in 113-bit floating point with the same equations.
LockstepResult sp_cover_bp_lockstep(const FactorGraph& g, const CoverBpState& init,
                                    std::size_t sweeps,
                                    Precision precision = Precision::kQuad);

// -- plain belief propagation ------------------------------------------------

struct PlainBpState {
  /// Probability that x's value falsifies a, on edge (a, x).
  std::vector<double> var_to_clause;
  /// Normalized clause-to-var weight on x's falsifying value, in [0, 1/2].
  std::vector<double> clause_to_var;
  std::size_t iterations = 0;
  double residual = 0.0;
};

struct PlainBpConfig {
  double damping = 0.5;
  double tolerance = 1e-3;
  std::size_t max_iters = 10000;
  Exec exec = Exec::kParallel;
};

/// Random init draws the clause-side product uniformly in (0, 1); uniform(v)
/// sets it to v.
PlainBpState plain_bp_init(const FactorGraph& g, const MessageInit& init);

std::optional<PlainBpState> plain_bp_update(const FactorGraph& g,
                                            const PlainBpState& s, double damping,
                                            Exec exec = Exec::kParallel);

struct PlainBpRun {
  RunStatus status = RunStatus::kUnconverged;
  PlainBpState state;
  std::vector<double> residuals;
};

PlainBpRun plain_bp_run(const FactorGraph& g, const MessageInit& init,
                        const PlainBpConfig& cfg);

/// Solution-semantics marginals from whatever state the run ended in.
std::optional<MarginalTable> plain_bp_marginals(const FactorGraph& g,
                                                const PlainBpState& s);

}  // namespace survey
