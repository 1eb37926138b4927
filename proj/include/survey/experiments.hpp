#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "survey/covers.hpp"
#include "survey/pipelines.hpp"
#include "survey/propagation.hpp"
#include "survey/solver.hpp"

namespace survey {

/// Ordered key/value pairs written as "# key=value" header lines.
using ParamList = std::vector<std::pair<std::string, std::string>>;

void write_param_header(std::ostream& out, const std::string& kind,
                        const ParamList& params);

/// Number of clauses for ratio alpha: round(alpha * n).
std::size_t clauses_for_ratio(std::size_t n, double alpha);

/// Wilson score interval at 95%.
std::pair<double, double> wilson_interval(std::size_t successes, std::size_t trials);

// -- peeling -------------------------------------------------------------------

struct PeelingConfig {
  std::size_t n = 1000;
  double alpha = 4.2;
  std::size_t formulas = 1;
  std::size_t samples = 200;
  std::uint64_t seed = 0;
  PeelOrder order = PeelOrder::kLowestIndex;
  WalkSatConfig walksat;
  /// Formulas on which walksat finds nothing are redrawn up to this many times.
  std::size_t max_redraws = 20;
  /// Keep every stride-th trace point (first and last always kept).
  std::size_t trace_stride = 1;
  double budget_seconds = 0.0;

  ParamList params() const;
};

struct PeelingTrace {
  std::size_t formula = 0;
  std::size_t sample = 0;
  std::vector<PeelStep> trace;
  GeneralizedAssignment terminal;
  bool trivial = false;
  bool monotone = false;
  bool cover_ok = false;
};

struct PeelingReport {
  std::vector<PeelingTrace> traces;
  /// Drawn formulas by index; skipped draws leave an empty formula.
  std::vector<Formula> formulas;
  std::size_t trivial = 0;
  std::size_t nontrivial = 0;
  std::size_t redraws = 0;
  bool budget_hit = false;
  std::vector<std::string> warnings;
  double trivial_fraction() const;
};

PeelingReport run_peeling(const PeelingConfig& cfg);
/// formula,sample,step,stars,unsupported,label plus trailing summary comments.
void write_peeling_csv(std::ostream& out, const PeelingConfig& cfg,
                       const PeelingReport& r);

// -- transition ----------------------------------------------------------------

struct TransitionConfig {
  std::size_t n = 50;
  std::vector<double> alphas;  // empty means 1.0..6.0 step 0.25
  std::size_t formulas_per_point = 500;
  std::uint64_t seed = 0;
  /// Covers enumerated per formula before counts are marked incomplete.
  std::size_t cover_limit = 100000;
  /// Only decide whether a non-trivial cover exists (stop at the second).
  bool existence_only = false;
  /// Conflict budget per formula; 0 means unlimited.
  std::uint64_t conflict_budget = 0;
  double budget_seconds = 0.0;

  std::vector<double> grid() const;
  ParamList params() const;
};

struct TransitionPoint {
  double alpha = 0.0;
  std::size_t m = 0;
  std::size_t formulas = 0;
  std::size_t satisfiable = 0;
  /// Formulas whose existence question was settled.
  std::size_t decided = 0;
  std::size_t with_nontrivial = 0;
  /// Formulas whose enumeration finished; counts below average over these.
  std::size_t complete = 0;
  double mean_nontrivial = 0.0;
  double mean_true = 0.0;
  double mean_false = 0.0;

  double p_nontrivial() const {
    return decided ? static_cast<double>(with_nontrivial) / static_cast<double>(decided) : 0.0;
  }
};

struct TransitionReport {
  std::vector<TransitionPoint> points;
  bool budget_hit = false;
};

TransitionReport run_transition(const TransitionConfig& cfg);
/// alpha,m,formulas,satisfiable,decided,p_nontrivial,ci_low,ci_high,complete,
/// mean_nontrivial,mean_true,mean_false
void write_transition_csv(std::ostream& out, const TransitionConfig& cfg,
                          const TransitionReport& r);

/// Linear interpolation of the first upward crossing of `level`.
std::optional<double> crossing_alpha(const TransitionReport& r, double level = 0.5);

// -- growth --------------------------------------------------------------------

struct GrowthConfig {
  std::vector<std::size_t> sizes;  // empty means 100..500 step 100
  double alpha = 4.2;
  std::size_t samples_per_formula = 100;
  std::size_t formulas = 10;
  std::uint64_t seed = 0;
  PeelOrder order = PeelOrder::kLowestIndex;
  WalkSatConfig walksat;
  std::size_t max_redraws = 20;
  double budget_seconds = 0.0;

  std::vector<std::size_t> grid() const;
  ParamList params() const;
};

struct GrowthPoint {
  std::size_t n = 0;
  std::size_t formulas = 0;
  std::size_t samples = 0;
  std::size_t nontrivial = 0;
  double p = 0.0;
  /// (2 (7/8)^alpha)^n, the expected solution count.
  double scale = 0.0;
  double scaled = 0.0;
  bool censored = false;
};

struct GrowthReport {
  std::vector<GrowthPoint> points;
  /// exp of the least-squares slope of ln(scaled) against n over uncensored
  /// points; absent with fewer than two.
  std::optional<double> growth_base;
  std::size_t redraws = 0;
  bool budget_hit = false;
};

double expected_solution_scale(double alpha, std::size_t n);
GrowthReport run_growth(const GrowthConfig& cfg);
/// n,formulas,samples,nontrivial,p,scale,scaled,censored
void write_growth_csv(std::ostream& out, const GrowthConfig& cfg, const GrowthReport& r);

// -- scatter -------------------------------------------------------------------

enum class ScatterKind { kSpVsCover, kCoverVsSolution, kBpVsSolution };
const char* to_string(ScatterKind k);
ScatterKind parse_scatter_kind(std::string_view s);

enum class Source { kExact, kSampled };

struct ScatterConfig {
  std::size_t n = 50;
  double alpha = 4.2;
  std::size_t formulas = 1;
  std::uint64_t seed = 0;
  ScatterKind which = ScatterKind::kSpVsCover;
  /// kExact: uniform over all covers; kSampled: peeled walksat samples.
  Source cover_source = Source::kExact;
  /// kExact: DPLL enumeration; kSampled: walksat samples.
  Source solution_source = Source::kExact;
  std::size_t samples = 500;
  /// Skip formulas whose only cover is the trivial one (exact covers only).
  bool require_nontrivial = false;
  /// Fill every estimator column regardless of `which`.
  bool all_estimators = false;
  std::size_t max_redraws = 1000;
  SpConfig sp;
  PlainBpConfig bp;
  WalkSatConfig walksat;
  PeelOrder order = PeelOrder::kLowestIndex;
  double budget_seconds = 0.0;

  ParamList params() const;
};

/// One variable of one formula; absent estimates are nullopt.
struct ScatterRow {
  std::size_t formula = 0;
  std::size_t var = 0;
  std::optional<double> sp;
  std::optional<double> cover;
  std::optional<double> solution;
  std::optional<double> bp;
};

struct ScatterReport {
  std::vector<ScatterRow> rows;
  std::size_t formulas = 0;
  std::size_t redraws = 0;
  bool budget_hit = false;
  std::vector<std::string> warnings;
};

/// Computes the estimators `which` needs (all of them for kSpVsCover and
/// kCoverVsSolution share the cover column).
ScatterReport run_scatter(const ScatterConfig& cfg);
/// formula,var,m_x,m_y with "NA" for absent values.
void write_scatter_csv(std::ostream& out, const ScatterConfig& cfg,
                       const ScatterReport& r);

/// Among rows where |x| >= threshold, how many have y of the same strict sign.
struct SignAgreement {
  std::size_t qualifying = 0;
  std::size_t agreeing = 0;
  double fraction() const {
    return qualifying ? static_cast<double>(agreeing) / static_cast<double>(qualifying) : 0.0;
  }
};
SignAgreement sign_agreement(const std::vector<ScatterRow>& rows,
                             std::optional<double> ScatterRow::*x,
                             std::optional<double> ScatterRow::*y, double threshold);

// -- decimation bench ------------------------------------------------------------

struct DecimationBenchConfig {
  std::size_t n = 5000;
  double alpha = 4.2;
  std::size_t formulas = 5;
  std::uint64_t seed = 0;
  DecimationConfig decimation;

  ParamList params() const;
};

struct DecimationBenchRow {
  std::size_t formula = 0;
  DecimationStatus status = DecimationStatus::kBudget;
  std::size_t rounds = 0;
  double seconds = 0.0;
  bool verified = false;
};

std::vector<DecimationBenchRow> run_decimation_bench(const DecimationBenchConfig& cfg);
/// formula,status,rounds,seconds,verified
void write_decimation_bench_csv(std::ostream& out, const DecimationBenchConfig& cfg,
                                const std::vector<DecimationBenchRow>& rows);

}  // namespace survey
