#include "survey/pipelines.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "survey/csv.hpp"
#include "survey/factor_graph.hpp"
#include "survey/rng.hpp"

namespace survey {

void DecimationConfig::validate() const {
  if (!(fix_fraction > 0.0 && fix_fraction <= 1.0))
    throw std::invalid_argument("fix_fraction must lie in (0, 1]");
  if (!(extreme_threshold >= 0.0 && extreme_threshold <= 1.0))
    throw std::invalid_argument("extreme_threshold must lie in [0, 1]");
  if (!(trivial_threshold >= 0.0 && trivial_threshold <= 1.0))
    throw std::invalid_argument("trivial_threshold must lie in [0, 1]");
  if (budget_seconds < 0.0) throw std::invalid_argument("budget_seconds must be >= 0");
  for (double d : sp_retry_damping)
    if (!(d >= 0.0 && d < 1.0)) throw std::invalid_argument("retry damping must lie in [0, 1)");
}

const char* to_string(DecimationStatus s) {
  switch (s) {
    case DecimationStatus::kSolved: return "SOLVED";
    case DecimationStatus::kContradiction: return "CONTRADICTION";
    case DecimationStatus::kSpFailed: return "SP_FAILED";
    case DecimationStatus::kBudget: return "BUDGET";
  }
  return "?";
}

namespace {

/// Residual formula plus the map from its variables to the input's.
struct Residual {
  Formula formula;
  std::vector<std::size_t> to_orig;
};

}  // namespace

DecimationOutcome decimate(const Formula& f, const DecimationConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  auto out_of_time = [&] {
    if (cfg.budget_seconds <= 0.0) return false;
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
    return dt.count() > cfg.budget_seconds;
  };

  DecimationOutcome out;
  const std::size_t n = f.num_vars();
  PartialAssignment global(n);

  auto finish = [&](DecimationStatus status) {
    out.status = status;
    if (!out.log.empty()) out.log.back().status = to_string(status);
    return out;
  };

  auto first = simplify(f, PartialAssignment(n));
  if (!first) {
    out.log.push_back({0, n, 0, 0.0, 0, ""});
    return finish(DecimationStatus::kContradiction);
  }
  global = first->fixed;
  Residual cur{first->residual, first->new_to_old};

  // Completes `global` from a model of the current residual.
  auto lift_and_verify = [&](const Assignment& residual_model) {
    Assignment full(n, 0);
    for (std::size_t x = 0; x < n; ++x)
      if (global[x]) full[x] = *global[x] ? 1 : 0;
    for (std::size_t i = 0; i < residual_model.size(); ++i)
      full[cur.to_orig[i]] = residual_model[i];
    if (!evaluate(f, full)) throw std::logic_error("decimation produced a non-solution");
    out.assignment = std::move(full);
  };

  for (std::size_t round = 0;; ++round) {
    const std::size_t n_rem = cur.formula.num_vars();
    out.log.push_back({round, n_rem, 0, 0.0, 0, "CONTINUE"});
    DecimationRound& entry = out.log.back();

    if (cur.formula.num_clauses() == 0) {
      lift_and_verify(Assignment(n_rem, 0));
      return finish(DecimationStatus::kSolved);
    }
    if ((cfg.max_rounds != 0 && round >= cfg.max_rounds) || out_of_time()) {
      out.residual = cur.formula;
      return finish(DecimationStatus::kBudget);
    }

    const FactorGraph g(cur.formula);
    SpRun run = sp_run(g, MessageInit::Random(derive_seed(cfg.seed, round)), cfg.sp);
    entry.sp_iters = run.state.iterations;
    for (std::size_t t = 0;
         run.status == RunStatus::kUnconverged && t < cfg.sp_retry_damping.size(); ++t) {
      SpConfig retry = cfg.sp;
      retry.damping = cfg.sp_retry_damping[t];
      run = sp_run(g, MessageInit::Random(derive_seed(derive_seed(cfg.seed, round), t + 1)), retry);
      entry.sp_iters += run.state.iterations;
    }
    if (run.status == RunStatus::kContradiction) return finish(DecimationStatus::kContradiction);
    std::vector<double> m(n_rem, 0.0);
    if (run.status == RunStatus::kConverged) {
      const auto biases = sp_biases(g, run.state);
      if (!biases) return finish(DecimationStatus::kContradiction);
      m = magnetization(*biases);
    }
    // An unconverged survey leaves m at zero, which sends the residual to
    // the walksat endgame below.

    std::vector<std::size_t> order(n_rem);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return std::abs(m[a]) > std::abs(m[b]);
    });
    entry.max_abs_m = n_rem ? std::abs(m[order[0]]) : 0.0;

    const auto k = static_cast<std::size_t>(
        std::ceil(cfg.fix_fraction * static_cast<double>(n_rem)));
    PartialAssignment fix(n_rem);
    std::size_t fixed = 0;
    if (entry.max_abs_m >= cfg.trivial_threshold) {
      for (std::size_t i = 0; i < order.size() && fixed < k; ++i) {
        const double mi = m[order[i]];
        if (std::abs(mi) < cfg.extreme_threshold || mi == 0.0) break;
        fix[order[i]] = mi > 0.0;
        ++fixed;
      }
    }

    if (fixed == 0) {
      // Trivial survey (or nothing extreme enough): local search endgame.
      WalkSatConfig ws = cfg.walksat;
      ws.seed = derive_seed(cfg.seed, ~std::uint64_t{0});
      const SolveResult r = walksat(cur.formula, ws);
      if (r.status == SolveStatus::kSat) {
        lift_and_verify(*r.model);
        return finish(DecimationStatus::kSolved);
      }
      out.residual = cur.formula;
      return finish(DecimationStatus::kSpFailed);
    }

    entry.n_fixed = fixed;
    auto next = simplify(cur.formula, fix);
    if (!next) return finish(DecimationStatus::kContradiction);
    for (std::size_t i = 0; i < n_rem; ++i)
      if (next->fixed[i]) global[cur.to_orig[i]] = next->fixed[i];
    std::vector<std::size_t> to_orig(next->new_to_old.size());
    for (std::size_t j = 0; j < to_orig.size(); ++j)
      to_orig[j] = cur.to_orig[next->new_to_old[j]];
    cur = Residual{std::move(next->residual), std::move(to_orig)};
  }
}

void write_decimation_log_csv(std::ostream& out, const DecimationOutcome& d) {
  out << "round,n_remaining,sp_iters,max_abs_m,n_fixed,status\n";
  for (const DecimationRound& r : d.log)
    out << r.round << ',' << r.n_remaining << ',' << r.sp_iters << ','
        << csv::num(r.max_abs_m) << ',' << r.n_fixed << ',' << r.status << '\n';
}

// -- estimators ----------------------------------------------------------------

namespace {

MarginalTable table_from_counts(const std::vector<std::array<std::size_t, 3>>& counts,
                                std::size_t total, Semantics semantics) {
  MarginalTable t;
  t.semantics = semantics;
  t.vars.resize(counts.size());
  if (total == 0) return t;
  const auto denom = static_cast<double>(total);
  for (std::size_t x = 0; x < counts.size(); ++x) {
    t.vars[x].p_plus = static_cast<double>(counts[x][1]) / denom;
    t.vars[x].p_minus = static_cast<double>(counts[x][0]) / denom;
    t.vars[x].p_star = static_cast<double>(counts[x][2]) / denom;
  }
  return t;
}

void count_assignment(std::vector<std::array<std::size_t, 3>>& counts,
                      const Assignment& a) {
  for (std::size_t x = 0; x < a.size(); ++x) ++counts[x][a[x] ? 1 : 0];
}

void count_cover(std::vector<std::array<std::size_t, 3>>& counts,
                 const GeneralizedAssignment& s) {
  for (std::size_t x = 0; x < s.size(); ++x) ++counts[x][static_cast<std::size_t>(s[x])];
}

}  // namespace

MarginalTable exact_solution_marginals(const Formula& f, std::size_t model_cap) {
  std::vector<std::array<std::size_t, 3>> counts(f.num_vars(), {0, 0, 0});
  std::size_t total = 0;
  bool capped = false;
  const ModelList run = for_each_model(f, [&](const Assignment& a) {
    if (total == model_cap) {
      capped = true;
      return false;
    }
    count_assignment(counts, a);
    ++total;
    return true;
  });
  if (total == 0) {
    if (run.complete) throw std::domain_error("formula is unsatisfiable");
    throw std::runtime_error("model enumeration stopped before the first model");
  }
  MarginalTable t = table_from_counts(counts, total, Semantics::kSolution);
  t.complete = run.complete && !capped;
  return t;
}

MarginalTable solution_marginals_from(std::span<const Assignment> models,
                                      std::size_t num_vars) {
  std::vector<std::array<std::size_t, 3>> counts(num_vars, {0, 0, 0});
  for (const Assignment& a : models) count_assignment(counts, a);
  return table_from_counts(counts, models.size(), Semantics::kSolution);
}

SampledMarginals sampled_solution_marginals(const Formula& f, std::size_t k,
                                            std::uint64_t seed,
                                            WalkSatConfig walksat) {
  SampleSet set = sample_solutions(f, k, seed, walksat);
  SampledMarginals out;
  out.table = solution_marginals_from(set.models, f.num_vars());
  out.table.complete = set.models.size() == k;
  out.samples = set.models.size();
  out.distinct = set.distinct;
  out.warnings = std::move(set.warnings);
  if (out.samples == 0) throw std::runtime_error("walksat found no solution");
  return out;
}

MarginalTable cover_marginals_from(std::span<const GeneralizedAssignment> covers,
                                   std::size_t num_vars) {
  std::vector<std::array<std::size_t, 3>> counts(num_vars, {0, 0, 0});
  for (const auto& s : covers) count_cover(counts, s);
  return table_from_counts(counts, covers.size(), Semantics::kCover);
}

MarginalTable cover_marginals_from(std::span<const CoverRecord> covers,
                                   std::size_t num_vars) {
  std::vector<std::array<std::size_t, 3>> counts(num_vars, {0, 0, 0});
  for (const auto& r : covers) count_cover(counts, r.assignment);
  return table_from_counts(counts, covers.size(), Semantics::kCover);
}

MarginalTable exact_cover_marginals(const Formula& f, CoverMethod method) {
  if (method == CoverMethod::kBruteForce)
    return cover_marginals_from(enumerate_covers_bruteforce(f, f.num_vars()), f.num_vars());
  const CoverEnumeration e = enumerate_covers_sat(f);
  MarginalTable t = cover_marginals_from(e.covers, f.num_vars());
  t.complete = e.complete;
  return t;
}

namespace {

std::vector<GeneralizedAssignment> peel_all(const Formula& f,
                                            std::span<const Assignment> solutions,
                                            PeelOrder order, std::uint64_t seed) {
  std::vector<GeneralizedAssignment> covers(solutions.size());
  const auto count = static_cast<std::ptrdiff_t>(solutions.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const auto u = static_cast<std::size_t>(i);
    covers[u] = star_propagate(f, GeneralizedAssignment(solutions[u]), order,
                               derive_seed(seed, u), false)
                    .cover;
  }
  return covers;
}

}  // namespace

MarginalTable peeled_cover_marginals(const Formula& f,
                                     std::span<const Assignment> solutions,
                                     PeelOrder order, std::uint64_t seed) {
  return cover_marginals_from(peel_all(f, solutions, order, seed), f.num_vars());
}

PeeledMarginals peeled_cover_marginals(const Formula& f, std::size_t k,
                                       std::uint64_t seed, PeelOrder order,
                                       WalkSatConfig walksat) {
  SampleSet set = sample_solutions(f, k, seed, walksat);
  if (set.models.empty()) throw std::runtime_error("walksat found no solution");
  const auto covers = peel_all(f, set.models, order, derive_seed(seed, k));
  PeeledMarginals out;
  out.table = cover_marginals_from(covers, f.num_vars());
  out.table.complete = set.models.size() == k;
  out.samples = covers.size();
  out.trivial = static_cast<std::size_t>(std::count_if(
      covers.begin(), covers.end(), [](const auto& c) { return c.is_trivial(); }));
  out.warnings = std::move(set.warnings);
  return out;
}

}  // namespace survey
