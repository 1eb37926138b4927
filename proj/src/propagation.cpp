#include "survey/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "survey/csv.hpp"
#include "survey/message_algebra.hpp"
#include "survey/propagation_kernels.hpp"
#include "survey/rng.hpp"

namespace survey {

const char* to_string(RunStatus s) {
  switch (s) {
    case RunStatus::kConverged: return "CONVERGED";
    case RunStatus::kUnconverged: return "UNCONVERGED";
    case RunStatus::kContradiction: return "CONTRADICTION";
  }
  return "?";
}

const char* to_string(Semantics s) {
  return s == Semantics::kSolution ? "solution" : "cover";
}

std::vector<double> magnetization(const MarginalTable& t) {
  std::vector<double> m(t.vars.size());
  std::transform(t.vars.begin(), t.vars.end(), m.begin(),
                 [](const VarMarginal& v) { return v.magnetization(); });
  return m;
}

void write_marginals_csv(std::ostream& out, const MarginalTable& t,
                         const std::string& estimator) {
  out << "var,p_plus,p_minus,p_star,m,semantics";
  if (!estimator.empty()) out << ",estimator";
  out << '\n';
  for (std::size_t x = 0; x < t.vars.size(); ++x) {
    const VarMarginal& v = t.vars[x];
    out << x + 1 << ',' << csv::num(v.p_plus) << ',' << csv::num(v.p_minus) << ','
        << csv::num(v.p_star) << ',' << csv::num(v.magnetization()) << ','
        << to_string(t.semantics);
    if (!estimator.empty()) out << ',' << estimator;
    out << '\n';
  }
}

void write_residuals_csv(std::ostream& out, std::span<const double> residuals) {
  out << "iter,residual\n";
  for (std::size_t i = 0; i < residuals.size(); ++i)
    out << i + 1 << ',' << csv::num(residuals[i]) << '\n';
}

// -- SP ----------------------------------------------------------------------

namespace {

std::vector<double> init_values(std::size_t count, const MessageInit& init) {
  std::vector<double> v(count, init.value);
  if (init.kind == MessageInit::Kind::kRandom) {
    Rng rng(init.seed);
    for (double& x : v) x = uniform01(rng);
  } else if (!(init.value >= 0.0 && init.value <= 1.0)) {
    throw std::invalid_argument("uniform message init must lie in [0,1]");
  }
  return v;
}

void check_run_config(double tolerance, double damping) {
  if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (!(damping >= 0.0 && damping < 1.0))
    throw std::invalid_argument("damping must lie in [0,1)");
}

}  // namespace

SpState sp_init(const FactorGraph& g, const MessageInit& init) {
  SpState s;
  s.eta = init_values(g.num_edges(), init);
  return s;
}

std::optional<SpState> sp_update(const FactorGraph& g, const SpState& s,
                                 double damping, Exec exec) {
  if (s.eta.size() != g.num_edges())
    throw std::invalid_argument("SP state does not match the factor graph");
  SpState next;
  next.eta.resize(s.eta.size());
  const kernels::SweepResult r =
      exec == Exec::kReference
          ? kernels::sp_sweep_reference(g, s.eta, next.eta, damping)
          : kernels::sp_sweep_parallel(g, s.eta, next.eta, damping);
  if (r.contradiction) return std::nullopt;
  next.iterations = s.iterations + 1;
  next.residual = r.residual;
  return next;
}

SpRun sp_run(const FactorGraph& g, const MessageInit& init, const SpConfig& cfg) {
  return sp_run(g, sp_init(g, init), cfg);
}

SpRun sp_run(const FactorGraph& g, SpState start, const SpConfig& cfg) {
  check_run_config(cfg.tolerance, cfg.damping);
  SpRun run;
  run.state = std::move(start);
  run.state.iterations = 0;
  std::vector<double> next(run.state.eta.size());
  for (std::size_t sweep = 1; sweep <= cfg.max_iters; ++sweep) {
    const kernels::SweepResult r =
        cfg.exec == Exec::kReference
            ? kernels::sp_sweep_reference(g, run.state.eta, next, cfg.damping)
            : kernels::sp_sweep_parallel(g, run.state.eta, next, cfg.damping);
    if (r.contradiction) {
      run.status = RunStatus::kContradiction;
      return run;
    }
    run.state.eta.swap(next);
    run.state.residual = r.residual;
    run.residuals.push_back(r.residual);
    if (r.residual < cfg.tolerance) {
      run.state.iterations = sweep - 1;
      run.status = RunStatus::kConverged;
      return run;
    }
    run.state.iterations = sweep;
  }
  run.status = RunStatus::kUnconverged;
  return run;
}

std::optional<MarginalTable> sp_biases(const FactorGraph& g, const SpState& s) {
  MarginalTable t;
  t.semantics = Semantics::kCover;
  t.vars.resize(g.num_vars());
  for (std::size_t x = 0; x < g.num_vars(); ++x) {
    double keep_pos = 1.0, keep_neg = 1.0;  // prod of (1 - eta) over C+(x), C-(x)
    for (std::uint32_t e : g.var_edges(x))
      (g.edge_negated(e) ? keep_neg : keep_pos) *= 1.0 - s.eta[e];
    const double plus = (1.0 - keep_pos) * keep_neg;
    const double minus = (1.0 - keep_neg) * keep_pos;
    const double star = keep_pos * keep_neg;
    const double total = plus + minus + star;
    if (!(total > 0.0)) return std::nullopt;
    t.vars[x] = {plus / total, minus / total, star / total};
  }
  return t;
}

// -- BP on the cover problem -------------------------------------------------

namespace {

using algebra::clause_constraint_sweep;
using algebra::normalize;
using algebra::variable_constraint_sweep;

}  // namespace

CoverBpState cover_bp_init_random(const FactorGraph& g, std::uint64_t seed,
                                  bool equivalence) {
  Rng rng(seed);
  auto draw = [&] { return 0.05 + uniform01(rng); };
  CoverBpState s;
  s.var_to_clause.resize(g.num_edges());
  s.clause_to_var.resize(g.num_edges());
  for (auto& m : s.var_to_clause) {
    m.request = draw();
    m.idle = equivalence ? m.request : draw();
    m.warning = draw();
    normalize(m);
  }
  for (auto& m : s.clause_to_var) {
    m.request = draw();
    m.idle = draw();
    m.warning = equivalence ? m.idle : draw();
    normalize(m);
  }
  return s;
}

CoverBpState cover_bp_init_from_eta(const FactorGraph& g,
                                    std::span<const double> eta) {
  if (eta.size() != g.num_edges())
    throw std::invalid_argument("eta does not match the factor graph");
  CoverBpState s;
  s.clause_to_var.resize(g.num_edges());
  s.var_to_clause.resize(g.num_edges());
  for (std::size_t e = 0; e < eta.size(); ++e) {
    s.clause_to_var[e] = {eta[e], 1.0 - eta[e], 1.0 - eta[e]};
    if (!normalize(s.clause_to_var[e]))
      throw std::invalid_argument("eta yields an all-zero message");
  }
  if (!variable_constraint_sweep(g, s.clause_to_var, s.var_to_clause))
    throw std::invalid_argument("eta yields an all-zero message");
  return s;
}

std::optional<CoverBpState> cover_bp_update(const FactorGraph& g,
                                            const CoverBpState& s) {
  if (s.var_to_clause.size() != g.num_edges() ||
      s.clause_to_var.size() != g.num_edges())
    throw std::invalid_argument("cover BP state does not match the factor graph");
  CoverBpState next;
  next.var_to_clause.resize(g.num_edges());
  next.clause_to_var.resize(g.num_edges());
  if (!variable_constraint_sweep(g, s.clause_to_var, next.var_to_clause))
    return std::nullopt;
  if (!clause_constraint_sweep(g, next.var_to_clause, next.clause_to_var))
    return std::nullopt;
  return next;
}

std::vector<double> cover_bp_eta(const FactorGraph& g, const CoverBpState& s) {
  std::vector<double> eta(g.num_edges(), 0.0);
  for (std::size_t e = 0; e < eta.size(); ++e) {
    eta[e] = algebra::rescaled_request(s.clause_to_var[e]);
  }
  return eta;
}

std::vector<double> cover_bp_eta_from_warnings(const FactorGraph& g,
                                               const CoverBpState& s) {
  std::vector<double> eta(g.num_edges(), 0.0);
  for (std::size_t e = 0; e < eta.size(); ++e) {
    const auto [begin, end] = g.clause_edges(g.edge_clause(e));
    double product = 1.0;
    for (std::size_t y = begin; y < end; ++y) {
      if (y == e) continue;
      const RequestWarning& q = s.var_to_clause[y];
      const double denom = q.idle + q.warning;
      product *= denom > 0.0 ? q.warning / denom : 0.0;
    }
    eta[e] = product;
  }
  return eta;
}

namespace {

template <class T>
struct Triple {
  T request = 0;
  T idle = 0;
  T warning = 0;
};

template <class T>
LockstepResult lockstep(const FactorGraph& g, const CoverBpState& init,
                        std::size_t sweeps) {
  const std::size_t ne = g.num_edges();
  std::vector<Triple<T>> c2v(ne), v2c(ne), next_c2v(ne);
  for (std::size_t e = 0; e < ne; ++e) {
    const RequestWarning& m = init.clause_to_var[e];
    c2v[e] = {T(m.request), T(m.idle), T(m.warning)};
  }
  std::vector<T> eta(ne), next_eta(ne);
  for (std::size_t e = 0; e < ne; ++e) eta[e] = algebra::rescaled_request(c2v[e]);

  LockstepResult out;
  for (std::size_t sweep = 0; sweep < sweeps; ++sweep) {
    bool sp_ok = true;
    for (std::size_t e = 0; e < ne && sp_ok; ++e) {
      const auto v = algebra::sp_edge<T>(g, eta, e);
      if (v) next_eta[e] = *v;
      else sp_ok = false;
    }
    const bool bp_ok = variable_constraint_sweep(g, c2v, v2c) &&
                       clause_constraint_sweep(g, v2c, next_c2v);
    out.sp_contradiction = !sp_ok;
    out.bp_contradiction = !bp_ok;
    if (!sp_ok || !bp_ok) break;
    eta.swap(next_eta);
    c2v.swap(next_c2v);
    for (std::size_t e = 0; e < ne; ++e) {
      T d = algebra::rescaled_request(c2v[e]) - eta[e];
      if (d < T(0)) d = -d;
      out.max_diff = std::max(out.max_diff, static_cast<double>(d));
      out.min_complement = std::min(out.min_complement, static_cast<double>(T(1) - eta[e]));
    }
    ++out.sweeps;
  }
  return out;
}

}  // namespace

LockstepResult sp_cover_bp_lockstep(const FactorGraph& g, const CoverBpState& init,
                                    std::size_t sweeps, Precision precision) {
  if (init.clause_to_var.size() != g.num_edges())
    throw std::invalid_argument("cover BP state does not match the factor graph");
  return precision == Precision::kQuad ? lockstep<__float128>(g, init, sweeps)
                                       : lockstep<double>(g, init, sweeps);
}

// -- plain BP ----------------------------------------------------------------

PlainBpState plain_bp_init(const FactorGraph& g, const MessageInit& init) {
  PlainBpState s;
  s.clause_to_var = init_values(g.num_edges(), init);
  for (double& p : s.clause_to_var) p = (1.0 - p) / (2.0 - p);
  s.var_to_clause.assign(g.num_edges(), 0.5);
  return s;
}

std::optional<PlainBpState> plain_bp_update(const FactorGraph& g,
                                            const PlainBpState& s, double damping,
                                            Exec exec) {
  if (s.clause_to_var.size() != g.num_edges())
    throw std::invalid_argument("BP state does not match the factor graph");
  PlainBpState next;
  next.var_to_clause.resize(g.num_edges());
  next.clause_to_var.resize(g.num_edges());
  const kernels::SweepResult r =
      exec == Exec::kReference
          ? kernels::bp_sweep_reference(g, s.clause_to_var, next.var_to_clause,
                                        next.clause_to_var, damping)
          : kernels::bp_sweep_parallel(g, s.clause_to_var, next.var_to_clause,
                                       next.clause_to_var, damping);
  if (r.contradiction) return std::nullopt;
  next.iterations = s.iterations + 1;
  next.residual = r.residual;
  return next;
}

PlainBpRun plain_bp_run(const FactorGraph& g, const MessageInit& init,
                        const PlainBpConfig& cfg) {
  check_run_config(cfg.tolerance, cfg.damping);
  PlainBpRun run;
  run.state = plain_bp_init(g, init);
  std::vector<double> next(g.num_edges());
  for (std::size_t sweep = 1; sweep <= cfg.max_iters; ++sweep) {
    const kernels::SweepResult r =
        cfg.exec == Exec::kReference
            ? kernels::bp_sweep_reference(g, run.state.clause_to_var,
                                          run.state.var_to_clause, next, cfg.damping)
            : kernels::bp_sweep_parallel(g, run.state.clause_to_var,
                                         run.state.var_to_clause, next, cfg.damping);
    if (r.contradiction) {
      run.status = RunStatus::kContradiction;
      return run;
    }
    run.state.clause_to_var.swap(next);
    run.state.residual = r.residual;
    run.residuals.push_back(r.residual);
    if (r.residual < cfg.tolerance) {
      run.state.iterations = sweep - 1;
      run.status = RunStatus::kConverged;
      return run;
    }
    run.state.iterations = sweep;
  }
  run.status = RunStatus::kUnconverged;
  return run;
}

std::optional<MarginalTable> plain_bp_marginals(const FactorGraph& g,
                                                const PlainBpState& s) {
  MarginalTable t;
  t.semantics = Semantics::kSolution;
  t.vars.resize(g.num_vars());
  for (std::size_t x = 0; x < g.num_vars(); ++x) {
    // x = 1 falsifies the negative occurrences, x = 0 the positive ones.
    double one = 1.0, zero = 1.0;
    for (std::uint32_t e : g.var_edges(x)) {
      const double m = s.clause_to_var[e];
      if (g.edge_negated(e)) {
        one *= m;
        zero *= 1.0 - m;
      } else {
        zero *= m;
        one *= 1.0 - m;
      }
    }
    const double total = one + zero;
    if (!(total > 0.0)) return std::nullopt;
    t.vars[x] = {one / total, zero / total, 0.0};
  }
  return t;
}

}  // namespace survey
