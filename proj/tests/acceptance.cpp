// Acceptance harness. Each criterion prints one line:
//   criterion N: PASS|FAIL (seconds) detail
// Run one with --criterion N, or all of them without arguments. The exit
// status is non-zero when any selected criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "survey/cdcl.hpp"
#include "survey/covers.hpp"
#include "survey/experiments.hpp"
#include "survey/factor_graph.hpp"
#include "survey/pipelines.hpp"
#include "survey/propagation.hpp"
#include "survey/rng.hpp"

using namespace survey;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Clause cl(std::initializer_list<int> lits) {
  Clause c;
  for (int l : lits) c.push_back(Literal::FromDimacs(l));
  return c;
}

std::set<std::string> strings(const std::vector<CoverRecord>& v) {
  std::set<std::string> out;
  for (const auto& r : v) out.insert(r.assignment.str());
  return out;
}

Verdict worked_example() {
  const auto start = std::chrono::steady_clock::now();
  const Formula f(3, {cl({1, -2, -3}), cl({-1, 2, -3}), cl({-1, -2, 3})});
  const std::set<std::string> want{"111", "***"};
  const auto brute = strings(enumerate_covers_bruteforce(f));
  const auto cdcl = strings(enumerate_covers_sat(f).covers);
  const auto dpll = strings(enumerate_covers_sat(f, std::numeric_limits<std::size_t>::max(),
                                                 kUnlimited, SatEngine::kDpll)
                                .covers);
  const bool rejects = !is_cover(f, GeneralizedAssignment::Parse("100"));
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {brute == want && cdcl == want && dpll == want && rejects && secs < 1.0,
          fmt("brute=%zu sat(cdcl)=%zu sat(dpll)=%zu covers, 100 rejected=%d, %.3fs",
              brute.size(), cdcl.size(), dpll.size(), rejects, secs)};
}

Verdict tree_laws() {
  std::size_t cover_ok = 0, sp_ok = 0, bp_ok = 0;
  double worst_bp = 0.0;
  SpConfig sp;
  sp.tolerance = 1e-12;
  PlainBpConfig bp;
  bp.tolerance = 1e-14;
  for (std::uint64_t i = 0; i < 200; ++i) {
    const std::size_t n = 2 + i % 19;
    const Formula f = generate_random_tree(n, derive_seed(2, i));
    const FactorGraph g(f);
    const auto covers = enumerate_covers_bruteforce(f, 20);
    cover_ok += covers.size() == 1 && covers[0].assignment.is_trivial();

    bool all_zero = true;
    for (std::uint64_t init = 0; init < 10; ++init) {
      const SpRun r = sp_run(g, MessageInit::Random(derive_seed(i, init)), sp);
      if (r.status != RunStatus::kConverged) all_zero = false;
      for (double eta : r.state.eta)
        if (eta > 1e-12) all_zero = false;
    }
    sp_ok += all_zero;

    const PlainBpRun run = plain_bp_run(g, MessageInit::Random(derive_seed(i, 99)), bp);
    const auto t = plain_bp_marginals(g, run.state);
    const MarginalTable exact = exact_solution_marginals(f);
    double err = t ? 0.0 : 1.0;
    for (std::size_t x = 0; t && x < n; ++x)
      err = std::max(err, std::abs(t->vars[x].p_plus - exact.vars[x].p_plus));
    worst_bp = std::max(worst_bp, err);
    bp_ok += run.status == RunStatus::kConverged && err <= 1e-9;
  }
  return {cover_ok == 200 && sp_ok == 200 && bp_ok == 200,
          fmt("trivial-only covers %zu/200, SP zero fixed point %zu/200 (10 inits each), "
              "BP exact %zu/200, worst BP error %.2e",
              cover_ok, sp_ok, bp_ok, worst_bp)};
}

Verdict sp_equivalence() {
  std::size_t ok = 0, collapsed = 0;
  double worst = 0.0, worst_ok = 0.0;
  std::size_t double_ok = 0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const double alpha = i % 3 == 0 ? 2.0 : i % 3 == 1 ? 3.0 : 4.2;
    const FactorGraph g(generate_random_3sat(30, clauses_for_ratio(30, alpha), derive_seed(3, i)));
    const CoverBpState init = cover_bp_init_random(g, derive_seed(33, i), true);
    const LockstepResult r = sp_cover_bp_lockstep(g, init, 100);
    const bool agree = r.sp_contradiction == r.bp_contradiction && r.max_diff <= 1e-12;
    ok += agree;
    if (agree) worst_ok = std::max(worst_ok, r.max_diff);
    worst = std::max(worst, r.max_diff);
    collapsed += r.sp_contradiction || r.bp_contradiction || r.min_complement == 0.0;
    const LockstepResult d = sp_cover_bp_lockstep(g, init, 100, Precision::kDouble);
    double_ok += d.sp_contradiction == d.bp_contradiction && d.max_diff <= 1e-12;
  }
  return {ok == 100,
          fmt("%zu/100 within 1e-12 over 100 sweeps in quad precision (worst agreeing %.1e, "
              "worst overall %.1e); %zu trajectories collapse onto a contradiction; "
              "double precision: %zu/100",
              ok, worst_ok, worst, collapsed, double_ok)};
}

Verdict oracle_cross_check() {
  const auto start = std::chrono::steady_clock::now();
  std::size_t agree = 0, total_covers = 0;
  for (std::uint64_t i = 0; i < 200; ++i) {
    const std::size_t n = 3 + i % 10;
    const double alpha = 1.0 + 5.0 * static_cast<double>(i % 21) / 20.0;
    const Formula f = generate_random_3sat(n, clauses_for_ratio(n, alpha), derive_seed(4, i));
    const auto brute = enumerate_covers_bruteforce(f);
    const auto sat = enumerate_covers_sat(f);
    bool same = sat.complete && sat.covers.size() == brute.size();
    for (std::size_t k = 0; same && k < brute.size(); ++k)
      same = sat.covers[k].assignment == brute[k].assignment &&
             sat.covers[k].kind == brute[k].kind;
    agree += same;
    total_covers += brute.size();
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {agree == 200 && secs < 600.0,
          fmt("%zu/200 formulas agree (%zu covers total), %.1fs", agree, total_covers, secs)};
}

Verdict phase_transition() {
  TransitionConfig small;
  small.n = 50;
  small.alphas = {1.5, 1.75, 2.0, 2.25, 2.5, 2.75, 3.0, 3.25, 3.5};
  small.formulas_per_point = 200;
  small.existence_only = true;
  small.seed = 5;
  small.budget_seconds = 3600;
  const TransitionReport a = run_transition(small);
  const auto cross = crossing_alpha(a);
  std::string curve;
  for (const auto& p : a.points) curve += fmt(" %.2f:%.3f", p.alpha, p.p_nontrivial());

  TransitionConfig big;
  big.n = 90;
  big.alphas = {4.2};
  big.formulas_per_point = 30;
  big.seed = 6;
  big.budget_seconds = 3600;
  const TransitionReport b = run_transition(big);
  const TransitionPoint& p = b.points.at(0);
  const bool counts_ok = p.complete == p.formulas && p.formulas > 0 &&
                         p.mean_nontrivial >= 8.0 / 3.0 && p.mean_nontrivial <= 24.0 &&
                         p.mean_false <= 4.0;
  const bool cross_ok = cross && *cross >= 2.0 && *cross <= 3.0;
  return {cross_ok && counts_ok && !a.budget_hit && !b.budget_hit,
          fmt("n=50 crossing at %s;%s | n=90: %zu formulas (%zu satisfiable), mean non-trivial "
              "%.2f, mean true %.2f, mean false %.2f",
              cross ? fmt("%.3f", *cross).c_str() : "none", curve.c_str(), p.formulas,
              p.satisfiable, p.mean_nontrivial, p.mean_true, p.mean_false)};
}

Verdict convergence_scale() {
  std::size_t sp_ok = 0, bp_fail = 0;
  std::string iters;
  for (std::uint64_t i = 0; i < 5; ++i) {
    const Formula f = generate_random_3sat(5000, 21000, derive_seed(6, i));
    const FactorGraph g(f);
    SpConfig sp;
    sp.max_iters = 300;
    const SpRun s = sp_run(g, MessageInit::Random(derive_seed(60, i)), sp);
    const bool conv = s.status == RunStatus::kConverged;
    sp_ok += conv;
    const PlainBpRun b = plain_bp_run(g, MessageInit::Random(derive_seed(61, i)), PlainBpConfig{});
    bp_fail += b.status != RunStatus::kConverged;
    iters += fmt(" [sp %s@%zu, bp %s@%zu]", to_string(s.status), s.state.iterations,
                 to_string(b.status), b.state.iterations);
  }
  return {sp_ok >= 4 && bp_fail >= 3,
          fmt("SP converged %zu/5, BP unconverged %zu/5:%s", sp_ok, bp_fail, iters.c_str())};
}

Verdict decimation_end_to_end() {
  std::size_t solved = 0;
  std::string runs;
  for (std::uint64_t i = 0; i < 5; ++i) {
    const Formula f = generate_random_3sat(5000, 21000, derive_seed(7, i));
    DecimationConfig c;
    c.seed = derive_seed(70, i);
    c.budget_seconds = 600;
    const auto start = std::chrono::steady_clock::now();
    const DecimationOutcome d = decimate(f, c);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool ok = d.status == DecimationStatus::kSolved && d.assignment &&
                    evaluate(f, *d.assignment) && secs <= 600.0;
    solved += ok;
    runs += fmt(" [%s %zu rounds %.0fs]", to_string(d.status), d.log.size(), secs);
  }
  return {solved >= 4, fmt("solved and verified %zu/5:%s", solved, runs.c_str())};
}

/// Instances shared by the two magnetization criteria.
struct Extremes {
  SignAgreement cover_vs_solution;
  SignAgreement sp_vs_cover;
  SignAgreement nontrivial_vs_solution;  // covers other than all-* only
  std::size_t instances = 0;
  std::size_t draws = 0;
  std::size_t sp_unconverged = 0;
  std::size_t max_covers = 0;
  double max_abs_cover_m = 0.0;
};

const Extremes& extremes() {
  static const Extremes e = [] {
    Extremes out;
    std::vector<ScatterRow> rows, nontrivial_rows;
    for (std::uint64_t i = 0; out.instances < 100 && i < 2000; ++i) {
      ++out.draws;
      const Formula f = generate_random_3sat(50, 210, derive_seed(8, i));
      if (CdclSolver(f).solve() != SolveStatus::kSat) continue;
      const CoverEnumeration covers = enumerate_covers_sat(f);
      if (!covers.complete || covers.covers.size() < 2) continue;
      const std::size_t idx = out.instances++;
      out.max_covers = std::max(out.max_covers, covers.covers.size());

      const auto cover_m = magnetization(cover_marginals_from(covers.covers, 50));
      std::vector<CoverRecord> nt;
      for (const auto& r : covers.covers)
        if (r.kind != CoverKind::kTrivial) nt.push_back(r);
      const auto nt_m = magnetization(cover_marginals_from(nt, 50));
      const auto sol_m = magnetization(exact_solution_marginals(f));
      const FactorGraph g(f);
      const SpRun run = sp_run(g, MessageInit::Random(derive_seed(80, i)), SpConfig{});
      std::optional<std::vector<double>> sp_m;
      if (run.status == RunStatus::kConverged)
        if (auto b = sp_biases(g, run.state)) sp_m = magnetization(*b);
      out.sp_unconverged += !sp_m;
      for (std::size_t x = 0; x < 50; ++x) {
        ScatterRow r{idx, x, {}, cover_m[x], sol_m[x], {}};
        if (sp_m) r.sp = (*sp_m)[x];
        rows.push_back(r);
        nontrivial_rows.push_back({idx, x, {}, nt_m[x], sol_m[x], {}});
        out.max_abs_cover_m = std::max(out.max_abs_cover_m, std::abs(cover_m[x]));
      }
    }
    out.cover_vs_solution = sign_agreement(rows, &ScatterRow::cover, &ScatterRow::solution, 0.99);
    out.sp_vs_cover = sign_agreement(rows, &ScatterRow::sp, &ScatterRow::cover, 0.9);
    out.nontrivial_vs_solution =
        sign_agreement(nontrivial_rows, &ScatterRow::cover, &ScatterRow::solution, 0.99);
    return out;
  }();
  return e;
}

Verdict conservativeness() {
  const Extremes& e = extremes();
  const SignAgreement& s = e.cover_vs_solution;
  const SignAgreement& nt = e.nontrivial_vs_solution;
  return {e.instances >= 100 && s.qualifying > 0 && s.fraction() >= 0.95,
          fmt("%zu instances from %zu draws; %zu variables with cover |m| >= 0.99, %zu agree; "
              "largest cover |m| %.3f with at most %zu covers per instance (the all-* cover "
              "caps |m| at 1 - 1/K); excluding the all-* cover: %zu/%zu agree",
              e.instances, e.draws, s.qualifying, s.agreeing, e.max_abs_cover_m, e.max_covers,
              nt.agreeing, nt.qualifying)};
}

Verdict sp_extremes() {
  const Extremes& e = extremes();
  const SignAgreement& s = e.sp_vs_cover;
  return {e.instances >= 100 && s.qualifying > 0 && s.fraction() >= 0.9,
          fmt("%zu instances (%zu with unconverged SP); %zu/%zu variables with SP |m| >= 0.9 "
              "match the exact cover sign (%.1f%%)",
              e.instances, e.sp_unconverged, s.agreeing, s.qualifying, 100.0 * s.fraction())};
}

Verdict peeling() {
  PeelingConfig c;
  c.n = 1000;
  c.formulas = 10;
  c.samples = 200;
  c.seed = 10;
  c.walksat.max_flips = 50'000'000;
  const PeelingReport r = run_peeling(c);
  std::size_t monotone = 0, covers = 0;
  for (const auto& t : r.traces) {
    monotone += t.monotone;
    covers += t.cover_ok && is_cover(r.formulas.at(t.formula), t.terminal);
  }
  return {r.traces.size() == 2000 && monotone == 2000 && covers == 2000,
          fmt("%zu traces, %zu monotone, %zu terminal covers; trivial %zu (%.1f%%), "
              "non-trivial %zu, redraws %zu",
              r.traces.size(), monotone, covers, r.trivial, 100.0 * r.trivial_fraction(),
              r.nontrivial, r.redraws)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Verdict()>> criteria{
      worked_example,   tree_laws,          sp_equivalence,        oracle_cross_check,
      phase_transition, convergence_scale,  decimation_end_to_end, conservativeness,
      sp_extremes,      peeling};
  std::vector<std::size_t> selected;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      const std::size_t k = std::stoul(argv[++i]);
      if (k < 1 || k > criteria.size()) {
        std::fprintf(stderr, "criterion must be 1..%zu\n", criteria.size());
        return 2;
      }
      selected.push_back(k);
    } else {
      std::fprintf(stderr, "usage: acceptance [--criterion N]...\n");
      return 2;
    }
  }
  if (selected.empty())
    for (std::size_t k = 1; k <= criteria.size(); ++k) selected.push_back(k);

  bool all = true;
  for (std::size_t k : selected) {
    const auto start = std::chrono::steady_clock::now();
    const Verdict v = criteria[k - 1]();
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %zu: %s (%.1fs) %s\n", k, v.pass ? "PASS" : "FAIL", secs,
                v.detail.c_str());
    std::fflush(stdout);
    all &= v.pass;
  }
  return all ? 0 : 1;
}
