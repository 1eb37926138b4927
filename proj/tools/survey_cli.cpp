// Command-line front end. Every subcommand reads a DIMACS file (or "-" for
// stdin), writes its main artifact to --out (stdout when absent) and prints
// short status lines to stderr.

#include <omp.h>

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "survey/cdcl.hpp"
#include "survey/covers.hpp"
#include "survey/dimacs.hpp"
#include "survey/experiments.hpp"
#include "survey/factor_graph.hpp"
#include "survey/pipelines.hpp"
#include "survey/propagation.hpp"
#include "survey/solver.hpp"

namespace {

using namespace survey;

struct Globals {
  std::uint64_t seed = 0;
  std::string out;
  int threads = 0;
  double budget_seconds = 0.0;
};

/// Output sink: the --out file, or stdout.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw std::runtime_error("cannot open " + path + " for writing");
    }
  }
  std::ostream& operator*() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

Formula load(const std::string& path) {
  DimacsResult r;
  if (path == "-") {
    r = parse_dimacs(std::cin);
  } else {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    r = parse_dimacs(in);
  }
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << '\n';
  return std::move(r.formula);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::function<void(std::ostream&)>& body) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  body(out);
}

MessageInit parse_init(const std::string& text, std::uint64_t seed) {
  if (text == "random") return MessageInit::Random(seed);
  if (text.rfind("uniform:", 0) == 0) return MessageInit::Uniform(std::stod(text.substr(8)));
  throw CLI::ValidationError("--init", "expected 'random' or 'uniform:<value>'");
}

void print_model(std::ostream& out, const Assignment& a) {
  out << 'v';
  for (std::size_t i = 0; i < a.size(); ++i)
    out << ' ' << (a[i] ? "" : "-") << i + 1;
  out << " 0\n";
}

const std::map<std::string, PeelOrder> kPeelOrders{
    {"lowest", PeelOrder::kLowestIndex}, {"random", PeelOrder::kRandom}, {"queue", PeelOrder::kQueue}};

void add_walksat_flags(CLI::App* app, WalkSatConfig& w) {
  app->add_option("--max-flips", w.max_flips, "walksat flip budget per run")->capture_default_str();
  app->add_option("--noise", w.noise, "walksat noise probability")->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  app->add_option("--restart-interval", w.restart_interval,
                  "flips between walksat restarts (0 = never)")
      ->capture_default_str();
}

void add_sp_flags(CLI::App* app, SpConfig& c, const std::string& prefix = "") {
  app->add_option("--" + prefix + "damping", c.damping, "SP damping")->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  app->add_option("--" + prefix + "tol", c.tolerance, "SP convergence tolerance")
      ->capture_default_str();
  app->add_option("--" + prefix + "max-iters", c.max_iters, "SP sweep limit")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Survey propagation, covers and random 3-SAT experiments"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "master random seed")->capture_default_str();
  app.add_option("--out", g.out, "output file (default stdout)");
  app.add_option("--threads", g.threads, "OpenMP threads (0 = runtime default)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--budget-seconds", g.budget_seconds, "wall-clock budget (0 = none)")
      ->check(CLI::NonNegativeNumber);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a random k-SAT formula in DIMACS");
  std::size_t gen_n = 100, gen_k = 3;
  std::optional<std::size_t> gen_m;
  double gen_alpha = 4.2;
  gen->add_option("-n,--n", gen_n, "variables")->capture_default_str();
  gen->add_option("-m,--m", gen_m, "clauses (overrides --alpha)");
  gen->add_option("--alpha", gen_alpha, "clause-to-variable ratio")->capture_default_str();
  gen->add_option("-k,--k", gen_k, "literals per clause")->capture_default_str();

  // solve
  auto* solve = app.add_subcommand("solve", "decide satisfiability or enumerate models");
  std::string solve_in;
  std::string solve_method = "dpll";
  std::size_t solve_enum = 0;
  WalkSatConfig solve_ws;
  solve->add_option("input", solve_in, "DIMACS file or -")->required();
  solve->add_option("--method", solve_method, "dpll | cdcl | walksat")
      ->check(CLI::IsMember({"dpll", "cdcl", "walksat"}))->capture_default_str();
  solve->add_option("--enumerate", solve_enum, "list up to this many models (dpll/cdcl)");
  add_walksat_flags(solve, solve_ws);

  // sp
  auto* sp = app.add_subcommand("sp", "run survey propagation, write biases");
  std::string sp_in, sp_init = "random", sp_residuals;
  SpConfig sp_cfg;
  bool sp_reference = false;
  sp->add_option("input", sp_in, "DIMACS file or -")->required();
  sp->add_option("--init", sp_init, "random | uniform:<value>")->capture_default_str();
  sp->add_option("--residuals", sp_residuals, "write per-sweep residuals CSV here");
  sp->add_flag("--reference", sp_reference, "use the serial reference kernel");
  add_sp_flags(sp, sp_cfg);

  // bp
  auto* bp = app.add_subcommand("bp", "run plain belief propagation, write marginals");
  std::string bp_in, bp_init = "random", bp_residuals;
  PlainBpConfig bp_cfg;
  bool bp_reference = false;
  bp->add_option("input", bp_in, "DIMACS file or -")->required();
  bp->add_option("--init", bp_init, "random | uniform:<value>")->capture_default_str();
  bp->add_option("--residuals", bp_residuals, "write per-sweep residuals CSV here");
  bp->add_flag("--reference", bp_reference, "use the serial reference kernel");
  bp->add_option("--damping", bp_cfg.damping, "damping")->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  bp->add_option("--tol", bp_cfg.tolerance, "convergence tolerance")->capture_default_str();
  bp->add_option("--max-iters", bp_cfg.max_iters, "sweep limit")->capture_default_str();

  // covers
  auto* covers = app.add_subcommand("covers", "cover tools");
  covers->require_subcommand(1);
  auto* cenum = covers->add_subcommand("enum", "enumerate all covers");
  std::string cenum_in, cenum_method = "sat", cenum_engine = "cdcl";
  std::size_t cenum_limit = std::numeric_limits<std::size_t>::max();
  cenum->add_option("input", cenum_in, "DIMACS file or -")->required();
  cenum->add_option("--method", cenum_method, "sat | brute")
      ->check(CLI::IsMember({"sat", "brute"}))->capture_default_str();
  cenum->add_option("--engine", cenum_engine, "cdcl | dpll (sat method)")
      ->check(CLI::IsMember({"cdcl", "dpll"}))->capture_default_str();
  cenum->add_option("--limit", cenum_limit, "stop after this many covers");

  auto* ccheck = covers->add_subcommand("check", "test a generalized assignment");
  std::string ccheck_in, ccheck_cover;
  ccheck->add_option("input", ccheck_in, "DIMACS file or -")->required();
  ccheck->add_option("--cover", ccheck_cover, "string over 0 1 *, e.g. 1*0")->required();

  auto* cpeel = covers->add_subcommand("peel", "star-propagate a solution");
  std::string cpeel_in, cpeel_model, cpeel_order = "lowest";
  cpeel->add_option("input", cpeel_in, "DIMACS file or -")->required();
  cpeel->add_option("--model", cpeel_model,
                    "file with a model as signed literals; default: walksat");
  cpeel->add_option("--order", cpeel_order, "lowest | random | queue")
      ->check(CLI::IsMember({"lowest", "random", "queue"}))->capture_default_str();
  WalkSatConfig cpeel_ws;
  add_walksat_flags(cpeel, cpeel_ws);

  auto* cencode = covers->add_subcommand("encode", "write the cover CNF G");
  std::string cencode_in, cencode_map;
  cencode->add_option("input", cencode_in, "DIMACS file or -")->required();
  cencode->add_option("--decode-map", cencode_map, "write the G variable roles CSV here");

  // decimate
  auto* dec = app.add_subcommand("decimate", "SP-guided decimation with walksat endgame");
  std::string dec_in, dec_model;
  DecimationConfig dec_cfg;
  dec->add_option("input", dec_in, "DIMACS file or -")->required();
  dec->add_option("--fix-fraction", dec_cfg.fix_fraction, "fraction fixed per round")
      ->capture_default_str();
  dec->add_option("--extreme-threshold", dec_cfg.extreme_threshold, "minimum |m| to fix")
      ->capture_default_str();
  dec->add_option("--trivial-threshold", dec_cfg.trivial_threshold,
                  "max |m| below which walksat takes over")
      ->capture_default_str();
  dec->add_option("--retry-damping", dec_cfg.sp_retry_damping,
                  "damping values tried when SP does not converge")
      ->capture_default_str();
  dec->add_option("--max-rounds", dec_cfg.max_rounds, "round limit (0 = none)");
  dec->add_option("--model-out", dec_model, "write the solution here");
  add_sp_flags(dec, dec_cfg.sp, "sp-");
  add_walksat_flags(dec, dec_cfg.walksat);

  // experiment
  auto* exp = app.add_subcommand("experiment", "reproducible experiment runs");
  exp->require_subcommand(1);

  auto* epeel = exp->add_subcommand("peeling", "peeling trajectories of sampled solutions");
  PeelingConfig pcfg;
  std::string pcfg_order = "lowest";
  epeel->add_option("-n,--n", pcfg.n, "variables")->capture_default_str();
  epeel->add_option("--alpha", pcfg.alpha, "clause-to-variable ratio")->capture_default_str();
  epeel->add_option("--formulas", pcfg.formulas, "formulas drawn")->capture_default_str();
  epeel->add_option("--samples", pcfg.samples, "walksat samples per formula")->capture_default_str();
  epeel->add_option("--order", pcfg_order, "peel order")->check(CLI::IsMember({"lowest", "random", "queue"}))
      ->capture_default_str();
  epeel->add_option("--trace-stride", pcfg.trace_stride, "keep every k-th trace point")
      ->capture_default_str();
  epeel->add_option("--max-redraws", pcfg.max_redraws, "redraws when walksat fails")->capture_default_str();
  add_walksat_flags(epeel, pcfg.walksat);

  auto* etrans = exp->add_subcommand("transition", "cover existence and counts against alpha");
  TransitionConfig tcfg;
  double t_from = 1.0, t_to = 6.0, t_step = 0.25;
  etrans->add_option("-n,--n", tcfg.n, "variables")->capture_default_str();
  etrans->add_option("--alpha-from", t_from, "first grid point")->capture_default_str();
  etrans->add_option("--alpha-to", t_to, "last grid point")->capture_default_str();
  etrans->add_option("--alpha-step", t_step, "grid step")->capture_default_str();
  etrans->add_option("--alphas", tcfg.alphas, "explicit grid (overrides from/to/step)")
      ->delimiter(',');
  etrans->add_option("--formulas", tcfg.formulas_per_point, "formulas per grid point")->capture_default_str();
  etrans->add_option("--cover-limit", tcfg.cover_limit, "covers enumerated before a count is marked incomplete")->capture_default_str();
  etrans->add_flag("--existence-only", tcfg.existence_only,
                  "only decide whether a non-trivial cover exists");
  etrans->add_option("--conflict-budget", tcfg.conflict_budget, "per formula, 0 = unlimited");

  auto* egrowth = exp->add_subcommand("growth", "non-trivial peeling fraction against n");
  GrowthConfig gcfg;
  std::string gcfg_order = "lowest";
  egrowth->add_option("--sizes", gcfg.sizes, "comma-separated n grid")->delimiter(',');
  egrowth->add_option("--alpha", gcfg.alpha, "clause-to-variable ratio")->capture_default_str();
  egrowth->add_option("--samples", gcfg.samples_per_formula, "walksat samples per formula")->capture_default_str();
  egrowth->add_option("--formulas", gcfg.formulas, "formulas per size")->capture_default_str();
  egrowth->add_option("--order", gcfg_order, "peel order")->check(CLI::IsMember({"lowest", "random", "queue"}))
      ->capture_default_str();
  egrowth->add_option("--max-redraws", gcfg.max_redraws, "redraws when walksat fails")->capture_default_str();
  add_walksat_flags(egrowth, gcfg.walksat);

  auto* escatter = exp->add_subcommand("scatter", "per-variable magnetization pairs");
  ScatterConfig scfg;
  std::string s_which = "sp-vs-cover", s_cover = "exact", s_solution = "exact";
  escatter->add_option("--which", s_which, "sp-vs-cover | cover-vs-solution | bp-vs-solution")
      ->check(CLI::IsMember({"sp-vs-cover", "cover-vs-solution", "bp-vs-solution"}))
      ->capture_default_str();
  escatter->add_option("-n,--n", scfg.n, "variables")->capture_default_str();
  escatter->add_option("--alpha", scfg.alpha, "clause-to-variable ratio")->capture_default_str();
  escatter->add_option("--formulas", scfg.formulas, "formulas drawn")->capture_default_str();
  escatter->add_option("--covers", s_cover, "exact | peeled")
      ->check(CLI::IsMember({"exact", "peeled"}))->capture_default_str();
  escatter->add_option("--solutions", s_solution, "exact | sampled")
      ->check(CLI::IsMember({"exact", "sampled"}))->capture_default_str();
  escatter->add_option("--samples", scfg.samples, "samples for sampled or peeled estimators")->capture_default_str();
  escatter->add_flag("--require-nontrivial", scfg.require_nontrivial,
                    "redraw formulas whose only cover is all-*");
  escatter->add_option("--bp-max-iters", scfg.bp.max_iters, "plain BP sweep limit")->capture_default_str();
  escatter->add_option("--bp-damping", scfg.bp.damping, "plain BP damping")->capture_default_str();
  add_sp_flags(escatter, scfg.sp, "sp-");
  add_walksat_flags(escatter, scfg.walksat);

  CLI11_PARSE(app, argc, argv);

  try {
    if (g.threads > 0) omp_set_num_threads(g.threads);
    Sink sink(g.out);
    std::ostream& out = *sink;

    if (*gen) {
      const std::size_t m = gen_m ? *gen_m : clauses_for_ratio(gen_n, gen_alpha);
      const Formula f = generate_random_ksat(gen_n, m, gen_k, g.seed);
      out << "c random " << gen_k << "-SAT n=" << gen_n << " m=" << m << " seed=" << g.seed << '\n';
      write_dimacs(out, f);
      return 0;
    }

    if (*solve) {
      const Formula f = load(solve_in);
      if (solve_enum > 0) {
        const ModelList l = solve_method == "cdcl" ? enumerate_models_cdcl(f, solve_enum)
                                                   : enumerate_models(f, solve_enum);
        for (const Assignment& a : l.models) print_model(out, a);
        std::cerr << "c models " << l.models.size() << (l.complete ? " (all)" : " (limit)") << '\n';
        return 0;
      }
      SolveResult r;
      if (solve_method == "walksat") {
        solve_ws.seed = g.seed;
        r = walksat(f, solve_ws);
      } else if (solve_method == "cdcl") {
        CdclSolver s(f);
        r.status = s.solve();
        if (r.status == SolveStatus::kSat) r.model = s.model();
        r.stats = s.stats();
      } else {
        r = dpll_solve(f);
      }
      out << "s " << (r.status == SolveStatus::kSat     ? "SATISFIABLE"
                      : r.status == SolveStatus::kUnsat ? "UNSATISFIABLE"
                                                        : "UNKNOWN")
          << '\n';
      if (r.model) print_model(out, *r.model);
      return r.status == SolveStatus::kSat ? 10 : r.status == SolveStatus::kUnsat ? 20 : 0;
    }

    if (*sp) {
      const Formula f = load(sp_in);
      const FactorGraph fg(f);
      sp_cfg.exec = sp_reference ? Exec::kReference : Exec::kParallel;
      const SpRun run = sp_run(fg, parse_init(sp_init, g.seed), sp_cfg);
      std::cerr << "sp " << to_string(run.status) << " iterations=" << run.state.iterations
                << " residual=" << run.state.residual << '\n';
      write_file(sp_residuals, [&](std::ostream& o) { write_residuals_csv(o, run.residuals); });
      if (run.status == RunStatus::kContradiction) return 2;
      const auto b = sp_biases(fg, run.state);
      if (!b) {
        std::cerr << "sp biases undefined (contradiction)\n";
        return 2;
      }
      write_marginals_csv(out, *b, "sp");
      return run.status == RunStatus::kConverged ? 0 : 3;
    }

    if (*bp) {
      const Formula f = load(bp_in);
      const FactorGraph fg(f);
      bp_cfg.exec = bp_reference ? Exec::kReference : Exec::kParallel;
      const PlainBpRun run = plain_bp_run(fg, parse_init(bp_init, g.seed), bp_cfg);
      std::cerr << "bp " << to_string(run.status) << " iterations=" << run.state.iterations
                << " residual=" << run.state.residual << '\n';
      write_file(bp_residuals, [&](std::ostream& o) { write_residuals_csv(o, run.residuals); });
      if (run.status == RunStatus::kContradiction) return 2;
      const auto t = plain_bp_marginals(fg, run.state);
      if (!t) return 2;
      write_marginals_csv(out, *t, "bp");
      return run.status == RunStatus::kConverged ? 0 : 3;
    }

    if (*cenum) {
      const Formula f = load(cenum_in);
      std::vector<CoverRecord> list;
      bool complete = true;
      if (cenum_method == "brute") {
        list = enumerate_covers_bruteforce(f);
        if (list.size() > cenum_limit) {
          list.resize(cenum_limit);
          complete = false;
        }
      } else {
        CoverEnumeration e = enumerate_covers_sat(
            f, cenum_limit, kUnlimited, cenum_engine == "dpll" ? SatEngine::kDpll : SatEngine::kCdcl);
        list = std::move(e.covers);
        complete = e.complete;
      }
      write_covers(out, list);
      std::cerr << "c covers " << list.size() << (complete ? " (all)" : " (incomplete)") << '\n';
      return 0;
    }

    if (*ccheck) {
      const Formula f = load(ccheck_in);
      const auto s = GeneralizedAssignment::Parse(ccheck_cover);
      if (s.size() != f.num_vars())
        throw std::invalid_argument("cover length does not match the variable count");
      const bool cover = is_cover(f, s);
      out << "cover " << (cover ? "yes" : "no") << '\n';
      out << "clause_condition " << (satisfies_clause_condition(f, s) ? "yes" : "no") << '\n';
      for (std::size_t x = 0; x < s.size(); ++x)
        if (s[x] != Tri::kStar && !is_supported(f, s, x)) out << "unsupported " << x + 1 << '\n';
      if (cover) out << "kind " << to_string(make_record(f, s).kind) << '\n';
      return cover ? 0 : 1;
    }

    if (*cpeel) {
      const Formula f = load(cpeel_in);
      Assignment a;
      if (!cpeel_model.empty()) {
        a = parse_model(slurp(cpeel_model), f.num_vars());
      } else {
        cpeel_ws.seed = g.seed;
        const SolveResult r = walksat(f, cpeel_ws);
        if (!r.model) throw std::runtime_error("walksat found no solution");
        a = *r.model;
      }
      if (!evaluate(f, a)) throw std::invalid_argument("the model does not satisfy the formula");
      const PeelResult p = star_propagate(f, GeneralizedAssignment(a), kPeelOrders.at(cpeel_order),
                                          g.seed, true);
      out << "step,stars,unsupported\n";
      for (std::size_t k = 0; k < p.trace.size(); ++k)
        out << k << ',' << p.trace[k].stars << ',' << p.trace[k].unsupported << '\n';
      std::cerr << "terminal " << p.cover.str() << (p.cover.is_trivial() ? " (trivial)" : "") << '\n';
      return 0;
    }

    if (*cencode) {
      const Formula f = load(cencode_in);
      const CoverEncoding enc = encode_covers_as_cnf(f);
      write_dimacs(out, enc.g);
      write_file(cencode_map, [&](std::ostream& o) { write_decode_map_csv(o, enc); });
      return 0;
    }

    if (*dec) {
      const Formula f = load(dec_in);
      dec_cfg.seed = g.seed;
      dec_cfg.budget_seconds = g.budget_seconds;
      const DecimationOutcome d = decimate(f, dec_cfg);
      write_decimation_log_csv(out, d);
      std::cerr << "decimation " << to_string(d.status) << " rounds=" << d.log.size() << '\n';
      if (d.assignment)
        write_file(dec_model, [&](std::ostream& o) { print_model(o, *d.assignment); });
      return d.status == DecimationStatus::kSolved ? 0 : 1;
    }

    if (*epeel) {
      pcfg.seed = g.seed;
      pcfg.budget_seconds = g.budget_seconds;
      pcfg.order = kPeelOrders.at(pcfg_order);
      const PeelingReport r = run_peeling(pcfg);
      write_peeling_csv(out, pcfg, r);
      std::cerr << "trivial " << r.trivial << " nontrivial " << r.nontrivial << '\n';
      return 0;
    }

    if (*etrans) {
      tcfg.seed = g.seed;
      tcfg.budget_seconds = g.budget_seconds;
      if (tcfg.alphas.empty()) {
        if (!(t_step > 0.0)) throw std::invalid_argument("--alpha-step must be positive");
        for (double a = t_from; a <= t_to + 1e-9; a += t_step) tcfg.alphas.push_back(a);
      }
      const TransitionReport r = run_transition(tcfg);
      write_transition_csv(out, tcfg, r);
      if (auto c = crossing_alpha(r)) std::cerr << "existence crosses 1/2 near alpha " << *c << '\n';
      return 0;
    }

    if (*egrowth) {
      gcfg.seed = g.seed;
      gcfg.budget_seconds = g.budget_seconds;
      gcfg.order = kPeelOrders.at(gcfg_order);
      const GrowthReport r = run_growth(gcfg);
      write_growth_csv(out, gcfg, r);
      return 0;
    }

    if (*escatter) {
      scfg.seed = g.seed;
      scfg.budget_seconds = g.budget_seconds;
      scfg.which = parse_scatter_kind(s_which);
      scfg.cover_source = s_cover == "exact" ? Source::kExact : Source::kSampled;
      scfg.solution_source = s_solution == "exact" ? Source::kExact : Source::kSampled;
      const ScatterReport r = run_scatter(scfg);
      write_scatter_csv(out, scfg, r);
      return 0;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
