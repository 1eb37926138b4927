#include "survey/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "survey/cdcl.hpp"
#include "survey/csv.hpp"
#include "survey/factor_graph.hpp"
#include "survey/rng.hpp"

namespace survey {

namespace {

class Deadline {
 public:
  explicit Deadline(double seconds)
      : seconds_(seconds), start_(std::chrono::steady_clock::now()) {}
  bool passed() const {
    if (seconds_ <= 0.0) return false;
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start_;
    return dt.count() > seconds_;
  }

 private:
  double seconds_;
  std::chrono::steady_clock::time_point start_;
};

std::string str(double v) { return csv::num(v); }
std::string str(std::size_t v) { return std::to_string(v); }
std::string str(std::uint64_t v, int) { return std::to_string(v); }

void add_walksat(ParamList& p, const WalkSatConfig& w) {
  p.emplace_back("walksat_max_flips", str(w.max_flips, 0));
  p.emplace_back("walksat_noise", str(w.noise));
  p.emplace_back("walksat_restart_interval",
                 w.restart_interval ? str(w.restart_interval, 0) : "never");
}

void add_sp(ParamList& p, const SpConfig& c) {
  p.emplace_back("sp_damping", str(c.damping));
  p.emplace_back("sp_tolerance", str(c.tolerance));
  p.emplace_back("sp_max_iters", str(c.max_iters));
}

Formula draw_formula(std::size_t n, double alpha, std::uint64_t seed) {
  return generate_random_3sat(n, clauses_for_ratio(n, alpha), seed);
}

/// Draws formulas from a seed stream until walksat solves one. Returns the
/// formula and its stream seed, or nullopt after `max_redraws` failures.
std::optional<std::pair<Formula, std::uint64_t>> draw_walksat_solvable(
    std::size_t n, double alpha, std::uint64_t base, const WalkSatConfig& w,
    std::size_t max_redraws, std::size_t& redraws) {
  for (std::size_t attempt = 0; attempt <= max_redraws; ++attempt) {
    const std::uint64_t s = derive_seed(base, attempt);
    Formula f = draw_formula(n, alpha, s);
    WalkSatConfig probe = w;
    probe.seed = derive_seed(s, 0xfeed);
    if (walksat(f, probe).status == SolveStatus::kSat) return std::pair{std::move(f), s};
    ++redraws;
  }
  return std::nullopt;
}

}  // namespace

void write_param_header(std::ostream& out, const std::string& kind,
                        const ParamList& params) {
  out << "# experiment=" << kind << '\n';
  for (const auto& [k, v] : params) out << "# " << k << '=' << v << '\n';
}

std::size_t clauses_for_ratio(std::size_t n, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  return static_cast<std::size_t>(std::llround(alpha * static_cast<double>(n)));
}

std::pair<double, double> wilson_interval(std::size_t successes, std::size_t trials) {
  if (trials == 0) return {0.0, 1.0};
  const double z = 1.959963984540054;
  const double nt = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / nt;
  const double denom = 1.0 + z * z / nt;
  const double centre = (p + z * z / (2.0 * nt)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / nt + z * z / (4.0 * nt * nt)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

// -- peeling -------------------------------------------------------------------

ParamList PeelingConfig::params() const {
  ParamList p{{"n", str(n)},
              {"alpha", str(alpha)},
              {"m", str(clauses_for_ratio(n, alpha))},
              {"formulas", str(formulas)},
              {"samples", str(samples)},
              {"seed", str(seed, 0)},
              {"peel_order", to_string(order)},
              {"max_redraws", str(max_redraws)},
              {"trace_stride", str(trace_stride)},
              {"budget_seconds", str(budget_seconds)}};
  add_walksat(p, walksat);
  return p;
}

double PeelingReport::trivial_fraction() const {
  const std::size_t total = trivial + nontrivial;
  return total ? static_cast<double>(trivial) / static_cast<double>(total) : 0.0;
}

PeelingReport run_peeling(const PeelingConfig& cfg) {
  if (cfg.formulas == 0 || cfg.samples == 0)
    throw std::invalid_argument("formulas and samples must be at least 1");
  const Deadline deadline(cfg.budget_seconds);
  PeelingReport rep;
  for (std::size_t fi = 0; fi < cfg.formulas; ++fi) {
    if (deadline.passed()) {
      rep.budget_hit = true;
      break;
    }
    auto drawn = draw_walksat_solvable(cfg.n, cfg.alpha, derive_seed(cfg.seed, fi),
                                       cfg.walksat, cfg.max_redraws, rep.redraws);
    if (!drawn) {
      rep.warnings.push_back("formula " + std::to_string(fi) +
                             ": walksat failed on every redraw, skipped");
      continue;
    }
    rep.formulas.resize(fi + 1);
    rep.formulas[fi] = std::move(drawn->first);
    const Formula& f = rep.formulas[fi];
    SampleSet set = sample_solutions(f, cfg.samples, derive_seed(drawn->second, 1), cfg.walksat);
    for (auto& w : set.warnings) rep.warnings.push_back("formula " + std::to_string(fi) + ": " + w);

    std::vector<PeelingTrace> traces(set.models.size());
    const auto count = static_cast<std::ptrdiff_t>(set.models.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
      const auto u = static_cast<std::size_t>(i);
      PeelResult pr = star_propagate(f, GeneralizedAssignment(set.models[u]), cfg.order,
                                     derive_seed(drawn->second, 2 + u), true);
      PeelingTrace& t = traces[u];
      t.formula = fi;
      t.sample = u;
      t.monotone = true;
      for (std::size_t k = 1; k < pr.trace.size(); ++k)
        if (pr.trace[k].stars != pr.trace[k - 1].stars + 1) t.monotone = false;
      t.cover_ok = is_cover(f, pr.cover);
      t.trivial = pr.cover.is_trivial();
      t.trace = std::move(pr.trace);
      t.terminal = std::move(pr.cover);
    }
    for (auto& t : traces) {
      (t.trivial ? rep.trivial : rep.nontrivial) += 1;
      rep.traces.push_back(std::move(t));
    }
  }
  return rep;
}

void write_peeling_csv(std::ostream& out, const PeelingConfig& cfg,
                       const PeelingReport& r) {
  write_param_header(out, "peeling", cfg.params());
  out << "formula,sample,step,stars,unsupported,label\n";
  const std::size_t stride = std::max<std::size_t>(1, cfg.trace_stride);
  for (const PeelingTrace& t : r.traces) {
    const char* label = t.trivial ? "TRIVIAL" : "NONTRIVIAL";
    for (std::size_t k = 0; k < t.trace.size(); ++k) {
      if (k % stride != 0 && k + 1 != t.trace.size()) continue;
      out << t.formula << ',' << t.sample << ',' << k << ',' << t.trace[k].stars << ','
          << t.trace[k].unsupported << ',' << label << '\n';
    }
  }
  out << "# summary trivial=" << r.trivial << " nontrivial=" << r.nontrivial
      << " trivial_fraction=" << str(r.trivial_fraction()) << " redraws=" << r.redraws
      << " budget_hit=" << (r.budget_hit ? 1 : 0) << '\n';
  for (const auto& w : r.warnings) out << "# warning " << w << '\n';
}

// -- transition ----------------------------------------------------------------

std::vector<double> TransitionConfig::grid() const {
  if (!alphas.empty()) return alphas;
  std::vector<double> g;
  for (int i = 0; i <= 20; ++i) g.push_back(1.0 + 0.25 * i);
  return g;
}

ParamList TransitionConfig::params() const {
  std::string a;
  for (double x : grid()) a += (a.empty() ? "" : ";") + str(x);
  return {{"n", str(n)},
          {"alphas", a},
          {"formulas_per_point", str(formulas_per_point)},
          {"seed", str(seed, 0)},
          {"cover_limit", str(cover_limit)},
          {"existence_only", existence_only ? "1" : "0"},
          {"conflict_budget", conflict_budget ? str(conflict_budget, 0) : "unlimited"},
          {"budget_seconds", str(budget_seconds)},
          {"unsat_formulas", "kept"}};
}

TransitionReport run_transition(const TransitionConfig& cfg) {
  if (cfg.formulas_per_point == 0) throw std::invalid_argument("formulas_per_point must be >= 1");
  const Deadline deadline(cfg.budget_seconds);
  const std::vector<double> grid = cfg.grid();
  const std::uint64_t budget = cfg.conflict_budget ? cfg.conflict_budget : kUnlimited;
  const std::size_t limit = cfg.existence_only ? 2 : cfg.cover_limit;

  struct Trial {
    bool done = false, sat = false, decided = false, exists = false, complete = false;
    std::size_t nontrivial = 0, trues = 0, falses = 0;
  };

  TransitionReport rep;
  for (std::size_t pi = 0; pi < grid.size(); ++pi) {
    const double alpha = grid[pi];
    std::vector<Trial> trials(cfg.formulas_per_point);
    std::atomic<bool> hit{false};
    const auto count = static_cast<std::ptrdiff_t>(trials.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
      if (deadline.passed()) {
        hit = true;
        continue;
      }
      const auto u = static_cast<std::size_t>(i);
      const Formula f = draw_formula(cfg.n, alpha, derive_seed(derive_seed(cfg.seed, pi), u));
      Trial& t = trials[u];
      t.done = true;
      t.sat = CdclSolver(f).solve() == SolveStatus::kSat;
      const CoverEnumeration e = enumerate_covers_sat(f, limit, budget);
      for (const CoverRecord& r : e.covers) {
        if (r.kind == CoverKind::kTrivial) continue;
        ++t.nontrivial;
        if (r.kind == CoverKind::kTrue) ++t.trues;
        if (r.kind == CoverKind::kFalse) ++t.falses;
      }
      t.exists = t.nontrivial > 0;
      t.decided = t.exists || e.complete;
      t.complete = e.complete && !cfg.existence_only;
    }
    if (hit) rep.budget_hit = true;

    TransitionPoint p;
    p.alpha = alpha;
    p.m = clauses_for_ratio(cfg.n, alpha);
    double sum_nt = 0, sum_t = 0, sum_f = 0;
    for (const Trial& t : trials) {
      if (!t.done) continue;
      ++p.formulas;
      p.satisfiable += t.sat;
      p.decided += t.decided;
      p.with_nontrivial += t.exists;
      if (t.complete) {
        ++p.complete;
        sum_nt += static_cast<double>(t.nontrivial);
        sum_t += static_cast<double>(t.trues);
        sum_f += static_cast<double>(t.falses);
      }
    }
    if (p.complete) {
      const auto c = static_cast<double>(p.complete);
      p.mean_nontrivial = sum_nt / c;
      p.mean_true = sum_t / c;
      p.mean_false = sum_f / c;
    }
    rep.points.push_back(p);
  }
  return rep;
}

void write_transition_csv(std::ostream& out, const TransitionConfig& cfg,
                          const TransitionReport& r) {
  write_param_header(out, "transition", cfg.params());
  out << "alpha,m,formulas,satisfiable,decided,p_nontrivial,ci_low,ci_high,complete,"
         "mean_nontrivial,mean_true,mean_false\n";
  for (const TransitionPoint& p : r.points) {
    const auto [lo, hi] = wilson_interval(p.with_nontrivial, p.decided);
    out << str(p.alpha) << ',' << p.m << ',' << p.formulas << ',' << p.satisfiable << ','
        << p.decided << ',' << str(p.p_nontrivial()) << ',' << str(lo) << ',' << str(hi)
        << ',' << p.complete << ',';
    if (p.complete)
      out << str(p.mean_nontrivial) << ',' << str(p.mean_true) << ',' << str(p.mean_false);
    else
      out << "NA,NA,NA";
    out << '\n';
  }
  if (r.budget_hit) out << "# warning budget exhausted; some points have fewer formulas\n";
}

std::optional<double> crossing_alpha(const TransitionReport& r, double level) {
  for (std::size_t i = 1; i < r.points.size(); ++i) {
    const double a = r.points[i - 1].p_nontrivial(), b = r.points[i].p_nontrivial();
    if (a < level && b >= level) {
      const double t = (level - a) / (b - a);
      return r.points[i - 1].alpha + t * (r.points[i].alpha - r.points[i - 1].alpha);
    }
  }
  return std::nullopt;
}

// -- growth --------------------------------------------------------------------

std::vector<std::size_t> GrowthConfig::grid() const {
  if (!sizes.empty()) return sizes;
  return {100, 200, 300, 400, 500};
}

ParamList GrowthConfig::params() const {
  std::string s;
  for (std::size_t x : grid()) s += (s.empty() ? "" : ";") + str(x);
  ParamList p{{"sizes", s},
              {"alpha", str(alpha)},
              {"samples_per_formula", str(samples_per_formula)},
              {"formulas", str(formulas)},
              {"seed", str(seed, 0)},
              {"peel_order", to_string(order)},
              {"max_redraws", str(max_redraws)},
              {"budget_seconds", str(budget_seconds)}};
  add_walksat(p, walksat);
  return p;
}

double expected_solution_scale(double alpha, std::size_t n) {
  return std::pow(2.0 * std::pow(7.0 / 8.0, alpha), static_cast<double>(n));
}

GrowthReport run_growth(const GrowthConfig& cfg) {
  if (cfg.formulas == 0 || cfg.samples_per_formula == 0)
    throw std::invalid_argument("formulas and samples must be at least 1");
  const Deadline deadline(cfg.budget_seconds);
  GrowthReport rep;
  const auto sizes = cfg.grid();
  for (std::size_t gi = 0; gi < sizes.size(); ++gi) {
    GrowthPoint p;
    p.n = sizes[gi];
    for (std::size_t fi = 0; fi < cfg.formulas; ++fi) {
      if (deadline.passed()) {
        rep.budget_hit = true;
        break;
      }
      auto drawn = draw_walksat_solvable(p.n, cfg.alpha,
                                         derive_seed(derive_seed(cfg.seed, gi), fi),
                                         cfg.walksat, cfg.max_redraws, rep.redraws);
      if (!drawn) continue;
      const PeeledMarginals pm =
          peeled_cover_marginals(drawn->first, cfg.samples_per_formula,
                                 derive_seed(drawn->second, 1), cfg.order, cfg.walksat);
      ++p.formulas;
      p.samples += pm.samples;
      p.nontrivial += pm.samples - pm.trivial;
    }
    p.p = p.samples ? static_cast<double>(p.nontrivial) / static_cast<double>(p.samples) : 0.0;
    p.scale = expected_solution_scale(cfg.alpha, p.n);
    p.scaled = p.p * p.scale;
    p.censored = p.nontrivial == 0;
    rep.points.push_back(p);
  }
  // Least squares of ln(scaled) on n.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t k = 0;
  for (const GrowthPoint& p : rep.points) {
    if (p.censored) continue;
    const double x = static_cast<double>(p.n), y = std::log(p.scaled);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++k;
  }
  if (k >= 2) {
    const double kk = static_cast<double>(k);
    const double den = kk * sxx - sx * sx;
    if (den > 0.0) rep.growth_base = std::exp((kk * sxy - sx * sy) / den);
  }
  return rep;
}

void write_growth_csv(std::ostream& out, const GrowthConfig& cfg, const GrowthReport& r) {
  write_param_header(out, "growth", cfg.params());
  out << "n,formulas,samples,nontrivial,p,scale,scaled,censored\n";
  for (const GrowthPoint& p : r.points)
    out << p.n << ',' << p.formulas << ',' << p.samples << ',' << p.nontrivial << ','
        << str(p.p) << ',' << str(p.scale) << ',' << str(p.scaled) << ','
        << (p.censored ? 1 : 0) << '\n';
  out << "# fit growth_base=" << (r.growth_base ? str(*r.growth_base) : "NA")
      << " redraws=" << r.redraws << " budget_hit=" << (r.budget_hit ? 1 : 0) << '\n';
}

// -- scatter -------------------------------------------------------------------

const char* to_string(ScatterKind k) {
  switch (k) {
    case ScatterKind::kSpVsCover: return "sp-vs-cover";
    case ScatterKind::kCoverVsSolution: return "cover-vs-solution";
    case ScatterKind::kBpVsSolution: return "bp-vs-solution";
  }
  return "?";
}

ScatterKind parse_scatter_kind(std::string_view s) {
  if (s == "sp-vs-cover") return ScatterKind::kSpVsCover;
  if (s == "cover-vs-solution") return ScatterKind::kCoverVsSolution;
  if (s == "bp-vs-solution") return ScatterKind::kBpVsSolution;
  throw std::invalid_argument("unknown scatter kind '" + std::string(s) + "'");
}

namespace {
const char* to_string(Source s) { return s == Source::kExact ? "exact" : "sampled"; }
}  // namespace

ParamList ScatterConfig::params() const {
  ParamList p{{"n", str(n)},
              {"alpha", str(alpha)},
              {"m", str(clauses_for_ratio(n, alpha))},
              {"formulas", str(formulas)},
              {"seed", str(seed, 0)},
              {"which", to_string(which)},
              {"cover_source", cover_source == Source::kExact ? "exact" : "peeled"},
              {"solution_source", to_string(solution_source)},
              {"samples", str(samples)},
              {"require_nontrivial", require_nontrivial ? "1" : "0"},
              {"all_estimators", all_estimators ? "1" : "0"},
              {"max_redraws", str(max_redraws)},
              {"peel_order", to_string(order)},
              {"bp_damping", str(bp.damping)},
              {"bp_tolerance", str(bp.tolerance)},
              {"bp_max_iters", str(bp.max_iters)},
              {"budget_seconds", str(budget_seconds)}};
  add_sp(p, sp);
  add_walksat(p, walksat);
  return p;
}

ScatterReport run_scatter(const ScatterConfig& cfg) {
  if (cfg.formulas == 0) throw std::invalid_argument("formulas must be >= 1");
  const Deadline deadline(cfg.budget_seconds);
  const bool all = cfg.all_estimators;
  const bool want_sp = all || cfg.which == ScatterKind::kSpVsCover;
  const bool want_cover = all || cfg.which != ScatterKind::kBpVsSolution;
  const bool want_solution = all || cfg.which != ScatterKind::kSpVsCover;
  const bool want_bp = all || cfg.which == ScatterKind::kBpVsSolution;

  ScatterReport rep;
  std::uint64_t stream = 0;
  for (std::size_t fi = 0; fi < cfg.formulas; ++fi) {
    if (deadline.passed()) {
      rep.budget_hit = true;
      break;
    }
    // Draw until satisfiable (and with a non-trivial cover if requested).
    std::optional<Formula> f;
    std::optional<CoverEnumeration> covers;
    std::uint64_t fseed = 0;
    for (std::size_t attempt = 0; attempt <= cfg.max_redraws; ++attempt) {
      fseed = derive_seed(cfg.seed, stream++);
      Formula cand = draw_formula(cfg.n, cfg.alpha, fseed);
      bool sat;
      if (cfg.solution_source == Source::kExact || cfg.cover_source == Source::kExact) {
        sat = CdclSolver(cand).solve() == SolveStatus::kSat;
      } else {
        WalkSatConfig probe = cfg.walksat;
        probe.seed = derive_seed(fseed, 0xfeed);
        sat = walksat(cand, probe).status == SolveStatus::kSat;
      }
      if (sat && want_cover && cfg.cover_source == Source::kExact) {
        covers = enumerate_covers_sat(cand);
        if (cfg.require_nontrivial && covers->covers.size() < 2) sat = false;
      }
      if (sat) {
        f = std::move(cand);
        break;
      }
      ++rep.redraws;
    }
    if (!f) {
      rep.warnings.push_back("formula " + std::to_string(fi) + ": no acceptable draw");
      continue;
    }
    const std::size_t n = f->num_vars();
    std::vector<ScatterRow> rows(n);
    for (std::size_t x = 0; x < n; ++x) rows[x] = {rep.formulas, x, {}, {}, {}, {}};
    auto note = [&](const std::string& w) {
      rep.warnings.push_back("formula " + std::to_string(rep.formulas) + ": " + w);
    };

    if (want_sp) {
      const FactorGraph g(*f);
      const SpRun run = sp_run(g, MessageInit::Random(derive_seed(fseed, 1)), cfg.sp);
      std::optional<MarginalTable> b;
      if (run.status == RunStatus::kConverged) b = sp_biases(g, run.state);
      if (b) {
        const auto m = magnetization(*b);
        for (std::size_t x = 0; x < n; ++x) rows[x].sp = m[x];
      } else {
        note(std::string("sp ") + to_string(run.status));
      }
    }
    if (want_cover) {
      std::optional<MarginalTable> t;
      if (cfg.cover_source == Source::kExact) {
        if (covers->complete) t = cover_marginals_from(covers->covers, n);
        else note("cover enumeration incomplete");
      } else {
        t = peeled_cover_marginals(*f, cfg.samples, derive_seed(fseed, 2), cfg.order,
                                   cfg.walksat)
                .table;
      }
      if (t) {
        const auto m = magnetization(*t);
        for (std::size_t x = 0; x < n; ++x) rows[x].cover = m[x];
      }
    }
    if (want_solution) {
      MarginalTable t = cfg.solution_source == Source::kExact
                            ? exact_solution_marginals(*f)
                            : sampled_solution_marginals(*f, cfg.samples,
                                                         derive_seed(fseed, 3), cfg.walksat)
                                  .table;
      const auto m = magnetization(t);
      for (std::size_t x = 0; x < n; ++x) rows[x].solution = m[x];
    }
    if (want_bp) {
      const FactorGraph g(*f);
      const PlainBpRun run = plain_bp_run(g, MessageInit::Random(derive_seed(fseed, 4)), cfg.bp);
      if (run.status != RunStatus::kConverged) note(std::string("bp ") + to_string(run.status));
      if (run.status != RunStatus::kContradiction) {
        if (auto t = plain_bp_marginals(g, run.state)) {
          const auto m = magnetization(*t);
          for (std::size_t x = 0; x < n; ++x) rows[x].bp = m[x];
        }
      }
    }
    rep.rows.insert(rep.rows.end(), rows.begin(), rows.end());
    ++rep.formulas;
  }
  return rep;
}

void write_scatter_csv(std::ostream& out, const ScatterConfig& cfg,
                       const ScatterReport& r) {
  write_param_header(out, "scatter", cfg.params());
  std::optional<double> ScatterRow::*x = &ScatterRow::sp;
  std::optional<double> ScatterRow::*y = &ScatterRow::cover;
  if (cfg.which == ScatterKind::kCoverVsSolution) {
    x = &ScatterRow::cover;
    y = &ScatterRow::solution;
  } else if (cfg.which == ScatterKind::kBpVsSolution) {
    x = &ScatterRow::bp;
    y = &ScatterRow::solution;
  }
  out << "formula,var,m_x,m_y\n";
  for (const ScatterRow& row : r.rows)
    out << row.formula << ',' << row.var + 1 << ',' << csv::num(row.*x) << ','
        << csv::num(row.*y) << '\n';
  out << "# summary formulas=" << r.formulas << " redraws=" << r.redraws
      << " budget_hit=" << (r.budget_hit ? 1 : 0) << '\n';
  for (const auto& w : r.warnings) out << "# warning " << w << '\n';
}

SignAgreement sign_agreement(const std::vector<ScatterRow>& rows,
                             std::optional<double> ScatterRow::*x,
                             std::optional<double> ScatterRow::*y, double threshold) {
  SignAgreement s;
  for (const ScatterRow& row : rows) {
    const auto& a = row.*x;
    const auto& b = row.*y;
    if (!a || !b || std::abs(*a) < threshold) continue;
    ++s.qualifying;
    if (*a * *b > 0.0) ++s.agreeing;
  }
  return s;
}

// -- decimation bench ------------------------------------------------------------

ParamList DecimationBenchConfig::params() const {
  const DecimationConfig& d = decimation;
  ParamList p{{"n", str(n)},
              {"alpha", str(alpha)},
              {"m", str(clauses_for_ratio(n, alpha))},
              {"formulas", str(formulas)},
              {"seed", str(seed, 0)},
              {"fix_fraction", str(d.fix_fraction)},
              {"extreme_threshold", str(d.extreme_threshold)},
              {"trivial_threshold", str(d.trivial_threshold)},
              {"max_rounds", str(d.max_rounds)},
              {"budget_seconds", str(d.budget_seconds)}};
  add_sp(p, d.sp);
  add_walksat(p, d.walksat);
  return p;
}

std::vector<DecimationBenchRow> run_decimation_bench(const DecimationBenchConfig& cfg) {
  std::vector<DecimationBenchRow> rows;
  for (std::size_t fi = 0; fi < cfg.formulas; ++fi) {
    const std::uint64_t s = derive_seed(cfg.seed, fi);
    const Formula f = draw_formula(cfg.n, cfg.alpha, s);
    DecimationConfig dc = cfg.decimation;
    dc.seed = derive_seed(s, 1);
    const auto t0 = std::chrono::steady_clock::now();
    const DecimationOutcome d = decimate(f, dc);
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    rows.push_back({fi, d.status, d.log.size(), dt.count(),
                    d.assignment && evaluate(f, *d.assignment)});
  }
  return rows;
}

void write_decimation_bench_csv(std::ostream& out, const DecimationBenchConfig& cfg,
                                const std::vector<DecimationBenchRow>& rows) {
  write_param_header(out, "decimation-bench", cfg.params());
  out << "formula,status,rounds,seconds,verified\n";
  for (const auto& r : rows)
    out << r.formula << ',' << to_string(r.status) << ',' << r.rounds << ','
        << str(r.seconds) << ',' << (r.verified ? 1 : 0) << '\n';
}

}  // namespace survey
