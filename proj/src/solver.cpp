#include "survey/solver.hpp"

#include <algorithm>
#include <set>

#include "survey/rng.hpp"

namespace survey {

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::kSat: return "SAT";
    case SolveStatus::kUnsat: return "UNSAT";
    case SolveStatus::kUnknown: return "UNKNOWN";
  }
  return "?";
}

namespace detail {

Dpll::Dpll(const Formula& f)
    : num_vars_(f.num_vars()),
      watches_(2 * f.num_vars()),
      value_(f.num_vars(), -1) {
  clauses_.reserve(f.num_clauses());
  for (const Clause& c : f.clauses()) {
    std::vector<std::size_t> codes;
    codes.reserve(c.size());
    for (Literal l : c) codes.push_back(lit_code(l));
    clauses_.push_back(std::move(codes));
  }
  for (std::size_t i = 0; i < clauses_.size(); ++i) {
    if (clauses_[i].size() < 2) continue;
    watches_[clauses_[i][0]].push_back(i);
    watches_[clauses_[i][1]].push_back(i);
  }
}

void Dpll::assign(std::size_t code) {
  value_[code >> 1] = (code & 1) ? 0 : 1;
  trail_.push_back(code);
}

bool Dpll::propagate() {
  while (qhead_ < trail_.size()) {
    const std::size_t false_lit = trail_[qhead_++] ^ 1;
    auto& ws = watches_[false_lit];
    std::size_t keep = 0;
    for (std::size_t i = 0; i < ws.size(); ++i) {
      const std::size_t ci = ws[i];
      auto& c = clauses_[ci];
      if (c[0] == false_lit) std::swap(c[0], c[1]);
      if (lit_value(c[0]) == 1) {
        ws[keep++] = ci;
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < c.size(); ++k) {
        if (lit_value(c[k]) != 0) {
          std::swap(c[1], c[k]);
          watches_[c[1]].push_back(ci);
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[keep++] = ci;
      if (lit_value(c[0]) == 0) {
        for (++i; i < ws.size(); ++i) ws[keep++] = ws[i];
        ws.resize(keep);
        return false;
      }
      assign(c[0]);
      ++stats_.propagations;
    }
    ws.resize(keep);
  }
  return true;
}

bool Dpll::backtrack() {
  while (!decisions_.empty()) {
    Decision& d = decisions_.back();
    while (trail_.size() > d.trail_pos) {
      value_[trail_.back() >> 1] = -1;
      trail_.pop_back();
    }
    qhead_ = d.trail_pos;
    next_var_ = std::min(next_var_, d.var);
    if (!d.flipped) {
      d.flipped = true;
      assign(2 * d.var + 1);
      return true;
    }
    decisions_.pop_back();
  }
  return false;
}

SolveStatus Dpll::next(std::uint64_t decision_budget) {
  if (exhausted_) return SolveStatus::kUnsat;
  if (!started_) {
    started_ = true;
    for (const auto& c : clauses_) {
      if (c.size() != 1) continue;
      const int v = lit_value(c[0]);
      if (v == 0) {
        exhausted_ = true;
        return SolveStatus::kUnsat;
      }
      if (v < 0) assign(c[0]);
    }
  } else if (have_model_) {
    have_model_ = false;
    if (!backtrack()) {
      exhausted_ = true;
      return SolveStatus::kUnsat;
    }
  }
  for (;;) {
    if (!propagate()) {
      if (!backtrack()) {
        exhausted_ = true;
        return SolveStatus::kUnsat;
      }
      continue;
    }
    while (next_var_ < num_vars_ && value_[next_var_] >= 0) ++next_var_;
    if (next_var_ == num_vars_) {
      have_model_ = true;
      return SolveStatus::kSat;
    }
    if (stats_.decisions >= decision_budget) return SolveStatus::kUnknown;
    ++stats_.decisions;
    decisions_.push_back({trail_.size(), next_var_, false});
    assign(2 * next_var_);
  }
}

Assignment Dpll::model() const {
  Assignment a(num_vars_);
  for (std::size_t v = 0; v < num_vars_; ++v) a[v] = value_[v] == 1 ? 1 : 0;
  return a;
}

}  // namespace detail

SolveResult dpll_solve(const Formula& f, std::uint64_t decision_budget) {
  detail::Dpll engine(f);
  SolveResult r;
  r.status = engine.next(decision_budget);
  r.stats = engine.stats();
  if (r.status == SolveStatus::kSat) {
    r.model = engine.model();
    if (!evaluate(f, *r.model))
      throw std::logic_error("dpll produced a non-model");
  }
  return r;
}

ModelList enumerate_models(const Formula& f, std::size_t limit,
                           std::uint64_t decision_budget) {
  detail::Dpll engine(f);
  ModelList out;
  for (;;) {
    const SolveStatus s = engine.next(decision_budget);
    if (s == SolveStatus::kUnsat) {
      out.complete = true;
      break;
    }
    if (s == SolveStatus::kUnknown || out.models.size() == limit) break;
    Assignment a = engine.model();
    if (!evaluate(f, a))
      throw std::logic_error("enumeration produced a non-model");
    out.models.push_back(std::move(a));
  }
  out.stats = engine.stats();
  return out;
}

namespace {

class WalkSat {
 public:
  explicit WalkSat(const Formula& f) : f_(f), n_(f.num_vars()) {
    const std::size_t m = f.num_clauses();
    clause_offsets_.reserve(m + 1);
    clause_offsets_.push_back(0);
    occurs_.resize(2 * n_);
    for (std::size_t i = 0; i < m; ++i) {
      for (Literal l : f.clause(i)) {
        const std::size_t code = 2 * l.index() + (l.positive() ? 0 : 1);
        lits_.push_back(code);
        occurs_[code].push_back(static_cast<std::uint32_t>(i));
      }
      clause_offsets_.push_back(lits_.size());
    }
    num_true_.assign(m, 0);
    unsat_pos_.assign(m, kAbsent);
    value_.assign(n_, 0);
  }

  SolveResult run(const WalkSatConfig& cfg,
                  const std::optional<Assignment>& initial) {
    Rng rng(cfg.seed);
    const std::uint64_t restart = cfg.restart_interval;
    SolveResult r;
    if (initial)
      value_ = *initial;
    else
      randomize(rng);
    reset_counts();
    std::uint64_t since_restart = 0;
    std::vector<std::size_t> best;
    while (!unsat_.empty()) {
      if (r.stats.flips >= cfg.max_flips) {
        r.status = SolveStatus::kUnknown;
        return r;
      }
      if (restart != 0 && since_restart == restart) {
        randomize(rng);
        reset_counts();
        since_restart = 0;
        continue;
      }
      const std::uint32_t ci = unsat_[uniform_below(rng, unsat_.size())];
      const std::size_t begin = clause_offsets_[ci];
      const std::size_t end = clause_offsets_[ci + 1];
      std::size_t pick = lits_[begin] >> 1;
      std::size_t min_break = std::numeric_limits<std::size_t>::max();
      best.clear();
      for (std::size_t k = begin; k < end; ++k) {
        const std::size_t var = lits_[k] >> 1;
        const std::size_t b = break_count(var);
        if (b < min_break) {
          min_break = b;
          best.clear();
        }
        if (b == min_break) best.push_back(var);
      }
      if (min_break > 0 && uniform01(rng) < cfg.noise) {
        pick = lits_[begin + uniform_below(rng, end - begin)] >> 1;
      } else {
        pick = best.size() == 1 ? best[0] : best[uniform_below(rng, best.size())];
      }
      flip(pick);
      ++r.stats.flips;
      ++since_restart;
    }
    r.status = SolveStatus::kSat;
    r.model = value_;
    if (!evaluate(f_, *r.model))
      throw std::logic_error("walksat produced a non-model");
    return r;
  }

 private:
  static constexpr std::size_t kAbsent = std::numeric_limits<std::size_t>::max();

  bool lit_true(std::size_t code) const {
    return value_[code >> 1] == ((code & 1) ? 0 : 1);
  }

  void randomize(Rng& rng) {
    for (auto& v : value_) v = coin(rng) ? 1 : 0;
  }

  void reset_counts() {
    unsat_.clear();
    std::fill(unsat_pos_.begin(), unsat_pos_.end(), kAbsent);
    for (std::size_t i = 0; i + 1 < clause_offsets_.size(); ++i) {
      std::uint32_t t = 0;
      for (std::size_t k = clause_offsets_[i]; k < clause_offsets_[i + 1]; ++k)
        t += lit_true(lits_[k]) ? 1 : 0;
      num_true_[i] = t;
      if (t == 0) add_unsat(static_cast<std::uint32_t>(i));
    }
  }

  void add_unsat(std::uint32_t ci) {
    unsat_pos_[ci] = unsat_.size();
    unsat_.push_back(ci);
  }
  void remove_unsat(std::uint32_t ci) {
    const std::size_t pos = unsat_pos_[ci];
    const std::uint32_t last = unsat_.back();
    unsat_[pos] = last;
    unsat_pos_[last] = pos;
    unsat_.pop_back();
    unsat_pos_[ci] = kAbsent;
  }

  std::size_t break_count(std::size_t var) const {
    const std::size_t true_code = 2 * var + (value_[var] ? 0 : 1);
    std::size_t b = 0;
    for (std::uint32_t ci : occurs_[true_code]) b += num_true_[ci] == 1;
    return b;
  }

  void flip(std::size_t var) {
    const std::size_t old_true = 2 * var + (value_[var] ? 0 : 1);
    value_[var] ^= 1;
    for (std::uint32_t ci : occurs_[old_true])
      if (--num_true_[ci] == 0) add_unsat(ci);
    for (std::uint32_t ci : occurs_[old_true ^ 1])
      if (num_true_[ci]++ == 0) remove_unsat(ci);
  }

  const Formula& f_;
  std::size_t n_;
  std::vector<std::size_t> lits_;
  std::vector<std::size_t> clause_offsets_;
  std::vector<std::vector<std::uint32_t>> occurs_;
  std::vector<std::uint32_t> num_true_;
  std::vector<std::uint32_t> unsat_;
  std::vector<std::size_t> unsat_pos_;
  Assignment value_;
};

}  // namespace

SolveResult walksat(const Formula& f, const WalkSatConfig& config,
                    const std::optional<Assignment>& initial) {
  if (!(config.noise >= 0.0 && config.noise <= 1.0))
    throw std::invalid_argument("walksat noise must lie in [0,1]");
  if (initial && initial->size() != f.num_vars())
    throw std::invalid_argument("initial assignment has wrong length");
  WalkSat engine(f);
  return engine.run(config, initial);
}

SampleSet sample_solutions(const Formula& f, std::size_t k, std::uint64_t seed,
                           WalkSatConfig config) {
  if (k == 0) throw std::invalid_argument("sample count must be at least 1");
  SampleSet out;
  out.requested = k;
  std::vector<std::optional<Assignment>> runs(k);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < k; ++i) {
    WalkSatConfig c = config;
    c.seed = derive_seed(seed, i);
    SolveResult r = walksat(f, c);
    if (r.status == SolveStatus::kSat) runs[i] = std::move(r.model);
  }
  std::set<Assignment> seen;
  for (auto& r : runs) {
    if (!r) continue;
    seen.insert(*r);
    out.models.push_back(std::move(*r));
  }
  out.distinct = seen.size();
  if (out.models.size() < k)
    out.warnings.push_back("walksat budget exhausted on " +
                           std::to_string(k - out.models.size()) + " of " +
                           std::to_string(k) + " runs");
  if (out.distinct < out.models.size())
    out.warnings.push_back(std::to_string(out.models.size() - out.distinct) +
                           " duplicate samples");
  return out;
}

}  // namespace survey
