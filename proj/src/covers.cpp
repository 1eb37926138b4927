#include "survey/covers.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "survey/cdcl.hpp"
#include "survey/rng.hpp"

namespace survey {

GeneralizedAssignment::GeneralizedAssignment(const Assignment& a)
    : values_(a.size()) {
  for (std::size_t i = 0; i < a.size(); ++i)
    values_[i] = a[i] ? Tri::kOne : Tri::kZero;
}

GeneralizedAssignment GeneralizedAssignment::Parse(std::string_view text) {
  GeneralizedAssignment out;
  for (char ch : text) {
    switch (ch) {
      case '0': out.values_.push_back(Tri::kZero); break;
      case '1': out.values_.push_back(Tri::kOne); break;
      case '*': out.values_.push_back(Tri::kStar); break;
      case ' ': case '\t': case '\r': case '\n': break;
      default:
        throw std::invalid_argument(std::string("bad generalized value '") +
                                    ch + "'");
    }
  }
  return out;
}

std::size_t GeneralizedAssignment::star_count() const {
  return static_cast<std::size_t>(
      std::count(values_.begin(), values_.end(), Tri::kStar));
}

std::string GeneralizedAssignment::str() const {
  std::string s;
  s.reserve(values_.size());
  for (Tri t : values_) s.push_back(t == Tri::kStar ? '*' : t == Tri::kOne ? '1' : '0');
  return s;
}

LitState literal_state(Literal l, const GeneralizedAssignment& s) {
  const Tri t = s[l.index()];
  if (t == Tri::kStar) return LitState::kStar;
  return l.satisfied_by(t == Tri::kOne) ? LitState::kTrue : LitState::kFalse;
}

namespace {

void check_length(const Formula& f, const GeneralizedAssignment& s) {
  if (s.size() != f.num_vars())
    throw std::invalid_argument("generalized assignment has length " +
                                std::to_string(s.size()) + ", formula has " +
                                std::to_string(f.num_vars()) + " variables");
}

bool clause_ok(const Clause& c, const GeneralizedAssignment& s) {
  std::size_t stars = 0;
  for (Literal l : c) {
    const LitState st = literal_state(l, s);
    if (st == LitState::kTrue) return true;
    if (st == LitState::kStar) ++stars;
  }
  return stars >= 2;
}

bool supports(const Clause& c, const GeneralizedAssignment& s, std::size_t x) {
  bool found = false;
  for (Literal l : c) {
    const LitState st = literal_state(l, s);
    if (l.index() == x && st == LitState::kTrue) {
      found = true;
    } else if (st != LitState::kFalse) {
      return false;
    }
  }
  return found;
}

}  // namespace

bool is_supported(const Formula& f, const GeneralizedAssignment& s,
                  std::size_t x) {
  check_length(f, s);
  if (x >= s.size()) throw std::invalid_argument("variable out of range");
  if (s[x] == Tri::kStar)
    throw std::invalid_argument("support is undefined for a * variable");
  for (const Clause& c : f.clauses())
    if (supports(c, s, x)) return true;
  return false;
}

bool satisfies_clause_condition(const Formula& f,
                                const GeneralizedAssignment& s) {
  check_length(f, s);
  return std::all_of(f.clauses().begin(), f.clauses().end(),
                     [&](const Clause& c) { return clause_ok(c, s); });
}

bool is_cover(const Formula& f, const GeneralizedAssignment& s) {
  if (!satisfies_clause_condition(f, s)) return false;
  std::vector<bool> supported(f.num_vars(), false);
  for (const Clause& c : f.clauses()) {
    // A clause supports at most one variable: its sole true literal.
    std::size_t true_var = 0, trues = 0;
    bool blocked = false;
    for (Literal l : c) {
      const LitState st = literal_state(l, s);
      if (st == LitState::kTrue) {
        ++trues;
        true_var = l.index();
      } else if (st == LitState::kStar) {
        blocked = true;
      }
    }
    if (!blocked && trues == 1) supported[true_var] = true;
  }
  for (std::size_t x = 0; x < s.size(); ++x)
    if (s[x] != Tri::kStar && !supported[x]) return false;
  return true;
}

const char* to_string(PeelOrder p) {
  switch (p) {
    case PeelOrder::kLowestIndex: return "lowest";
    case PeelOrder::kRandom: return "random";
    case PeelOrder::kQueue: return "queue";
  }
  return "?";
}

PeelOrder parse_peel_order(std::string_view name) {
  if (name == "lowest") return PeelOrder::kLowestIndex;
  if (name == "random") return PeelOrder::kRandom;
  if (name == "queue") return PeelOrder::kQueue;
  throw std::invalid_argument("unknown peel order '" + std::string(name) + "'");
}

namespace {

/// Pending unsupported variables. Support only ever decreases during
/// peeling, so variables enter once and leave only when starred.
class Frontier {
 public:
  Frontier(PeelOrder order, std::uint64_t seed) : order_(order), rng_(seed) {}

  void push(std::size_t x) {
    switch (order_) {
      case PeelOrder::kLowestIndex: heap_.push(x); break;
      case PeelOrder::kQueue: fifo_.push_back(x); break;
      case PeelOrder::kRandom: pool_.push_back(x); break;
    }
  }
  std::size_t size() const {
    return heap_.size() + fifo_.size() + pool_.size();
  }
  bool empty() const { return size() == 0; }
  std::size_t pop() {
    std::size_t x = 0;
    switch (order_) {
      case PeelOrder::kLowestIndex:
        x = heap_.top();
        heap_.pop();
        break;
      case PeelOrder::kQueue:
        x = fifo_.front();
        fifo_.pop_front();
        break;
      case PeelOrder::kRandom: {
        const std::size_t i = uniform_below(rng_, pool_.size());
        x = pool_[i];
        pool_[i] = pool_.back();
        pool_.pop_back();
        break;
      }
    }
    return x;
  }

 private:
  PeelOrder order_;
  Rng rng_;
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> heap_;
  std::deque<std::size_t> fifo_;
  std::vector<std::size_t> pool_;
};

}  // namespace

PeelResult star_propagate(const Formula& f, const GeneralizedAssignment& start,
                          PeelOrder order, std::uint64_t seed,
                          bool record_trace) {
  check_length(f, start);
  if (!satisfies_clause_condition(f, start))
    throw std::invalid_argument(
        "*-propagation start violates the clause condition (some clause has "
        "no true literal and fewer than two * literals)");

  const std::size_t n = f.num_vars();
  const std::size_t m = f.num_clauses();
  PeelResult out;
  out.cover = start;
  GeneralizedAssignment& s = out.cover;

  std::vector<std::vector<std::uint32_t>> occurs(n);
  std::vector<std::uint32_t> num_true(m, 0), num_star(m, 0);
  std::vector<std::uint32_t> support(n, 0);
  for (std::size_t a = 0; a < m; ++a) {
    for (Literal l : f.clause(a)) {
      auto& occ = occurs[l.index()];
      if (occ.empty() || occ.back() != a) occ.push_back(static_cast<std::uint32_t>(a));
      const LitState st = literal_state(l, s);
      num_true[a] += st == LitState::kTrue;
      num_star[a] += st == LitState::kStar;
    }
  }
  auto sole_true_var = [&](std::size_t a) -> std::optional<std::size_t> {
    if (num_true[a] != 1 || num_star[a] != 0) return std::nullopt;
    for (Literal l : f.clause(a))
      if (literal_state(l, s) == LitState::kTrue) return l.index();
    return std::nullopt;
  };
  for (std::size_t a = 0; a < m; ++a)
    if (auto y = sole_true_var(a)) ++support[*y];

  Frontier frontier(order, seed);
  for (std::size_t x = 0; x < n; ++x)
    if (s[x] != Tri::kStar && support[x] == 0) frontier.push(x);

  std::size_t stars = s.star_count();
  if (record_trace) out.trace.push_back({stars, frontier.size()});
  while (!frontier.empty()) {
    const std::size_t x = frontier.pop();
    for (std::uint32_t a : occurs[x]) {
      const auto lost = sole_true_var(a);
      for (Literal l : f.clause(a)) {
        if (l.index() != x) continue;
        if (literal_state(l, s) == LitState::kTrue) --num_true[a];
        ++num_star[a];
      }
      if (lost) {
        // x itself is unsupported, so the lost support belongs to another
        // variable.
        if (--support[*lost] == 0) frontier.push(*lost);
      }
    }
    s[x] = Tri::kStar;
    ++stars;
    if (record_trace) out.trace.push_back({stars, frontier.size()});
  }
  return out;
}

const char* to_string(CoverKind k) {
  switch (k) {
    case CoverKind::kTrue: return "TRUE";
    case CoverKind::kFalse: return "FALSE";
    case CoverKind::kTrivial: return "TRIVIAL";
    case CoverKind::kUnknown: return "UNKNOWN";
  }
  return "?";
}

Classification classify_cover(const Formula& f, const GeneralizedAssignment& s,
                              std::uint64_t decision_budget) {
  check_length(f, s);
  PartialAssignment fixed(f.num_vars());
  for (std::size_t x = 0; x < s.size(); ++x)
    if (s[x] != Tri::kStar) fixed[x] = s[x] == Tri::kOne;
  Classification out;
  const auto simplified = simplify(f, fixed);
  if (!simplified) {
    out.kind = CoverKind::kFalse;
    return out;
  }
  const SolveResult r = dpll_solve(simplified->residual, decision_budget);
  switch (r.status) {
    case SolveStatus::kSat:
      out.kind = CoverKind::kTrue;
      out.witness = simplified->lift(*r.model);
      break;
    case SolveStatus::kUnsat: out.kind = CoverKind::kFalse; break;
    case SolveStatus::kUnknown: out.kind = CoverKind::kUnknown; break;
  }
  return out;
}

CoverRecord make_record(const Formula& f, GeneralizedAssignment s,
                        std::uint64_t decision_budget) {
  CoverRecord r;
  r.star_count = s.star_count();
  if (r.star_count == s.size()) {
    r.kind = CoverKind::kTrivial;
  } else {
    Classification c = classify_cover(f, s, decision_budget);
    r.kind = c.kind;
    r.witness = std::move(c.witness);
  }
  r.assignment = std::move(s);
  return r;
}

namespace {

void sort_records(std::vector<CoverRecord>& covers) {
  std::sort(covers.begin(), covers.end(),
            [](const CoverRecord& a, const CoverRecord& b) {
              return a.assignment < b.assignment;
            });
}

}  // namespace

std::vector<CoverRecord> enumerate_covers_bruteforce(const Formula& f,
                                                     std::size_t cap) {
  const std::size_t n = f.num_vars();
  if (n > cap)
    throw std::invalid_argument("brute-force cover enumeration refused: " +
                                std::to_string(n) + " variables exceeds cap " +
                                std::to_string(cap));
  // Clause condition of clause a is decided once its highest variable is
  // set; support of x is decided once every clause of x is decided.
  std::vector<std::vector<std::size_t>> clauses_closing(n);
  std::vector<std::size_t> closes_at(f.num_clauses(), 0);
  std::vector<std::vector<std::size_t>> support_closing(n);
  std::vector<std::vector<std::size_t>> var_clauses(n);
  for (std::size_t a = 0; a < f.num_clauses(); ++a) {
    std::size_t hi = 0;
    for (Literal l : f.clause(a)) {
      hi = std::max(hi, l.index());
      var_clauses[l.index()].push_back(a);
    }
    closes_at[a] = hi;
    clauses_closing[hi].push_back(a);
  }
  for (std::size_t x = 0; x < n; ++x) {
    std::size_t at = x;
    for (std::size_t a : var_clauses[x]) at = std::max(at, closes_at[a]);
    support_closing[at].push_back(x);
  }

  std::vector<CoverRecord> out;
  GeneralizedAssignment s(n, Tri::kStar);
  const Tri order[3] = {Tri::kZero, Tri::kOne, Tri::kStar};
  std::function<void(std::size_t)> scan = [&](std::size_t v) {
    if (v == n) {
      out.push_back(make_record(f, s));
      return;
    }
    for (Tri t : order) {
      s[v] = t;
      bool ok = true;
      for (std::size_t a : clauses_closing[v])
        if (!clause_ok(f.clause(a), s)) { ok = false; break; }
      for (std::size_t x : support_closing[v]) {
        if (!ok) break;
        if (s[x] == Tri::kStar) continue;
        bool sup = false;
        for (std::size_t a : var_clauses[x])
          if (supports(f.clause(a), s, x)) { sup = true; break; }
        ok = sup;
      }
      if (ok) scan(v + 1);
    }
    s[v] = Tri::kStar;
  };
  scan(0);
  sort_records(out);
  return out;
}

const char* to_string(CoverEncoding::Role r) {
  switch (r) {
    case CoverEncoding::Role::kTrue: return "t";
    case CoverEncoding::Role::kFalse: return "f";
    case CoverEncoding::Role::kSupport: return "s";
  }
  return "?";
}

GeneralizedAssignment CoverEncoding::decode(const Assignment& g_model) const {
  GeneralizedAssignment s(true_var.size(), Tri::kStar);
  for (std::size_t x = 0; x < true_var.size(); ++x) {
    if (g_model[true_var[x]])
      s[x] = Tri::kOne;
    else if (g_model[false_var[x]])
      s[x] = Tri::kZero;
  }
  return s;
}

Assignment CoverEncoding::encode(const Formula& f,
                                 const GeneralizedAssignment& cover) const {
  Assignment a(g.num_vars(), 0);
  for (std::size_t x = 0; x < true_var.size(); ++x) {
    a[true_var[x]] = cover[x] == Tri::kOne;
    a[false_var[x]] = cover[x] == Tri::kZero;
  }
  for (std::size_t v = 0; v < roles.size(); ++v) {
    if (roles[v].role != Role::kSupport) continue;
    a[v] = supports(f.clause(roles[v].clause), cover, roles[v].orig_var);
  }
  return a;
}

CoverEncoding encode_covers_as_cnf(const Formula& f) {
  const std::size_t n = f.num_vars();
  CoverEncoding enc;
  enc.true_var.resize(n);
  enc.false_var.resize(n);
  // Indicator pairs go first, highest-degree variables earliest; the
  // DPLL engine branches in index order and this order prunes far sooner.
  std::vector<std::size_t> degree(n, 0), order(n);
  for (const Clause& c : f.clauses())
    for (Literal l : c) ++degree[l.index()];
  for (std::size_t x = 0; x < n; ++x) order[x] = x;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return degree[a] > degree[b]; });
  for (std::size_t x : order) {
    enc.true_var[x] = enc.roles.size();
    enc.roles.push_back({CoverEncoding::Role::kTrue, x, 0});
    enc.false_var[x] = enc.roles.size();
    enc.roles.push_back({CoverEncoding::Role::kFalse, x, 0});
  }
  // G literal helpers; G variables are zero-based here.
  auto pos = [](std::size_t v) { return Literal(static_cast<std::uint32_t>(v + 1), true); };
  auto neg = [](std::size_t v) { return Literal(static_cast<std::uint32_t>(v + 1), false); };
  // "literal l is true" / "literal l is false" indicators.
  auto lit_true = [&](Literal l) {
    return l.positive() ? enc.true_var[l.index()] : enc.false_var[l.index()];
  };
  auto lit_false = [&](Literal l) {
    return l.positive() ? enc.false_var[l.index()] : enc.true_var[l.index()];
  };

  std::vector<Clause> g;
  auto add = [&](Clause c) {
    Clause dedup;
    for (Literal l : c)
      if (std::find(dedup.begin(), dedup.end(), l) == dedup.end())
        dedup.push_back(l);
    g.push_back(std::move(dedup));
  };

  for (std::size_t x = 0; x < n; ++x)
    add({neg(enc.true_var[x]), neg(enc.false_var[x])});

  std::vector<std::vector<std::size_t>> support_pos(n), support_neg(n);
  for (std::size_t a = 0; a < f.num_clauses(); ++a) {
    const Clause& c = f.clause(a);
    // Not every literal false.
    Clause not_all_false;
    for (Literal l : c) not_all_false.push_back(neg(lit_false(l)));
    add(not_all_false);
    // Not exactly one * with the rest false.
    for (std::size_t i = 0; i < c.size(); ++i) {
      Clause cl{pos(lit_true(c[i])), pos(lit_false(c[i]))};
      for (std::size_t j = 0; j < c.size(); ++j)
        if (j != i) cl.push_back(neg(lit_false(c[j])));
      add(cl);
    }
    // Support indicators, both directions.
    for (std::size_t i = 0; i < c.size(); ++i) {
      const std::size_t sv = enc.roles.size();
      enc.roles.push_back({CoverEncoding::Role::kSupport, c[i].index(), a});
      (c[i].positive() ? support_pos : support_neg)[c[i].index()].push_back(sv);
      add({neg(sv), pos(lit_true(c[i]))});
      Clause back{pos(sv), neg(lit_true(c[i]))};
      for (std::size_t j = 0; j < c.size(); ++j) {
        if (j == i) continue;
        add({neg(sv), pos(lit_false(c[j]))});
        back.push_back(neg(lit_false(c[j])));
      }
      add(back);
    }
  }
  // A decided variable needs a supporting clause of the matching sign.
  for (std::size_t x = 0; x < n; ++x) {
    Clause need_t{neg(enc.true_var[x])};
    for (std::size_t sv : support_pos[x]) need_t.push_back(pos(sv));
    add(need_t);
    Clause need_f{neg(enc.false_var[x])};
    for (std::size_t sv : support_neg[x]) need_f.push_back(pos(sv));
    add(need_f);
  }
  enc.g = Formula(enc.roles.size(), std::move(g));
  return enc;
}

CoverEnumeration enumerate_covers_sat(const Formula& f, std::size_t limit,
                                      std::uint64_t budget, SatEngine engine) {
  const CoverEncoding enc = encode_covers_as_cnf(f);
  std::vector<std::size_t> indicators;
  for (std::size_t x = 0; x < f.num_vars(); ++x) {
    indicators.push_back(enc.true_var[x]);
    indicators.push_back(enc.false_var[x]);
  }
  ModelList models = engine == SatEngine::kCdcl
                         ? enumerate_models_cdcl(enc.g, limit, budget, indicators)
                         : enumerate_models(enc.g, limit, budget);
  CoverEnumeration out;
  out.complete = models.complete;
  out.stats = models.stats;
  out.covers.reserve(models.models.size());
  for (const Assignment& m : models.models) {
    GeneralizedAssignment s = enc.decode(m);
    if (!is_cover(f, s))
      throw std::logic_error("cover encoding decoded a non-cover: " + s.str());
    out.covers.push_back(make_record(f, std::move(s)));
  }
  sort_records(out.covers);
  return out;
}

void write_covers(std::ostream& out, const std::vector<CoverRecord>& covers) {
  for (const CoverRecord& r : covers) {
    for (std::size_t i = 0; i < r.assignment.size(); ++i) {
      const Tri t = r.assignment[i];
      out << (t == Tri::kStar ? '*' : t == Tri::kOne ? '1' : '0') << ' ';
    }
    out << "| " << to_string(r.kind) << '\n';
  }
}

std::vector<std::pair<GeneralizedAssignment, CoverKind>> read_covers(
    std::istream& in) {
  std::vector<std::pair<GeneralizedAssignment, CoverKind>> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto bar = line.find('|');
    if (bar == std::string::npos)
      throw std::invalid_argument("cover line without '|': " + line);
    std::string kind = line.substr(bar + 1);
    kind.erase(0, kind.find_first_not_of(" \t"));
    kind.erase(kind.find_last_not_of(" \t\r") + 1);
    CoverKind k;
    if (kind == "TRUE") k = CoverKind::kTrue;
    else if (kind == "FALSE") k = CoverKind::kFalse;
    else if (kind == "TRIVIAL") k = CoverKind::kTrivial;
    else if (kind == "UNKNOWN") k = CoverKind::kUnknown;
    else throw std::invalid_argument("unknown cover kind '" + kind + "'");
    out.emplace_back(GeneralizedAssignment::Parse(line.substr(0, bar)), k);
  }
  return out;
}

void write_decode_map_csv(std::ostream& out, const CoverEncoding& enc) {
  out << "g_var,role,orig_var,clause\n";
  for (std::size_t v = 0; v < enc.roles.size(); ++v) {
    const auto& r = enc.roles[v];
    out << v + 1 << ',' << to_string(r.role) << ',' << r.orig_var + 1 << ',';
    if (r.role == CoverEncoding::Role::kSupport) out << r.clause + 1;
    out << '\n';
  }
}

}  // namespace survey
