#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "survey/formula.hpp"
#include "survey/solver.hpp"

namespace survey {

enum class Tri : std::uint8_t { kZero = 0, kOne = 1, kStar = 2 };

/// A string over {0,1,*}, zero-based.
class GeneralizedAssignment {
 public:
  GeneralizedAssignment() = default;
  explicit GeneralizedAssignment(std::size_t n, Tri fill = Tri::kStar)
      : values_(n, fill) {}
  explicit GeneralizedAssignment(const Assignment& a);
  /// Parses "10*" or "1 0 *"; whitespace is ignored.
  static GeneralizedAssignment Parse(std::string_view text);
  static GeneralizedAssignment Trivial(std::size_t n) {
    return GeneralizedAssignment(n, Tri::kStar);
  }

  std::size_t size() const { return values_.size(); }
  Tri operator[](std::size_t i) const { return values_[i]; }
  Tri& operator[](std::size_t i) { return values_[i]; }
  std::size_t star_count() const;
  bool is_trivial() const { return star_count() == size(); }

  /// Compact form, e.g. "1*0".
  std::string str() const;

  const std::vector<Tri>& values() const { return values_; }
  friend auto operator<=>(const GeneralizedAssignment&,
                          const GeneralizedAssignment&) = default;

 private:
  std::vector<Tri> values_;
};

/// Literal status under a generalized assignment.
enum class LitState { kTrue, kFalse, kStar };
LitState literal_state(Literal l, const GeneralizedAssignment& s);

/// x (zero-based) is supported iff some clause has x's literal true and every
/// other literal false. Throws std::invalid_argument when s[x] is *.
bool is_supported(const Formula& f, const GeneralizedAssignment& s,
                  std::size_t x);

/// Every clause has a true literal or at least two * literals.
bool satisfies_clause_condition(const Formula& f, const GeneralizedAssignment& s);

/// Cover test: the clause condition plus every 0/1 variable supported.
bool is_cover(const Formula& f, const GeneralizedAssignment& s);

enum class PeelOrder { kLowestIndex, kRandom, kQueue };

const char* to_string(PeelOrder p);
PeelOrder parse_peel_order(std::string_view name);

struct PeelStep {
  std::size_t stars;
  std::size_t unsupported;
};

struct PeelResult {
  GeneralizedAssignment cover;
  /// (stars, unsupported) before the first step and after every step.
  std::vector<PeelStep> trace;
};

/// *-propagation: repeatedly turns one unsupported 0/1 variable into * until
/// none is left. `seed` is used only by PeelOrder::kRandom. Throws
/// std::invalid_argument if `start` violates the clause condition.
PeelResult star_propagate(const Formula& f, const GeneralizedAssignment& start,
                          PeelOrder order = PeelOrder::kLowestIndex,
                          std::uint64_t seed = 0, bool record_trace = true);

enum class CoverKind { kTrue, kFalse, kTrivial, kUnknown };

const char* to_string(CoverKind k);

struct Classification {
  CoverKind kind = CoverKind::kUnknown;
  std::optional<Assignment> witness;
};

/// kTrue iff the formula restricted to the cover's 0/1 values is satisfiable,
/// with the extending solution as witness; kUnknown if the DPLL budget runs
/// out. Never returns kTrivial.
Classification classify_cover(const Formula& f, const GeneralizedAssignment& s,
                              std::uint64_t decision_budget = kUnlimited);

struct CoverRecord {
  GeneralizedAssignment assignment;
  /// kTrivial iff every variable is *.
  CoverKind kind = CoverKind::kUnknown;
  std::size_t star_count = 0;
  std::optional<Assignment> witness;
};

CoverRecord make_record(const Formula& f, GeneralizedAssignment s,
                        std::uint64_t decision_budget = kUnlimited);

inline constexpr std::size_t kBruteForceCap = 16;

/// Exhaustive scan of {0,1,*}^N with subtree pruning on completed clauses.
/// Throws std::invalid_argument when N exceeds `cap`. Sorted output.
std::vector<CoverRecord> enumerate_covers_bruteforce(
    const Formula& f, std::size_t cap = kBruteForceCap);

/// CNF G whose models are in bijection with the covers of F.
struct CoverEncoding {
  enum class Role : std::uint8_t { kTrue, kFalse, kSupport };
  struct VarRole {
    Role role;
    std::size_t orig_var;  // zero-based
    std::size_t clause;    // meaningful for kSupport only
  };

  Formula g;
  std::vector<VarRole> roles;
  /// G variable (zero-based) of t_x and f_x for each original x.
  std::vector<std::size_t> true_var;
  std::vector<std::size_t> false_var;

  GeneralizedAssignment decode(const Assignment& g_model) const;
  /// Inverse of decode on covers: fills indicators from the definitions.
  Assignment encode(const Formula& f, const GeneralizedAssignment& cover) const;
};

const char* to_string(CoverEncoding::Role r);

/// Indicators t_x ("x=1") and f_x ("x=0") per variable and s_{a,x} per
/// occurrence, with s_{a,x} <-> (x's literal true and the rest of a false).
CoverEncoding encode_covers_as_cnf(const Formula& f);

struct CoverEnumeration {
  std::vector<CoverRecord> covers;
  /// False when the model limit or the decision budget stopped the search.
  bool complete = false;
  SolveStats stats;
};

enum class SatEngine { kCdcl, kDpll };

/// Covers via encoding + model enumeration + decode + classification.
/// `budget` counts conflicts for kCdcl and decisions for kDpll. The CDCL
/// engine blocks each model on the t/f indicators only, which determine the
/// support indicators. Sorted output.
CoverEnumeration enumerate_covers_sat(
    const Formula& f, std::size_t limit = std::numeric_limits<std::size_t>::max(),
    std::uint64_t budget = kUnlimited, SatEngine engine = SatEngine::kCdcl);

/// "1 * 0 | TRUE" lines.
void write_covers(std::ostream& out, const std::vector<CoverRecord>& covers);
std::vector<std::pair<GeneralizedAssignment, CoverKind>> read_covers(
    std::istream& in);

/// g_var,role,orig_var,clause (1-based; clause empty for t/f rows).
void write_decode_map_csv(std::ostream& out, const CoverEncoding& enc);

}  // namespace survey
