#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "survey/formula.hpp"

namespace survey {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct DimacsResult {
  Formula formula;
  std::vector<std::string> warnings;
};

/// Reads DIMACS CNF. The header's clause count is advisory: a mismatch with
/// the body produces a warning and the body wins. Repeated literals inside a
/// clause are dropped with a warning; tautologies are kept with a warning.
DimacsResult parse_dimacs(std::istream& in);
DimacsResult parse_dimacs(std::string_view text);

void write_dimacs(std::ostream& out, const Formula& f);
std::string render_dimacs(const Formula& f);

/// Reads whitespace-separated signed literals (an optional `v` prefix per
/// line and a trailing 0 are accepted). Unmentioned variables default to 0.
Assignment parse_model(std::string_view text, std::size_t num_vars);

/// Two-column CSV (old_index,new_index), 1-based, for a simplify renumbering.
void write_renumbering_csv(std::ostream& out, const Simplified& s);

}  // namespace survey
