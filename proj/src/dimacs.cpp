#include "survey/dimacs.hpp"

#include <cctype>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

namespace survey {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])))
      ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

bool to_int(std::string_view tok, long long& out) {
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && ptr == tok.data() + tok.size();
}

}  // namespace

DimacsResult parse_dimacs(std::istream& in) {
  DimacsResult result;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  long long declared_vars = 0;
  long long declared_clauses = 0;
  std::size_t open_clause_line = 0;
  std::vector<Clause> clauses;
  Clause current;

  auto close_clause = [&](std::size_t at) {
    Clause deduped;
    bool tautology = false;
    for (Literal l : current) {
      bool repeat = false;
      for (Literal d : deduped) {
        if (d == l) repeat = true;
        if (d == ~l) tautology = true;
      }
      if (repeat) {
        result.warnings.push_back("line " + std::to_string(at) +
                                  ": repeated literal " +
                                  std::to_string(l.dimacs()) + " dropped");
        continue;
      }
      deduped.push_back(l);
    }
    if (deduped.empty())
      throw ParseError(at, "empty clause");
    if (tautology)
      result.warnings.push_back("line " + std::to_string(at) +
                                ": tautological clause kept");
    clauses.push_back(std::move(deduped));
    current.clear();
  };

  while (std::getline(in, line)) {
    ++lineno;
    const auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    if (tokens[0] == "c" || tokens[0].front() == 'c') continue;
    if (tokens[0] == "%") break;  // SATLIB trailer
    if (tokens[0] == "p") {
      if (have_header) throw ParseError(lineno, "duplicate header");
      if (tokens.size() != 4 || tokens[1] != "cnf" ||
          !to_int(tokens[2], declared_vars) ||
          !to_int(tokens[3], declared_clauses) || declared_vars < 0 ||
          declared_clauses < 0)
        throw ParseError(lineno, "malformed header, expected 'p cnf N M'");
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError(lineno, "clause before 'p cnf' header");
    for (std::string_view tok : tokens) {
      long long v = 0;
      if (!to_int(tok, v))
        throw ParseError(lineno, "bad literal '" + std::string(tok) + "'");
      if (v == 0) {
        close_clause(lineno);
        continue;
      }
      if (v > declared_vars || -v > declared_vars)
        throw ParseError(lineno, "literal " + std::to_string(v) +
                                     " exceeds declared " +
                                     std::to_string(declared_vars) +
                                     " variables");
      if (current.empty()) open_clause_line = lineno;
      current.push_back(Literal::FromDimacs(static_cast<std::int32_t>(v)));
    }
  }
  if (!have_header) throw ParseError(lineno, "missing 'p cnf' header");
  if (!current.empty())
    throw ParseError(open_clause_line, "unterminated clause");
  if (static_cast<long long>(clauses.size()) != declared_clauses)
    result.warnings.push_back("header declares " +
                              std::to_string(declared_clauses) +
                              " clauses, body has " +
                              std::to_string(clauses.size()));
  result.formula =
      Formula(static_cast<std::size_t>(declared_vars), std::move(clauses));
  return result;
}

DimacsResult parse_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_dimacs(in);
}

void write_dimacs(std::ostream& out, const Formula& f) {
  out << "p cnf " << f.num_vars() << ' ' << f.num_clauses() << '\n';
  for (const Clause& c : f.clauses()) {
    for (Literal l : c) out << l.dimacs() << ' ';
    out << "0\n";
  }
}

std::string render_dimacs(const Formula& f) {
  std::ostringstream out;
  write_dimacs(out, f);
  return out.str();
}

Assignment parse_model(std::string_view text, std::size_t num_vars) {
  Assignment a(num_vars, 0);
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++lineno;
    for (std::string_view tok : split_ws(text.substr(pos, end - pos))) {
      if (tok == "v" || tok == "s" || tok == "SAT" || tok == "SATISFIABLE")
        continue;
      long long v = 0;
      if (!to_int(tok, v))
        throw ParseError(lineno, "bad literal '" + std::string(tok) + "'");
      if (v == 0) continue;
      const auto var = static_cast<std::size_t>(v < 0 ? -v : v);
      if (var > num_vars)
        throw ParseError(lineno, "literal " + std::to_string(v) +
                                     " exceeds " + std::to_string(num_vars) +
                                     " variables");
      a[var - 1] = v > 0 ? 1 : 0;
    }
    pos = end + 1;
  }
  return a;
}

void write_renumbering_csv(std::ostream& out, const Simplified& s) {
  out << "old_index,new_index\n";
  for (std::size_t n = 0; n < s.new_to_old.size(); ++n)
    out << s.new_to_old[n] + 1 << ',' << n + 1 << '\n';
}

}  // namespace survey
