#pragma once

// Exhaustive reference implementations used as test oracles. They share no
// code with the library beyond the Formula container, so agreement between
// the two is meaningful.

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "survey/formula.hpp"

namespace oracle {

using survey::Assignment;
using survey::Formula;
using survey::Literal;

inline bool satisfies(const Formula& f, const Assignment& a) {
  for (const auto& c : f.clauses()) {
    bool sat = false;
    for (Literal l : c)
      if ((a[l.var() - 1] != 0) == l.positive()) sat = true;
    if (!sat) return false;
  }
  return true;
}

/// Every model, in increasing binary order with variable 1 most significant.
inline std::vector<Assignment> all_models(const Formula& f) {
  const std::size_t n = f.num_vars();
  std::vector<Assignment> out;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    Assignment a(n);
    for (std::size_t i = 0; i < n; ++i) a[i] = (bits >> (n - 1 - i)) & 1;
    if (satisfies(f, a)) out.push_back(std::move(a));
  }
  return out;
}

/// Covers as strings over "01*", by scanning all 3^n strings and checking
/// the definition literally.
inline std::set<std::string> all_covers(const Formula& f) {
  const std::size_t n = f.num_vars();
  std::set<std::string> out;
  std::string s(n, '0');
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= 3;
  auto lit = [&](Literal l) -> char {  // 'T', 'F' or '*'
    const char v = s[l.var() - 1];
    if (v == '*') return '*';
    return ((v == '1') == l.positive()) ? 'T' : 'F';
  };
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (std::size_t i = n; i-- > 0;) {
      s[i] = "01*"[c % 3];
      c /= 3;
    }
    bool ok = true;
    for (const auto& cl : f.clauses()) {
      int t = 0, st = 0;
      for (Literal l : cl) {
        const char x = lit(l);
        t += x == 'T';
        st += x == '*';
      }
      if (t == 0 && st < 2) ok = false;
    }
    for (std::size_t x = 0; ok && x < n; ++x) {
      if (s[x] == '*') continue;
      bool supported = false;
      for (const auto& cl : f.clauses()) {
        bool mine = false, others_false = true;
        for (Literal l : cl) {
          if (l.var() - 1 == x)
            mine = lit(l) == 'T';
          else if (lit(l) != 'F')
            others_false = false;
        }
        if (mine && others_false) supported = true;
      }
      ok = supported;
    }
    if (ok) out.insert(s);
  }
  return out;
}

/// Fraction of models with each variable set to 1.
inline std::vector<double> positive_fraction(const Formula& f) {
  const auto models = all_models(f);
  std::vector<double> p(f.num_vars(), 0.0);
  for (const auto& m : models)
    for (std::size_t i = 0; i < m.size(); ++i) p[i] += m[i];
  for (double& v : p) v /= static_cast<double>(models.size());
  return p;
}

}  // namespace oracle
