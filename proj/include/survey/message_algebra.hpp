#pragma once

// Per-edge message equations written once over the scalar type. The double
// instantiations are the production reference code; the equivalence check
// between SP and the request/warning iteration reruns the very same
// templates in quad precision.

#include <cstddef>
#include <optional>
#include <vector>

#include "survey/factor_graph.hpp"

namespace survey::algebra {

/// Pi^u / (Pi^u + Pi^s + Pi^0) for message x->a from the products of
/// (1 - eta) over C_a^s(x) and C_a^u(x). Negative on a zero normalizer.
template <class T>
T survey_ratio(T same, T opposite) {
  const T one = 1;
  const T pu = same * (one - opposite);
  const T ps = opposite * (one - same);
  const T p0 = same * opposite;
  const T total = pu + ps + p0;
  return total > T(0) ? pu / total : T(-1);
}

/// Undamped SP survey on edge e from the current surveys, or nullopt when a
/// neighbouring variable has a zero normalizer.
template <class T, class Surveys>
std::optional<T> sp_edge(const FactorGraph& g, const Surveys& eta, std::size_t e) {
  const auto [begin, end] = g.clause_edges(g.edge_clause(e));
  T product = 1;
  for (std::size_t ey = begin; ey < end; ++ey) {
    if (ey == e) continue;
    T same = 1, opposite = 1;
    for (std::uint32_t b : g.var_edges(g.edge_var(ey))) {
      if (b == ey) continue;
      if (g.edge_negated(b) == g.edge_negated(ey))
        same *= T(1) - eta[b];
      else
        opposite *= T(1) - eta[b];
    }
    const T ratio = survey_ratio(same, opposite);
    if (ratio < T(0)) return std::nullopt;
    product *= ratio;
  }
  return product;
}

/// Scales a request/idle/warning triple to sum 1; false if it sums to zero.
template <class M>
bool normalize(M& m) {
  const auto total = m.request + m.idle + m.warning;
  if (!(total > decltype(total)(0))) return false;
  m.request /= total;
  m.idle /= total;
  m.warning /= total;
  return true;
}

/// Messages out of the variable constraint for every edge (a, x), given the
/// clause-to-var messages lambda_{b->x}.
template <class M>
bool variable_constraint_sweep(const FactorGraph& g, const std::vector<M>& in,
                               std::vector<M>& out) {
  using T = decltype(M{}.request);
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    // Products over C_a^s(x) and C_a^u(x).
    T s_open = 1, s_idle = 1, s_warn = 1;
    T u_open = 1, u_idle = 1, u_warn = 1;
    for (std::uint32_t b : g.var_edges(g.edge_var(e))) {
      if (b == e) continue;
      const M& l = in[b];
      if (g.edge_negated(b) == g.edge_negated(e)) {
        s_open *= l.idle + l.request;
        s_idle *= l.idle;
        s_warn *= l.warning;
      } else {
        u_open *= l.idle + l.request;
        u_idle *= l.idle;
        u_warn *= l.warning;
      }
    }
    M& q = out[e];
    // (1,0): x satisfies a; same-sign clauses may request, opposite ones
    // are warned.
    q.request = s_open * u_warn;
    // (0,1): x warns a, so some opposite-sign clause requests x.
    q.warning = s_warn * (u_open - u_idle);
    // (0,0): either a same-sign clause requests x, or nobody does.
    q.idle = (s_open - s_idle) * u_warn + s_idle * u_idle;
    if (!normalize(q)) return false;
  }
  return true;
}

/// Messages out of the clause constraint for every edge (a, x), given the
/// var-to-clause messages lambda_{y->a}.
template <class M>
bool clause_constraint_sweep(const FactorGraph& g, const std::vector<M>& in,
                             std::vector<M>& out) {
  using T = decltype(M{}.request);
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const auto [begin, end] = g.clause_edges(g.edge_clause(e));
    T all_warn = 1, idle_or_warn = 1;
    for (std::size_t y = begin; y < end; ++y) {
      if (y == e) continue;
      all_warn *= in[y].warning;
      idle_or_warn *= in[y].idle + in[y].warning;
    }
    // Requests to some other y whose companions all warn, minus the
    // configurations where all but y warn and y gets no request.
    T correction = 0;
    for (std::size_t y = begin; y < end; ++y) {
      if (y == e) continue;
      T others = 1;
      for (std::size_t z = begin; z < end; ++z)
        if (z != e && z != y) others *= in[z].warning;
      correction += (in[y].request - in[y].idle) * others;
    }
    M& r = out[e];
    r.request = all_warn;
    r.idle = idle_or_warn - all_warn;
    r.warning = idle_or_warn - all_warn + correction;
    if (!normalize(r)) return false;
  }
  return true;
}

/// request / (request + idle), zero when both vanish.
template <class M>
auto rescaled_request(const M& m) {
  const auto denom = m.request + m.idle;
  return denom > decltype(denom)(0) ? m.request / denom : decltype(denom)(0);
}

}  // namespace survey::algebra
