#include "survey/propagation_kernels.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "survey/message_algebra.hpp"

namespace survey::kernels {

namespace {

using algebra::survey_ratio;

/// P(x falsifies a) for plain BP from products over C_a^s(x) and C_a^u(x):
/// A = prod_s m * prod_u (1 - m), B = prod_s (1 - m) * prod_u m.
inline double falsify_prob(double a, double b) {
  const double total = a + b;
  return total > 0.0 ? a / total : -1.0;
}

inline double damp(double computed, double old, double damping) {
  return damping == 0.0 ? computed : (1.0 - damping) * computed + damping * old;
}

/// out[i] = product of f[j] for j != i, without division.
void exclusive_products(std::span<const double> f, std::span<double> out) {
  double acc = 1.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    out[i] = acc;
    acc *= f[i];
  }
  acc = 1.0;
  for (std::size_t i = f.size(); i-- > 0;) {
    out[i] *= acc;
    acc *= f[i];
  }
}

/// Per-thread buffers for one variable's edges split by sign.
struct VarScratch {
  std::vector<std::uint32_t> edges[2];
  std::vector<double> f[2], g[2], ef[2], eg[2];

  void load(const FactorGraph& g_, std::size_t x) {
    for (int s = 0; s < 2; ++s) edges[s].clear();
    for (std::uint32_t e : g_.var_edges(x)) edges[g_.edge_negated(e) ? 1 : 0].push_back(e);
    for (int s = 0; s < 2; ++s) {
      const std::size_t k = edges[s].size();
      f[s].resize(k);
      g[s].resize(k);
      ef[s].resize(k);
      eg[s].resize(k);
    }
  }
};

}  // namespace

SweepResult sp_sweep_reference(const FactorGraph& g, std::span<const double> eta,
                               std::span<double> next, double damping) {
  SweepResult r;
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const std::optional<double> computed = algebra::sp_edge<double>(g, eta, e);
    if (!computed) {
      r.contradiction = true;
      return r;
    }
    next[e] = damp(*computed, eta[e], damping);
    r.residual = std::max(r.residual, std::abs(next[e] - eta[e]));
  }
  return r;
}

SweepResult sp_sweep_parallel(const FactorGraph& g, std::span<const double> eta,
                              std::span<double> next, double damping) {
  const auto n = static_cast<std::ptrdiff_t>(g.num_vars());
  const auto m = static_cast<std::ptrdiff_t>(g.num_clauses());
  // ratio[e]: var->clause factor Pi^u / (Pi^u + Pi^s + Pi^0) on edge e.
  std::vector<double> ratio(g.num_edges());
  bool contradiction = false;
  double residual = 0.0;
#pragma omp parallel
  {
    VarScratch sc;
#pragma omp for schedule(static) reduction(|| : contradiction)
    for (std::ptrdiff_t x = 0; x < n; ++x) {
      sc.load(g, static_cast<std::size_t>(x));
      double full[2];
      for (int s = 0; s < 2; ++s) {
        full[s] = 1.0;
        for (std::size_t i = 0; i < sc.edges[s].size(); ++i) {
          sc.f[s][i] = 1.0 - eta[sc.edges[s][i]];
          full[s] *= sc.f[s][i];
        }
        exclusive_products(sc.f[s], sc.ef[s]);
      }
      for (int s = 0; s < 2; ++s) {
        for (std::size_t i = 0; i < sc.edges[s].size(); ++i) {
          const double q = survey_ratio(sc.ef[s][i], full[1 - s]);
          if (q < 0.0) contradiction = true;
          ratio[sc.edges[s][i]] = q;
        }
      }
    }
#pragma omp for schedule(static) reduction(max : residual)
    for (std::ptrdiff_t a = 0; a < m; ++a) {
      const auto [begin, end] = g.clause_edges(static_cast<std::size_t>(a));
      for (std::size_t e = begin; e < end; ++e) {
        double product = 1.0;
        for (std::size_t ey = begin; ey < end; ++ey)
          if (ey != e) product *= ratio[ey];
        next[e] = damp(product, eta[e], damping);
        residual = std::max(residual, std::abs(next[e] - eta[e]));
      }
    }
  }
  return {contradiction, contradiction ? 0.0 : residual};
}

SweepResult bp_sweep_reference(const FactorGraph& g,
                               std::span<const double> clause_to_var,
                               std::span<double> var_to_clause,
                               std::span<double> next, double damping) {
  SweepResult r;
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    double a = 1.0, b = 1.0;
    for (std::uint32_t o : g.var_edges(g.edge_var(e))) {
      if (o == e) continue;
      const double mo = clause_to_var[o];
      if (g.edge_negated(o) == g.edge_negated(e)) {
        a *= mo;
        b *= 1.0 - mo;
      } else {
        a *= 1.0 - mo;
        b *= mo;
      }
    }
    const double p = falsify_prob(a, b);
    if (p < 0.0) {
      r.contradiction = true;
      return r;
    }
    var_to_clause[e] = p;
  }
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const auto [begin, end] = g.clause_edges(g.edge_clause(e));
    double product = 1.0;
    for (std::size_t ey = begin; ey < end; ++ey)
      if (ey != e) product *= var_to_clause[ey];
    next[e] = damp((1.0 - product) / (2.0 - product), clause_to_var[e], damping);
    r.residual = std::max(r.residual, std::abs(next[e] - clause_to_var[e]));
  }
  return r;
}

SweepResult bp_sweep_parallel(const FactorGraph& g,
                              std::span<const double> clause_to_var,
                              std::span<double> var_to_clause,
                              std::span<double> next, double damping) {
  const auto n = static_cast<std::ptrdiff_t>(g.num_vars());
  const auto m = static_cast<std::ptrdiff_t>(g.num_clauses());
  bool contradiction = false;
  double residual = 0.0;
#pragma omp parallel
  {
    VarScratch sc;
#pragma omp for schedule(static) reduction(|| : contradiction)
    for (std::ptrdiff_t x = 0; x < n; ++x) {
      sc.load(g, static_cast<std::size_t>(x));
      double full_m[2], full_c[2];
      for (int s = 0; s < 2; ++s) {
        full_m[s] = full_c[s] = 1.0;
        for (std::size_t i = 0; i < sc.edges[s].size(); ++i) {
          sc.f[s][i] = clause_to_var[sc.edges[s][i]];
          sc.g[s][i] = 1.0 - sc.f[s][i];
          full_m[s] *= sc.f[s][i];
          full_c[s] *= sc.g[s][i];
        }
        exclusive_products(sc.f[s], sc.ef[s]);
        exclusive_products(sc.g[s], sc.eg[s]);
      }
      for (int s = 0; s < 2; ++s) {
        for (std::size_t i = 0; i < sc.edges[s].size(); ++i) {
          const double p = falsify_prob(sc.ef[s][i] * full_c[1 - s],
                                        sc.eg[s][i] * full_m[1 - s]);
          if (p < 0.0) contradiction = true;
          var_to_clause[sc.edges[s][i]] = p;
        }
      }
    }
#pragma omp for schedule(static) reduction(max : residual)
    for (std::ptrdiff_t a = 0; a < m; ++a) {
      const auto [begin, end] = g.clause_edges(static_cast<std::size_t>(a));
      for (std::size_t e = begin; e < end; ++e) {
        double product = 1.0;
        for (std::size_t ey = begin; ey < end; ++ey)
          if (ey != e) product *= var_to_clause[ey];
        next[e] = damp((1.0 - product) / (2.0 - product), clause_to_var[e], damping);
        residual = std::max(residual, std::abs(next[e] - clause_to_var[e]));
      }
    }
  }
  return {contradiction, contradiction ? 0.0 : residual};
}

}  // namespace survey::kernels
