#pragma once

#include <span>

#include "survey/factor_graph.hpp"

// Sweep kernels behind the propagation engines. Each has a reference
// version, which evaluates the message equations directly per edge, and an
// OpenMP version, which shares per-variable products across the variable's
// edges. The two agree to rounding; tests and the benchmark compare them.
namespace survey::kernels {

struct SweepResult {
  bool contradiction = false;
  /// Max over edges of |next - current|.
  double residual = 0.0;
};

/// SP surveys: next[e] for every edge from eta.
SweepResult sp_sweep_reference(const FactorGraph& g, std::span<const double> eta,
                               std::span<double> next, double damping);
SweepResult sp_sweep_parallel(const FactorGraph& g, std::span<const double> eta,
                              std::span<double> next, double damping);

/// Plain BP: fills var_to_clause from clause_to_var, then next clause_to_var.
SweepResult bp_sweep_reference(const FactorGraph& g,
                               std::span<const double> clause_to_var,
                               std::span<double> var_to_clause,
                               std::span<double> next, double damping);
SweepResult bp_sweep_parallel(const FactorGraph& g,
                              std::span<const double> clause_to_var,
                              std::span<double> var_to_clause,
                              std::span<double> next, double damping);

}  // namespace survey::kernels
