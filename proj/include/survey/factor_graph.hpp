#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "survey/formula.hpp"

namespace survey {

/// Bipartite clause/variable adjacency with dense edge ids.
///
/// Edge e is the e-th literal of the formula in clause order, so the edges of
/// clause a are the contiguous range clause_edges(a). Each variable lists its
/// edges in clause order. Both message directions of an edge share its id.
class FactorGraph {
 public:
  FactorGraph() = default;
  explicit FactorGraph(const Formula& f);

  std::size_t num_vars() const { return var_offsets_.size() - 1; }
  std::size_t num_clauses() const { return clause_offsets_.size() - 1; }
  std::size_t num_edges() const { return edge_var_.size(); }

  std::uint32_t edge_var(std::size_t e) const { return edge_var_[e]; }
  std::uint32_t edge_clause(std::size_t e) const { return edge_clause_[e]; }
  /// True when the variable occurs negated on this edge.
  bool edge_negated(std::size_t e) const { return edge_negated_[e] != 0; }

  /// Edge ids of V(a), in literal order.
  std::pair<std::size_t, std::size_t> clause_edges(std::size_t a) const {
    return {clause_offsets_[a], clause_offsets_[a + 1]};
  }
  std::size_t clause_size(std::size_t a) const {
    return clause_offsets_[a + 1] - clause_offsets_[a];
  }
  /// Edge ids of C(x), in clause order. `x` is zero-based.
  std::span<const std::uint32_t> var_edges(std::size_t x) const {
    return {var_edge_list_.data() + var_offsets_[x],
            var_offsets_[x + 1] - var_offsets_[x]};
  }

  /// C_a^s(x): clauses other than a where x has the sign it has on `e`.
  std::vector<std::uint32_t> same_sign_clauses(std::size_t e) const;
  /// C_a^u(x): clauses where x has the opposite sign.
  std::vector<std::uint32_t> opposite_sign_clauses(std::size_t e) const;

  bool is_forest() const;

 private:
  std::vector<std::uint32_t> edge_var_;
  std::vector<std::uint32_t> edge_clause_;
  std::vector<std::uint8_t> edge_negated_;
  std::vector<std::size_t> clause_offsets_{0};
  std::vector<std::size_t> var_offsets_{0};
  std::vector<std::uint32_t> var_edge_list_;
};

}  // namespace survey
