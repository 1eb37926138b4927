#include "survey/factor_graph.hpp"

#include <numeric>

namespace survey {

FactorGraph::FactorGraph(const Formula& f) {
  const std::size_t n = f.num_vars();
  edge_var_.reserve(f.num_literals());
  edge_clause_.reserve(f.num_literals());
  edge_negated_.reserve(f.num_literals());
  clause_offsets_.reserve(f.num_clauses() + 1);
  std::vector<std::size_t> degree(n, 0);
  for (std::size_t a = 0; a < f.num_clauses(); ++a) {
    for (Literal l : f.clause(a)) {
      edge_var_.push_back(static_cast<std::uint32_t>(l.index()));
      edge_clause_.push_back(static_cast<std::uint32_t>(a));
      edge_negated_.push_back(l.positive() ? 0 : 1);
      ++degree[l.index()];
    }
    clause_offsets_.push_back(edge_var_.size());
  }
  var_offsets_.resize(n + 1, 0);
  for (std::size_t x = 0; x < n; ++x)
    var_offsets_[x + 1] = var_offsets_[x] + degree[x];
  var_edge_list_.resize(edge_var_.size());
  std::vector<std::size_t> fill(var_offsets_.begin(), var_offsets_.end() - 1);
  for (std::size_t e = 0; e < edge_var_.size(); ++e)
    var_edge_list_[fill[edge_var_[e]]++] = static_cast<std::uint32_t>(e);
}

std::vector<std::uint32_t> FactorGraph::same_sign_clauses(std::size_t e) const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t b : var_edges(edge_var_[e]))
    if (b != e && edge_negated_[b] == edge_negated_[e])
      out.push_back(edge_clause_[b]);
  return out;
}

std::vector<std::uint32_t> FactorGraph::opposite_sign_clauses(
    std::size_t e) const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t b : var_edges(edge_var_[e]))
    if (edge_negated_[b] != edge_negated_[e]) out.push_back(edge_clause_[b]);
  return out;
}

bool FactorGraph::is_forest() const {
  // Union-find over variable and clause nodes; any edge joining two nodes
  // already connected closes a cycle.
  const std::size_t nodes = num_vars() + num_clauses();
  std::vector<std::size_t> parent(nodes);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t e = 0; e < num_edges(); ++e) {
    const std::size_t u = find(edge_var_[e]);
    const std::size_t v = find(num_vars() + edge_clause_[e]);
    if (u == v) return false;
    parent[u] = v;
  }
  return true;
}

}  // namespace survey
