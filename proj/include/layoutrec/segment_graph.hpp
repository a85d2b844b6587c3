#pragma once

#include <optional>
#include <vector>

#include "layoutrec/cost_model.hpp"
#include "layoutrec/sequence.hpp"

namespace layoutrec {

/// Constant-size record of a segment's optimal tree: the root node's scalars
/// plus the subtree cost. Index and size arrays are re-derived from the
/// sequence when the tree is materialized, and strc children by re-running the
/// shortest path.
struct CompactSolution {
  NodeKind kind = NodeKind::con;
  Count count = 0;
  std::size_t block = 0;  // repeated prefix length for vec/idx/bucket roots
  Displacement stride = 0;
  Displacement substride = 0;
  Cost cost = 0;

  friend bool operator==(const CompactSolution&, const CompactSolution&) = default;
};

/// A vertex path v_first = vertices.front() ... vertices.back() = v_to.
struct GraphPath {
  Cost weight = 0;  // sum of edge weights
  std::vector<std::size_t> vertices;
};

/// Best full-span candidates rooted at an indexed node and at a strc node,
/// kept for denormalization.
struct FullSpanCandidates {
  std::optional<CompactSolution> best_indexed;
  std::optional<CompactSolution> best_strc;
};

/// DAG over positions v_0..v_n of a normal-form sequence. Edge (v_i, v_j)
/// stands for segment [i, j-1] and carries its CompactSolution; its weight is
/// 2*k_lookup plus the solution's cost. Edges only point forward, so vertex
/// order is a topological order.
///
/// The edge table holds n*n slots (at most (n+1)^2). Writes to distinct edges
/// may run concurrently as long as no reader touches the edges being written.
class SegmentGraph {
 public:
  SegmentGraph(DisplacementSequence normal_form, CostModel model, bool extended);

  /// Number of displacements; vertices are 0..size().
  std::size_t size() const noexcept { return n_; }
  const DisplacementSequence& sequence() const noexcept { return seq_; }
  const CostModel& model() const noexcept { return model_; }
  bool extended() const noexcept { return extended_; }
  SegmentView segment(std::size_t first, std::size_t last) const { return SegmentView(seq_, first, last); }

  bool has_edge(std::size_t from, std::size_t to) const noexcept;
  /// ContractViolation when the edge has not been solved.
  const CompactSolution& edge(std::size_t from, std::size_t to) const;
  Cost weight(std::size_t from, std::size_t to) const;
  void set_edge(std::size_t from, std::size_t to, const CompactSolution& solution);

  /// Number of solved edges.
  std::size_t entry_count() const noexcept;
  /// Number of allocated table slots.
  std::size_t table_capacity() const noexcept { return weights_.size(); }

  /// Shortest path from v_from to v_to with at least two edges, i.e. never the
  /// direct edge. Relaxes vertices in order, so it costs O(l^2) for l = to - from.
  /// Ties keep the earliest predecessor. Empty when to - from < 2.
  /// ContractViolation if a needed edge is missing.
  std::optional<GraphPath> shortest_strc_path(std::size_t from, std::size_t to) const;

  FullSpanCandidates& full_span() noexcept { return full_span_; }
  const FullSpanCandidates& full_span() const noexcept { return full_span_; }

 private:
  std::size_t slot(std::size_t from, std::size_t to) const;

  DisplacementSequence seq_;
  CostModel model_;
  bool extended_;
  std::size_t n_;
  std::vector<CompactSolution> solutions_;
  std::vector<Cost> weights_;  // -1 marks an unsolved edge
  FullSpanCandidates full_span_;
};

}  // namespace layoutrec
