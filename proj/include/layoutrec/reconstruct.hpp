#pragma once

#include <chrono>
#include <optional>

#include "layoutrec/cost_model.hpp"
#include "layoutrec/segment_graph.hpp"
#include "layoutrec/sequence.hpp"
#include "layoutrec/type_node.hpp"

namespace layoutrec {

struct ReconstructOptions {
  CostModel model{};
  /// Also consider vecbuc/idxbuc roots over repeated prefixes.
  bool extended = false;
  /// Inputs longer than this are rejected with SizeLimitError.
  std::size_t max_n = 1024;
  /// Worker threads for solving segments of equal length; results do not
  /// depend on it.
  unsigned threads = 1;
};

struct ReconstructionReport {
  std::size_t n = 0;
  TypeNode tree;
  Cost cost = 0;
  Cost trivial_cost = 0;
  /// trivial_cost / cost (infinite when cost is 0).
  double compression_ratio = 0.0;
  std::chrono::duration<double> wall_time{};
  std::size_t table_entries = 0;
};

/// Least-cost strc-rooted tree for segment [first, last] of a graph that holds
/// solutions for all shorter segments. Empty for single-element segments.
std::optional<TypeNode> strc_candidate(const SegmentGraph& graph, std::size_t first, std::size_t last);

/// Fills the segment graph bottom-up by segment length. Every edge ends up with
/// the least-cost tree for its normalized segment (over basic trees, or over
/// extended candidates if options.extended). Throws ContractViolation unless
/// seq[0] == 0.
SegmentGraph solve_normal_form(const DisplacementSequence& seq, const ReconstructOptions& options);

/// Expands the compact solution of segment [first, last] into a full tree.
TypeNode materialize(const SegmentGraph& graph, std::size_t first, std::size_t last);
TypeNode materialize(const SegmentGraph& graph);

/// Optimal tree for `original` given the solved graph of its normal form. If
/// the normal-form optimum has an indexed node on its root's unary chain the
/// shift goes there; otherwise the cheapest of a count-1 wrapper and every tree
/// that ends its unary chain in an indexed node is shifted instead.
TypeNode denormalize(const DisplacementSequence& original, const SegmentGraph& graph);

/// Normalize, solve, materialize, denormalize. flatten(report.tree) == seq.
/// Throws SizeLimitError above options.max_n and OverflowError when the
/// spread of seq does not fit in an int64.
ReconstructionReport reconstruct(const DisplacementSequence& seq, const ReconstructOptions& options = {});

}  // namespace layoutrec
