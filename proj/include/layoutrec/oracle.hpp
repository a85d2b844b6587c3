#pragma once

#include <cstddef>
#include <optional>

#include "layoutrec/cost_model.hpp"
#include "layoutrec/sequence.hpp"
#include "layoutrec/type_node.hpp"

namespace layoutrec {

/// Bounds for the exhaustive search.
struct OracleConfig {
  std::size_t max_n = 6;
  /// An optimum above this bound is reported as absent. Defaults to the
  /// trivial cost, which is always attainable.
  std::optional<Cost> max_cost;
  bool extended = false;
};

struct OracleResult {
  TypeNode tree;
  Cost cost;
};

/// Exhaustive search over nice trees: every constructor choice at every
/// segment, every composition of a segment into strc parts and, when
/// extended, every grouping of repeated blocks into buckets. Nice trees are
/// enough because any basic tree can be rewritten into one of equal cost.
/// Exponential in n; throws SizeLimitError when n > cfg.max_n. Empty only if
/// cfg.max_cost is below the optimum.
std::optional<OracleResult> brute_force_optimal(const DisplacementSequence& seq, const CostModel& model,
                                                const OracleConfig& cfg = {});

/// Optimal basic-tree cost with no niceness restriction: every child may sit
/// at any first displacement in [-window, window]. Much slower; used to check
/// that restricting the search to nice trees loses nothing. Throws
/// SizeLimitError when n > max_n.
Cost unrestricted_optimal_cost(const DisplacementSequence& seq, const CostModel& model, Displacement window,
                               std::size_t max_n = 4);

enum class Verdict { optimal, suboptimal, not_representing };

const char* to_string(Verdict verdict) noexcept;

struct VerifyResult {
  Verdict verdict;
  Cost tree_cost;
  std::optional<Cost> optimal_cost;  // absent when the tree does not represent the sequence
  std::optional<TypeNode> witness;   // a cheaper tree when suboptimal
};

/// Checks that `tree` flattens to `seq` and compares its cost with the
/// oracle's. Trees with bucket nodes are compared against the extended search.
/// Throws SizeLimitError when the sequence is beyond cfg.max_n.
VerifyResult verify(const TypeNode& tree, const DisplacementSequence& seq, const CostModel& model,
                    const OracleConfig& cfg = {});

}  // namespace layoutrec
