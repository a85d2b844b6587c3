#pragma once

#include <array>
#include <memory>
#include <span>
#include <vector>

#include "layoutrec/cost_model.hpp"
#include "layoutrec/node_kind.hpp"
#include "layoutrec/sequence.hpp"

namespace layoutrec {

/// Model-independent summary of a subtree's cost: how many nodes of each kind
/// it holds and how many index/type words those nodes store. Evaluating it
/// against a CostModel is O(1).
struct CostProfile {
  std::array<Count, kNodeKindCount> nodes{};
  Count lookup_words = 0;

  Cost evaluate(const CostModel& model) const;
  CostProfile& operator+=(const CostProfile& other);

  friend bool operator==(const CostProfile&, const CostProfile&) = default;
};

namespace detail {
struct NodeData;
}

/// Immutable constructor tree.
///
/// A TypeNode is a cheap handle; copies share nodes, which never change after
/// construction. Every node caches its subtree's CostProfile, flattened length
/// and height. The factories validate the constructor invariants and throw
/// InvalidTree on violation (and OverflowError if the flattened length does not
/// fit in an int64).
///
/// Field use per kind:
///   con     count
///   vec     count, stride, child
///   idx     count, indices, child
///   strc    count, indices, children
///   vecbuc  count, stride, substride, sizes, child
///   idxbuc  count, substride, indices, sizes, child
class TypeNode {
 public:
  static TypeNode con(Count count);
  static TypeNode vec(Count count, Displacement stride, TypeNode child);
  static TypeNode idx(Count count, std::vector<Displacement> indices, TypeNode child);
  static TypeNode strc(Count count, std::vector<Displacement> indices, std::vector<TypeNode> children);
  static TypeNode vecbuc(Count count, Displacement stride, Displacement substride,
                         std::vector<Count> sizes, TypeNode child);
  static TypeNode idxbuc(Count count, Displacement substride, std::vector<Displacement> indices,
                         std::vector<Count> sizes, TypeNode child);

  NodeKind kind() const noexcept;
  Count count() const noexcept;
  /// 0 for kinds without a stride.
  Displacement stride() const noexcept;
  Displacement substride() const noexcept;
  std::span<const Displacement> indices() const noexcept;
  std::span<const Count> sizes() const noexcept;
  /// Empty for con, one element for the unary kinds, `count` for strc.
  std::span<const TypeNode> children() const noexcept;
  /// The single child of a unary node; ContractViolation otherwise.
  const TypeNode& child() const;

  const CostProfile& profile() const noexcept;
  /// Number of displacements the subtree flattens to.
  Count length() const noexcept;
  /// Nodes on the longest root-to-leaf path (a lone leaf has height 1).
  int height() const noexcept;

  /// An idx, strc or idxbuc node whose first index is not 0.
  bool is_shifted() const noexcept;

  /// Same node with a different index array (idx, strc, idxbuc only).
  TypeNode with_indices(std::vector<Displacement> indices) const;
  /// Same node with different children; the count of children must not change.
  TypeNode with_children(std::vector<TypeNode> children) const;

  /// Deep structural equality.
  friend bool operator==(const TypeNode& a, const TypeNode& b);

 private:
  explicit TypeNode(std::shared_ptr<const detail::NodeData> data) : data_(std::move(data)) {}
  static TypeNode make(detail::NodeData data);

  std::shared_ptr<const detail::NodeData> data_;
};

/// Ordered traversal; every displacement is offset by `base`.
DisplacementSequence flatten(const TypeNode& tree, Displacement base = 0);
void flatten_into(const TypeNode& tree, Displacement base, std::vector<Displacement>& out);

Cost cost(const TypeNode& tree, const CostModel& model);

bool contains_buckets(const TypeNode& tree);

}  // namespace layoutrec
