#include "layoutrec/nice.hpp"

#include <utility>

#include "layoutrec/checked.hpp"
#include "layoutrec/errors.hpp"

namespace layoutrec {

namespace {

struct Unshifted {
  TypeNode tree;
  Displacement shift;  // flatten(original) == flatten(tree) + shift
};

// Clears the shift of every indexed node bottom-up. A node's accumulated shift
// is pushed into the index that refers to it in its parent.
Unshifted unshift(const TypeNode& node) {
  switch (node.kind()) {
    case NodeKind::con:
      return {node, 0};
    case NodeKind::vec: {
      Unshifted inner = unshift(node.child());
      return {node.with_children({std::move(inner.tree)}), inner.shift};
    }
    case NodeKind::idx: {
      Unshifted inner = unshift(node.child());
      const auto old = node.indices();
      const Displacement first = old.front();
      std::vector<Displacement> indices;
      indices.reserve(old.size());
      for (Displacement i : old) indices.push_back(checked_sub(i, first));
      TypeNode rebuilt = TypeNode::idx(node.count(), std::move(indices), std::move(inner.tree));
      return {std::move(rebuilt), checked_add(first, inner.shift)};
    }
    case NodeKind::strc: {
      const auto old = node.indices();
      std::vector<TypeNode> children;
      std::vector<Displacement> absolute;
      children.reserve(old.size());
      absolute.reserve(old.size());
      for (std::size_t k = 0; k < old.size(); ++k) {
        Unshifted part = unshift(node.children()[k]);
        absolute.push_back(checked_add(old[k], part.shift));
        children.push_back(std::move(part.tree));
      }
      const Displacement first = absolute.front();
      for (Displacement& i : absolute) i = checked_sub(i, first);
      return {TypeNode::strc(node.count(), std::move(absolute), std::move(children)), first};
    }
    case NodeKind::vecbuc:
    case NodeKind::idxbuc:
      break;
  }
  throw InvalidTree("niceness is defined for basic trees only; found a bucket node");
}

// Rebuilds the unary chain above the top indexed node with `replace` applied to it.
template <class Fn>
std::optional<TypeNode> rewrite_top_indexed(const TypeNode& node, Fn&& replace) {
  if (has_indices(node.kind())) return replace(node);
  if (node.kind() == NodeKind::vec || node.kind() == NodeKind::vecbuc) {
    std::optional<TypeNode> inner = rewrite_top_indexed(node.child(), replace);
    if (!inner) return std::nullopt;
    return node.with_children({std::move(*inner)});
  }
  return std::nullopt;
}

Count count_shifted(const TypeNode& node) {
  Count n = node.is_shifted() ? 1 : 0;
  for (const TypeNode& c : node.children()) n += count_shifted(c);
  return n;
}

}  // namespace

const TypeNode* top_indexed_node(const TypeNode& tree) {
  const TypeNode* node = &tree;
  while (true) {
    if (has_indices(node->kind())) return node;
    if (node->kind() != NodeKind::vec && node->kind() != NodeKind::vecbuc) return nullptr;
    node = &node->child();
  }
}

std::optional<TypeNode> shift_top_indexed(const TypeNode& tree, Displacement shift) {
  return rewrite_top_indexed(tree, [shift](const TypeNode& n) {
    std::vector<Displacement> indices(n.indices().begin(), n.indices().end());
    for (Displacement& i : indices) i = checked_add(i, shift);
    return n.with_indices(std::move(indices));
  });
}

TypeNode make_nice(const TypeNode& tree) {
  if (contains_buckets(tree)) {
    throw InvalidTree("niceness is defined for basic trees only; found a bucket node");
  }
  Unshifted flat = unshift(tree);
  if (flat.shift == 0) return flat.tree;
  // Nonzero shifts only originate in indexed nodes, so the chain ends in one.
  std::optional<TypeNode> shifted = shift_top_indexed(flat.tree, flat.shift);
  if (!shifted) throw ContractViolation("shifted tree without a top indexed node");
  return *shifted;
}

bool is_nice(const TypeNode& tree) {
  const Count shifted = count_shifted(tree);
  if (shifted == 0) return true;
  if (shifted > 1) return false;
  const TypeNode* top = top_indexed_node(tree);
  return top != nullptr && top->is_shifted();
}

}  // namespace layoutrec
