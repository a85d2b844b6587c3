#pragma once

#include <optional>

#include "layoutrec/type_node.hpp"

namespace layoutrec {

/// Rewrites a basic tree so that every idx/strc node has first index 0, except
/// possibly the first indexed node on the root's unary chain, which then holds
/// the whole shift. Flattening and cost are unchanged. Throws InvalidTree on
/// trees with bucket nodes.
TypeNode make_nice(const TypeNode& tree);

/// At most one shifted node, and if there is one it is the first indexed node
/// on every root-to-leaf path.
bool is_nice(const TypeNode& tree);

/// The first node reached from the root through vec/vecbuc nodes only, if it
/// has an index array (idx, strc, idxbuc). Such a node lies on every
/// root-to-leaf path.
const TypeNode* top_indexed_node(const TypeNode& tree);

/// Adds `shift` to every index of the top indexed node, which shifts the whole
/// flattened sequence by `shift` at unchanged cost. Empty when the tree has no
/// top indexed node.
std::optional<TypeNode> shift_top_indexed(const TypeNode& tree, Displacement shift);

}  // namespace layoutrec
