#pragma once

#include <cstddef>

#include "layoutrec/reconstruct.hpp"
#include "layoutrec/type_node.hpp"

namespace layoutrec {

struct NormalizeOptions {
  ReconstructOptions reconstruct{};
  /// Largest flattened length accepted; a small tree can describe a huge sequence.
  std::size_t max_flatten = 1'000'000;
};

struct NormalizeResult {
  TypeNode tree;
  Cost old_cost;
  Cost new_cost;
};

/// Flattens `tree` and reconstructs it from scratch. The result flattens to
/// the same sequence and never costs more than the input; when the rebuilt
/// tree would (bucket input in basic mode), the input is returned unchanged.
/// Throws SizeLimitError when the flattened length exceeds max_flatten or the
/// reconstruction limit.
NormalizeResult normalize_tree(const TypeNode& tree, const NormalizeOptions& options = {});

}  // namespace layoutrec
