#include "layoutrec/normalize.hpp"

#include <string>

#include "layoutrec/errors.hpp"

namespace layoutrec {

NormalizeResult normalize_tree(const TypeNode& tree, const NormalizeOptions& options) {
  if (tree.length() > static_cast<Count>(options.max_flatten)) {
    throw SizeLimitError("tree flattens to " + std::to_string(tree.length()) + " displacements, limit is " +
                         std::to_string(options.max_flatten));
  }
  const Cost old_cost = cost(tree, options.reconstruct.model);
  ReconstructionReport report = reconstruct(flatten(tree), options.reconstruct);
  if (report.cost > old_cost) return {tree, old_cost, old_cost};
  return {std::move(report.tree), old_cost, report.cost};
}

}  // namespace layoutrec
