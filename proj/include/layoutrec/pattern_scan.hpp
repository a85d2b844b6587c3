#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "layoutrec/cost_model.hpp"
#include "layoutrec/sequence.hpp"
#include "layoutrec/type_node.hpp"

namespace layoutrec {

/// Bucket layout found in a list of block starts.
///
/// strided: bucket i starts at origin + i*stride and holds sizes[i] elements
///          spaced by substride.
/// indexed: bucket i starts at indices[i], same spacing rule.
struct BucketPattern {
  enum class Kind { strided, indexed };

  Kind kind = Kind::strided;
  Count count = 0;
  Displacement origin = 0;  // strided only
  Displacement stride = 0;  // strided only
  Displacement substride = 0;
  std::vector<Displacement> indices;  // indexed only
  std::vector<Count> sizes;

  /// Re-expands the pattern into the value list it was detected from.
  std::vector<Displacement> expand() const;
};

/// True when the prefix of length `block` tiles the segment: every block has
/// the same internal offsets as the first one. Linear time.
/// Requires 1 <= block < seg.size() and block | seg.size(); ContractViolation otherwise.
bool repeated(const SegmentView& seg, std::size_t block);

/// Common difference of an arithmetic progression, if `values` is one. Lists
/// shorter than 2 have no stride.
std::optional<Displacement> strided(std::span<const Displacement> values);

/// Strided-bucket scan. Tries both starting cases (first bucket longer than one
/// element, first bucket a singleton) and returns the valid pattern with fewer
/// buckets. A uniform progression comes back as one bucket.
/// Requires values.size() >= 2.
std::optional<BucketPattern> detect_strided_bucket(std::span<const Displacement> values);

/// Indexed-bucket scan with the most frequent consecutive difference as the
/// substride, which minimizes the number of buckets. Ties go to the smallest
/// absolute difference, then the smaller signed one. Never fails.
/// Requires values.size() >= 2.
BucketPattern detect_indexed_bucket(std::span<const Displacement> values);

/// Proper divisors of n in ascending order (all q < n with q | n).
std::vector<std::size_t> proper_divisors(std::size_t n);

/// One idx/vec/bucket-rooted representation of a segment whose child is the
/// optimal tree for the segment's prefix of length `block`.
struct RepetitionShape {
  NodeKind kind = NodeKind::idx;
  std::size_t block = 0;
  Count count = 0;              // node count (number of buckets for bucket kinds)
  Displacement stride = 0;      // vec, vecbuc
  Displacement substride = 0;   // vecbuc, idxbuc

  /// Cost of the root node alone.
  Cost root_cost(const CostModel& model) const { return node_cost(kind, count, model); }
};

/// Every repetition-based root for the segment, by ascending block length:
/// an idx shape for each repeated prefix, a vec shape when the block starts are
/// strided, and, if `extended`, bucket shapes found in the block starts.
std::vector<RepetitionShape> repetition_shapes(const SegmentView& seg, bool extended);

/// Builds the full node for a shape, re-deriving index and size arrays from the
/// segment.
TypeNode build_repetition(const SegmentView& seg, const RepetitionShape& shape, TypeNode prefix_tree);

/// Optimal tree for the segment's normalized prefix of the given length.
using PrefixSolutions = std::function<TypeNode(std::size_t length)>;

/// Least-cost idx/vec-rooted (plus bucket-rooted if `extended`) tree over an
/// optimal prefix tree. Ties prefer vec over idx, then the shorter block.
/// Present for every segment of length >= 2.
std::optional<TypeNode> repetition_candidate(const SegmentView& seg, const PrefixSolutions& prefix_solutions,
                                             const CostModel& model, bool extended = false);

}  // namespace layoutrec
