#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "layoutrec/node_kind.hpp"

namespace layoutrec {

using Cost = std::int64_t;
using Count = std::int64_t;

/// Per-node storage constants. The default is the unit model.
struct CostModel {
  Cost k_con = 1;
  Cost k_vec = 1;
  Cost k_idx = 1;
  Cost k_strc = 1;
  Cost k_vecbuc = 1;
  Cost k_idxbuc = 1;
  Cost k_lookup = 1;

  /// Throws std::invalid_argument if any constant is negative.
  void validate() const;

  Cost node_constant(NodeKind kind) const noexcept;

  /// Parses "k_con=2,k_lookup=3,..."; unspecified keys keep their defaults.
  static CostModel parse(std::string_view text);
  std::string to_string() const;

  friend bool operator==(const CostModel&, const CostModel&) = default;
};

/// Number of index/type words a node stores: idx and vecbuc keep one array of
/// length c, strc and idxbuc keep two.
constexpr Count lookup_words(NodeKind kind, Count count) noexcept {
  switch (kind) {
    case NodeKind::idx:
    case NodeKind::vecbuc: return count;
    case NodeKind::strc:
    case NodeKind::idxbuc: return 2 * count;
    default: return 0;
  }
}

/// Cost of a single node (children excluded).
Cost node_cost(NodeKind kind, Count count, const CostModel& model);

/// Cost of the trivial representation idx(n, D, con(1)).
Cost trivial_cost(std::size_t n, const CostModel& model);

}  // namespace layoutrec
