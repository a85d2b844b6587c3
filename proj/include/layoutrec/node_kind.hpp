#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace layoutrec {

enum class NodeKind : std::uint8_t { con, vec, idx, strc, vecbuc, idxbuc };

inline constexpr std::size_t kNodeKindCount = 6;

std::string_view to_string(NodeKind kind) noexcept;
std::optional<NodeKind> node_kind_from_string(std::string_view name) noexcept;

/// Order used to break cost ties: simpler kinds win.
constexpr int preference_rank(NodeKind kind) noexcept {
  switch (kind) {
    case NodeKind::con: return 0;
    case NodeKind::vec: return 1;
    case NodeKind::idx: return 2;
    case NodeKind::vecbuc: return 3;
    case NodeKind::idxbuc: return 4;
    case NodeKind::strc: return 5;
  }
  return 6;
}

constexpr bool is_bucket(NodeKind kind) noexcept {
  return kind == NodeKind::vecbuc || kind == NodeKind::idxbuc;
}

/// Kinds that carry an index array and can therefore absorb a shift.
constexpr bool has_indices(NodeKind kind) noexcept {
  return kind == NodeKind::idx || kind == NodeKind::strc || kind == NodeKind::idxbuc;
}

}  // namespace layoutrec
