#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "layoutrec/type_node.hpp"

namespace layoutrec {

enum class TreeFormat { text, json, dot };

std::optional<TreeFormat> tree_format_from_string(std::string_view name) noexcept;

/// Parses the canonical grammar, e.g.
///   strc(2,[0,60],[con(5),vec(5,-10,idx(3,[0,-4,7],con(1)))])
/// Whitespace is ignored. Syntax errors throw ParseError; constructor invariant
/// violations throw InvalidTree, both with the byte offset in the message.
TypeNode parse_tree(std::string_view text);

/// Canonical text without whitespace, one JSON object per node, or a Graphviz
/// digraph.
std::string render_tree(const TypeNode& tree, TreeFormat format = TreeFormat::text);

nlohmann::json tree_to_json(const TypeNode& tree);
/// Inverse of tree_to_json. Throws ParseError on a malformed object.
TypeNode tree_from_json(const nlohmann::json& object);

}  // namespace layoutrec
