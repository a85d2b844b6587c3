#include "layoutrec/tree_io.hpp"

#include <cctype>
#include <charconv>
#include <string>

#include "layoutrec/errors.hpp"

namespace layoutrec {

std::optional<TreeFormat> tree_format_from_string(std::string_view name) noexcept {
  if (name == "text") return TreeFormat::text;
  if (name == "json") return TreeFormat::json;
  if (name == "dot") return TreeFormat::dot;
  return std::nullopt;
}

namespace {

class TreeParser {
 public:
  explicit TreeParser(std::string_view text) : text_(text) {}

  TypeNode parse() {
    TypeNode tree = parse_node();
    skip_space();
    if (pos_ != text_.size()) fail("trailing input after tree");
    return tree;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("offset " + std::to_string(pos_) + ": " + what, pos_);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != c) {
      fail(std::string("expected '") + c + "'");
    }
    ++pos_;
  }

  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  std::int64_t integer() {
    skip_space();
    const std::size_t start = pos_;
    std::size_t end = pos_;
    if (end < text_.size() && (text_[end] == '-' || text_[end] == '+')) ++end;
    while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
    const char* first = text_.data() + start + (start < text_.size() && text_[start] == '+' ? 1 : 0);
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(first, text_.data() + end, value);
    if (ec == std::errc::result_out_of_range) fail("integer out of 64-bit range");
    if (ec != std::errc{} || ptr != text_.data() + end || end == start) fail("expected an integer");
    pos_ = end;
    return value;
  }

  std::vector<std::int64_t> int_list() {
    expect('[');
    std::vector<std::int64_t> values{integer()};
    while (peek(',')) {
      ++pos_;
      values.push_back(integer());
    }
    expect(']');
    return values;
  }

  TypeNode parse_node() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);
    const std::optional<NodeKind> kind = node_kind_from_string(name);
    if (!kind) {
      pos_ = start;
      fail(name.empty() ? "expected a constructor name" : "unknown constructor '" + std::string(name) + "'");
    }
    expect('(');
    const Count count = integer();

    auto build = [&](auto&& factory) {
      try {
        return factory();
      } catch (const InvalidTree& e) {
        throw InvalidTree("offset " + std::to_string(start) + ": " + e.what());
      }
    };

    TypeNode node = [&] {
      switch (*kind) {
        case NodeKind::con:
          expect(')');
          return build([&] { return TypeNode::con(count); });
        case NodeKind::vec: {
          expect(',');
          const Displacement stride = integer();
          expect(',');
          TypeNode child = parse_node();
          expect(')');
          return build([&] { return TypeNode::vec(count, stride, std::move(child)); });
        }
        case NodeKind::idx: {
          expect(',');
          auto indices = int_list();
          expect(',');
          TypeNode child = parse_node();
          expect(')');
          return build([&] { return TypeNode::idx(count, std::move(indices), std::move(child)); });
        }
        case NodeKind::strc: {
          expect(',');
          auto indices = int_list();
          expect(',');
          expect('[');
          std::vector<TypeNode> children{parse_node()};
          while (peek(',')) {
            ++pos_;
            children.push_back(parse_node());
          }
          expect(']');
          expect(')');
          return build([&] { return TypeNode::strc(count, std::move(indices), std::move(children)); });
        }
        case NodeKind::vecbuc: {
          expect(',');
          const Displacement stride = integer();
          expect(',');
          const Displacement substride = integer();
          expect(',');
          auto sizes = int_list();
          expect(',');
          TypeNode child = parse_node();
          expect(')');
          return build([&] {
            return TypeNode::vecbuc(count, stride, substride, std::move(sizes), std::move(child));
          });
        }
        case NodeKind::idxbuc: {
          expect(',');
          const Displacement substride = integer();
          expect(',');
          auto indices = int_list();
          expect(',');
          auto sizes = int_list();
          expect(',');
          TypeNode child = parse_node();
          expect(')');
          return build([&] {
            return TypeNode::idxbuc(count, substride, std::move(indices), std::move(sizes), std::move(child));
          });
        }
      }
      fail("unreachable");
    }();
    return node;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

template <class T>
void append_list(std::string& out, std::span<const T> values) {
  out += '[';
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(values[i]);
  }
  out += ']';
}

// Node header without children, e.g. "vec(5,-10" or "idx(3,[0,-4,7]".
void append_header(std::string& out, const TypeNode& node) {
  out += to_string(node.kind());
  out += '(';
  out += std::to_string(node.count());
  switch (node.kind()) {
    case NodeKind::con:
      break;
    case NodeKind::vec:
      out += ',' + std::to_string(node.stride());
      break;
    case NodeKind::idx:
    case NodeKind::strc:
      out += ',';
      append_list(out, node.indices());
      break;
    case NodeKind::vecbuc:
      out += ',' + std::to_string(node.stride()) + ',' + std::to_string(node.substride()) + ',';
      append_list(out, node.sizes());
      break;
    case NodeKind::idxbuc:
      out += ',' + std::to_string(node.substride()) + ',';
      append_list(out, node.indices());
      out += ',';
      append_list(out, node.sizes());
      break;
  }
}

void render_text(std::string& out, const TypeNode& node) {
  append_header(out, node);
  const auto children = node.children();
  if (node.kind() == NodeKind::strc) {
    out += ",[";
    for (std::size_t i = 0; i < children.size(); ++i) {
      if (i) out += ',';
      render_text(out, children[i]);
    }
    out += ']';
  } else if (!children.empty()) {
    out += ',';
    render_text(out, children[0]);
  }
  out += ')';
}

std::size_t render_dot(std::string& out, const TypeNode& node, std::size_t& next_id) {
  const std::size_t id = next_id++;
  std::string label;
  append_header(label, node);
  label += ')';
  out += "  n" + std::to_string(id) + " [label=\"" + label + "\"];\n";
  for (const TypeNode& c : node.children()) {
    const std::size_t child_id = render_dot(out, c, next_id);
    out += "  n" + std::to_string(id) + " -> n" + std::to_string(child_id) + ";\n";
  }
  return id;
}

template <class T>
std::vector<T> json_list(const nlohmann::json& object, const char* key) {
  if (!object.contains(key) || !object.at(key).is_array()) {
    throw ParseError(std::string("tree object lacks array '") + key + "'", 0);
  }
  std::vector<T> out;
  for (const auto& v : object.at(key)) {
    if (!v.is_number_integer()) throw ParseError(std::string("non-integer in '") + key + "'", 0);
    out.push_back(v.get<T>());
  }
  return out;
}

std::int64_t json_int(const nlohmann::json& object, const char* key) {
  if (!object.contains(key) || !object.at(key).is_number_integer()) {
    throw ParseError(std::string("tree object lacks integer '") + key + "'", 0);
  }
  return object.at(key).get<std::int64_t>();
}

TypeNode json_child(const nlohmann::json& object) {
  if (!object.contains("child")) throw ParseError("tree object lacks 'child'", 0);
  return tree_from_json(object.at("child"));
}

}  // namespace

TypeNode parse_tree(std::string_view text) { return TreeParser(text).parse(); }

nlohmann::json tree_to_json(const TypeNode& node) {
  nlohmann::json out;
  out["kind"] = std::string(to_string(node.kind()));
  out["count"] = node.count();
  switch (node.kind()) {
    case NodeKind::con:
      break;
    case NodeKind::vec:
      out["stride"] = node.stride();
      break;
    case NodeKind::idx:
    case NodeKind::strc:
      out["indices"] = std::vector<Displacement>(node.indices().begin(), node.indices().end());
      break;
    case NodeKind::vecbuc:
      out["stride"] = node.stride();
      out["substride"] = node.substride();
      out["sizes"] = std::vector<Count>(node.sizes().begin(), node.sizes().end());
      break;
    case NodeKind::idxbuc:
      out["substride"] = node.substride();
      out["indices"] = std::vector<Displacement>(node.indices().begin(), node.indices().end());
      out["sizes"] = std::vector<Count>(node.sizes().begin(), node.sizes().end());
      break;
  }
  if (node.kind() == NodeKind::strc) {
    nlohmann::json children = nlohmann::json::array();
    for (const TypeNode& c : node.children()) children.push_back(tree_to_json(c));
    out["children"] = std::move(children);
  } else if (node.kind() != NodeKind::con) {
    out["child"] = tree_to_json(node.child());
  }
  return out;
}

TypeNode tree_from_json(const nlohmann::json& object) {
  if (!object.is_object() || !object.contains("kind") || !object.at("kind").is_string()) {
    throw ParseError("tree object lacks a string 'kind'", 0);
  }
  const std::string name = object.at("kind").get<std::string>();
  const std::optional<NodeKind> kind = node_kind_from_string(name);
  if (!kind) throw ParseError("unknown constructor '" + name + "'", 0);
  const Count count = json_int(object, "count");
  switch (*kind) {
    case NodeKind::con:
      return TypeNode::con(count);
    case NodeKind::vec:
      return TypeNode::vec(count, json_int(object, "stride"), json_child(object));
    case NodeKind::idx:
      return TypeNode::idx(count, json_list<Displacement>(object, "indices"), json_child(object));
    case NodeKind::strc: {
      if (!object.contains("children") || !object.at("children").is_array()) {
        throw ParseError("strc object lacks 'children'", 0);
      }
      std::vector<TypeNode> children;
      for (const auto& c : object.at("children")) children.push_back(tree_from_json(c));
      return TypeNode::strc(count, json_list<Displacement>(object, "indices"), std::move(children));
    }
    case NodeKind::vecbuc:
      return TypeNode::vecbuc(count, json_int(object, "stride"), json_int(object, "substride"),
                              json_list<Count>(object, "sizes"), json_child(object));
    case NodeKind::idxbuc:
      return TypeNode::idxbuc(count, json_int(object, "substride"), json_list<Displacement>(object, "indices"),
                              json_list<Count>(object, "sizes"), json_child(object));
  }
  throw ParseError("unknown constructor '" + name + "'", 0);
}

std::string render_tree(const TypeNode& tree, TreeFormat format) {
  std::string out;
  switch (format) {
    case TreeFormat::text:
      render_text(out, tree);
      break;
    case TreeFormat::json:
      out = tree_to_json(tree).dump();
      break;
    case TreeFormat::dot: {
      out = "digraph layout {\n  node [shape=box, fontname=\"monospace\"];\n";
      std::size_t next_id = 0;
      render_dot(out, tree, next_id);
      out += "}\n";
      break;
    }
  }
  return out;
}

}  // namespace layoutrec
