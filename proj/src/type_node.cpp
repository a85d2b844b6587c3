#include "layoutrec/type_node.hpp"

#include <algorithm>
#include <string>

#include "layoutrec/checked.hpp"
#include "layoutrec/errors.hpp"

namespace layoutrec {

namespace detail {

struct NodeData {
  NodeKind kind = NodeKind::con;
  Count count = 0;
  Displacement stride = 0;
  Displacement substride = 0;
  std::vector<Displacement> indices;
  std::vector<Count> sizes;
  std::vector<TypeNode> children;

  CostProfile profile;
  Count length = 0;
  int height = 1;
};

}  // namespace detail

Cost CostProfile::evaluate(const CostModel& model) const {
  Cost total = checked_mul(lookup_words, model.k_lookup);
  for (std::size_t k = 0; k < kNodeKindCount; ++k) {
    total = checked_add(total, checked_mul(nodes[k], model.node_constant(static_cast<NodeKind>(k))));
  }
  return total;
}

CostProfile& CostProfile::operator+=(const CostProfile& other) {
  for (std::size_t k = 0; k < kNodeKindCount; ++k) nodes[k] = checked_add(nodes[k], other.nodes[k]);
  lookup_words = checked_add(lookup_words, other.lookup_words);
  return *this;
}

namespace {

void require(bool ok, NodeKind kind, const std::string& what) {
  if (!ok) throw InvalidTree(std::string(to_string(kind)) + ": " + what);
}

void require_length(std::size_t actual, Count count, NodeKind kind, const char* field) {
  require(static_cast<Count>(actual) == count, kind,
          std::string(field) + " length " + std::to_string(actual) + " != count " + std::to_string(count));
}

Count sum_sizes(const std::vector<Count>& sizes) {
  Count total = 0;
  for (Count b : sizes) total = checked_add(total, b);
  return total;
}

}  // namespace

TypeNode TypeNode::make(detail::NodeData data) {
  const NodeKind kind = data.kind;
  require(data.count >= 1, kind, "count " + std::to_string(data.count) + " < 1");
  for (Count b : data.sizes) require(b >= 1, kind, "bucket size " + std::to_string(b) + " < 1");

  switch (kind) {
    case NodeKind::con:
      require(data.children.empty(), kind, "a leaf has no children");
      break;
    case NodeKind::vec:
      require(data.children.size() == 1, kind, "exactly one child required");
      break;
    case NodeKind::idx:
      require_length(data.indices.size(), data.count, kind, "indices");
      require(data.children.size() == 1, kind, "exactly one child required");
      break;
    case NodeKind::strc:
      require_length(data.indices.size(), data.count, kind, "indices");
      require_length(data.children.size(), data.count, kind, "children");
      break;
    case NodeKind::vecbuc:
      require_length(data.sizes.size(), data.count, kind, "sizes");
      require(data.children.size() == 1, kind, "exactly one child required");
      break;
    case NodeKind::idxbuc:
      require_length(data.indices.size(), data.count, kind, "indices");
      require_length(data.sizes.size(), data.count, kind, "sizes");
      require(data.children.size() == 1, kind, "exactly one child required");
      break;
  }

  data.profile = CostProfile{};
  data.profile.nodes[static_cast<std::size_t>(kind)] = 1;
  data.profile.lookup_words = checked_mul(lookup_words(kind, 1), data.count);
  data.height = 1;
  for (const TypeNode& c : data.children) {
    data.profile += c.profile();
    data.height = std::max(data.height, c.height() + 1);
  }

  switch (kind) {
    case NodeKind::con:
      data.length = data.count;
      break;
    case NodeKind::vec:
    case NodeKind::idx:
      data.length = checked_mul(data.count, data.children.front().length());
      break;
    case NodeKind::strc:
      data.length = 0;
      for (const TypeNode& c : data.children) data.length = checked_add(data.length, c.length());
      break;
    case NodeKind::vecbuc:
    case NodeKind::idxbuc:
      data.length = checked_mul(sum_sizes(data.sizes), data.children.front().length());
      break;
  }
  return TypeNode(std::make_shared<const detail::NodeData>(std::move(data)));
}

TypeNode TypeNode::con(Count count) {
  detail::NodeData d;
  d.kind = NodeKind::con;
  d.count = count;
  return make(std::move(d));
}

TypeNode TypeNode::vec(Count count, Displacement stride, TypeNode child) {
  detail::NodeData d;
  d.kind = NodeKind::vec;
  d.count = count;
  d.stride = stride;
  d.children.push_back(std::move(child));
  return make(std::move(d));
}

TypeNode TypeNode::idx(Count count, std::vector<Displacement> indices, TypeNode child) {
  detail::NodeData d;
  d.kind = NodeKind::idx;
  d.count = count;
  d.indices = std::move(indices);
  d.children.push_back(std::move(child));
  return make(std::move(d));
}

TypeNode TypeNode::strc(Count count, std::vector<Displacement> indices, std::vector<TypeNode> children) {
  detail::NodeData d;
  d.kind = NodeKind::strc;
  d.count = count;
  d.indices = std::move(indices);
  d.children = std::move(children);
  return make(std::move(d));
}

TypeNode TypeNode::vecbuc(Count count, Displacement stride, Displacement substride,
                          std::vector<Count> sizes, TypeNode child) {
  detail::NodeData d;
  d.kind = NodeKind::vecbuc;
  d.count = count;
  d.stride = stride;
  d.substride = substride;
  d.sizes = std::move(sizes);
  d.children.push_back(std::move(child));
  return make(std::move(d));
}

TypeNode TypeNode::idxbuc(Count count, Displacement substride, std::vector<Displacement> indices,
                          std::vector<Count> sizes, TypeNode child) {
  detail::NodeData d;
  d.kind = NodeKind::idxbuc;
  d.count = count;
  d.substride = substride;
  d.indices = std::move(indices);
  d.sizes = std::move(sizes);
  d.children.push_back(std::move(child));
  return make(std::move(d));
}

NodeKind TypeNode::kind() const noexcept { return data_->kind; }
Count TypeNode::count() const noexcept { return data_->count; }
Displacement TypeNode::stride() const noexcept { return data_->stride; }
Displacement TypeNode::substride() const noexcept { return data_->substride; }
std::span<const Displacement> TypeNode::indices() const noexcept { return data_->indices; }
std::span<const Count> TypeNode::sizes() const noexcept { return data_->sizes; }
std::span<const TypeNode> TypeNode::children() const noexcept { return data_->children; }
const CostProfile& TypeNode::profile() const noexcept { return data_->profile; }
Count TypeNode::length() const noexcept { return data_->length; }
int TypeNode::height() const noexcept { return data_->height; }

const TypeNode& TypeNode::child() const {
  if (data_->kind == NodeKind::con || data_->kind == NodeKind::strc) {
    throw ContractViolation(std::string(to_string(data_->kind)) + " node has no single child");
  }
  return data_->children.front();
}

bool TypeNode::is_shifted() const noexcept {
  return has_indices(data_->kind) && data_->indices.front() != 0;
}

TypeNode TypeNode::with_indices(std::vector<Displacement> indices) const {
  if (!has_indices(data_->kind)) {
    throw ContractViolation(std::string(to_string(data_->kind)) + " node has no indices");
  }
  detail::NodeData d = *data_;
  d.indices = std::move(indices);
  return make(std::move(d));
}

TypeNode TypeNode::with_children(std::vector<TypeNode> children) const {
  if (children.size() != data_->children.size()) {
    throw ContractViolation("with_children must keep the number of children");
  }
  detail::NodeData d = *data_;
  d.children = std::move(children);
  return make(std::move(d));
}

bool operator==(const TypeNode& a, const TypeNode& b) {
  if (a.data_ == b.data_) return true;
  const detail::NodeData& x = *a.data_;
  const detail::NodeData& y = *b.data_;
  return x.kind == y.kind && x.count == y.count && x.stride == y.stride &&
         x.substride == y.substride && x.indices == y.indices && x.sizes == y.sizes &&
         x.children == y.children;
}

void flatten_into(const TypeNode& tree, Displacement base, std::vector<Displacement>& out) {
  const auto children = tree.children();
  switch (tree.kind()) {
    case NodeKind::con:
      for (Count i = 0; i < tree.count(); ++i) out.push_back(checked_add(base, i));
      break;
    case NodeKind::vec:
      for (Count i = 0; i < tree.count(); ++i) {
        flatten_into(children[0], checked_add(base, checked_mul(i, tree.stride())), out);
      }
      break;
    case NodeKind::idx:
      for (Displacement index : tree.indices()) flatten_into(children[0], checked_add(base, index), out);
      break;
    case NodeKind::strc:
      for (std::size_t i = 0; i < children.size(); ++i) {
        flatten_into(children[i], checked_add(base, tree.indices()[i]), out);
      }
      break;
    case NodeKind::vecbuc:
      for (Count i = 0; i < tree.count(); ++i) {
        const Displacement bucket = checked_add(base, checked_mul(i, tree.stride()));
        for (Count k = 0; k < tree.sizes()[i]; ++k) {
          flatten_into(children[0], checked_add(bucket, checked_mul(k, tree.substride())), out);
        }
      }
      break;
    case NodeKind::idxbuc:
      for (Count i = 0; i < tree.count(); ++i) {
        const Displacement bucket = checked_add(base, tree.indices()[i]);
        for (Count k = 0; k < tree.sizes()[i]; ++k) {
          flatten_into(children[0], checked_add(bucket, checked_mul(k, tree.substride())), out);
        }
      }
      break;
  }
}

DisplacementSequence flatten(const TypeNode& tree, Displacement base) {
  std::vector<Displacement> out;
  out.reserve(static_cast<std::size_t>(tree.length()));
  flatten_into(tree, base, out);
  return DisplacementSequence(std::move(out));
}

Cost cost(const TypeNode& tree, const CostModel& model) { return tree.profile().evaluate(model); }

bool contains_buckets(const TypeNode& tree) {
  const CostProfile& p = tree.profile();
  return p.nodes[static_cast<std::size_t>(NodeKind::vecbuc)] > 0 ||
         p.nodes[static_cast<std::size_t>(NodeKind::idxbuc)] > 0;
}

}  // namespace layoutrec
