#include "layoutrec/cost_model.hpp"

#include <array>
#include <charconv>
#include <stdexcept>

#include "layoutrec/checked.hpp"

namespace layoutrec {

namespace {

constexpr std::array<std::string_view, kNodeKindCount> kKindNames = {
    "con", "vec", "idx", "strc", "vecbuc", "idxbuc"};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

std::string_view to_string(NodeKind kind) noexcept {
  return kKindNames[static_cast<std::size_t>(kind)];
}

std::optional<NodeKind> node_kind_from_string(std::string_view name) noexcept {
  for (std::size_t k = 0; k < kKindNames.size(); ++k) {
    if (kKindNames[k] == name) return static_cast<NodeKind>(k);
  }
  return std::nullopt;
}

void CostModel::validate() const {
  for (Cost k : {k_con, k_vec, k_idx, k_strc, k_vecbuc, k_idxbuc, k_lookup}) {
    if (k < 0) throw std::invalid_argument("cost constants must be non-negative");
  }
}

Cost CostModel::node_constant(NodeKind kind) const noexcept {
  switch (kind) {
    case NodeKind::con: return k_con;
    case NodeKind::vec: return k_vec;
    case NodeKind::idx: return k_idx;
    case NodeKind::strc: return k_strc;
    case NodeKind::vecbuc: return k_vecbuc;
    case NodeKind::idxbuc: return k_idxbuc;
  }
  return 0;
}

CostModel CostModel::parse(std::string_view text) {
  CostModel model;
  while (!text.empty()) {
    const auto comma = text.find(',');
    std::string_view item = trim(text.substr(0, comma));
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    if (item.empty()) continue;

    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("cost entry '" + std::string(item) + "' is not key=value");
    }
    const std::string_view key = trim(item.substr(0, eq));
    const std::string_view value = trim(item.substr(eq + 1));
    Cost parsed = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), parsed);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
      throw std::invalid_argument("cost value for '" + std::string(key) + "' is not an integer");
    }

    Cost* slot = nullptr;
    if (key == "k_con") slot = &model.k_con;
    else if (key == "k_vec") slot = &model.k_vec;
    else if (key == "k_idx") slot = &model.k_idx;
    else if (key == "k_strc") slot = &model.k_strc;
    else if (key == "k_vecbuc") slot = &model.k_vecbuc;
    else if (key == "k_idxbuc") slot = &model.k_idxbuc;
    else if (key == "k_lookup") slot = &model.k_lookup;
    if (slot == nullptr) throw std::invalid_argument("unknown cost key '" + std::string(key) + "'");
    *slot = parsed;
  }
  model.validate();
  return model;
}

std::string CostModel::to_string() const {
  return "k_con=" + std::to_string(k_con) + ",k_vec=" + std::to_string(k_vec) +
         ",k_idx=" + std::to_string(k_idx) + ",k_strc=" + std::to_string(k_strc) +
         ",k_vecbuc=" + std::to_string(k_vecbuc) + ",k_idxbuc=" + std::to_string(k_idxbuc) +
         ",k_lookup=" + std::to_string(k_lookup);
}

Cost node_cost(NodeKind kind, Count count, const CostModel& model) {
  Cost words = kind == NodeKind::strc || kind == NodeKind::idxbuc ? checked_mul(2, count)
                                                                  : lookup_words(kind, count);
  return checked_add(model.node_constant(kind), checked_mul(words, model.k_lookup));
}

Cost trivial_cost(std::size_t n, const CostModel& model) {
  return checked_add(node_cost(NodeKind::idx, static_cast<Count>(n), model), model.k_con);
}

}  // namespace layoutrec
