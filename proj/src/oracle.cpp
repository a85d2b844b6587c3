#include "layoutrec/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "layoutrec/checked.hpp"
#include "layoutrec/errors.hpp"
#include "layoutrec/nice.hpp"

namespace layoutrec {

namespace {

using Mask = std::uint64_t;

void check_size(std::size_t n, std::size_t max_n) {
  if (n > max_n) {
    throw SizeLimitError("oracle limited to " + std::to_string(max_n) + " displacements, got " +
                         std::to_string(n));
  }
}

// Bit k of a mask cuts between position k and k + 1 of a list.
std::vector<std::size_t> part_starts(std::size_t length, Mask cuts) {
  std::vector<std::size_t> starts{0};
  for (std::size_t k = 0; k + 1 < length; ++k) {
    if (cuts >> k & 1U) starts.push_back(k + 1);
  }
  return starts;
}

std::optional<Displacement> common_step(std::span<const Displacement> values) {
  if (values.size() < 2) return std::nullopt;
  const Displacement step = checked_sub(values[1], values[0]);
  for (std::size_t k = 2; k < values.size(); ++k) {
    if (checked_sub(values[k], values[k - 1]) != step) return std::nullopt;
  }
  return step;
}

// Groups block starts into buckets along `cuts`. Present when every bucket
// steps by one shared substride.
struct Grouping {
  std::vector<Displacement> starts;
  std::vector<Count> sizes;
  Displacement substride = 0;
};

std::optional<Grouping> group(std::span<const Displacement> block_starts, Mask cuts) {
  Grouping g;
  std::optional<Displacement> shared;
  const std::vector<std::size_t> starts = part_starts(block_starts.size(), cuts);
  for (std::size_t b = 0; b < starts.size(); ++b) {
    const std::size_t end = b + 1 < starts.size() ? starts[b + 1] : block_starts.size();
    for (std::size_t k = starts[b] + 1; k < end; ++k) {
      const Displacement step = checked_sub(block_starts[k], block_starts[k - 1]);
      if (shared && *shared != step) return std::nullopt;
      shared = step;
    }
    g.starts.push_back(block_starts[starts[b]]);
    g.sizes.push_back(static_cast<Count>(end - starts[b]));
  }
  g.substride = shared.value_or(0);
  return g;
}

std::vector<Displacement> normalized(const DisplacementSequence& seq) {
  const DisplacementSequence normal = seq.normal_form();
  return {normal.begin(), normal.end()};
}

struct Choice {
  NodeKind kind = NodeKind::con;
  std::size_t block = 0;  // repeated prefix length; the whole span for a count-1 idx
  Mask cuts = 0;          // strc parts or bucket grouping
  bool over_carrier = false;
  Cost cost = 0;
};

class NiceSearch {
 public:
  NiceSearch(const DisplacementSequence& seq, const CostModel& model, bool extended)
      : values_(normalized(seq)),
        n_(seq.size()),
        model_(model),
        extended_(extended),
        memo_(n_ * n_),
        carriers_(n_ + 1) {}

  Cost best(std::size_t first, std::size_t last) { return solve(first, last).cost; }

  TypeNode tree(std::size_t first, std::size_t last) {
    const Choice choice = solve(first, last);
    const std::vector<Displacement> rel = relative(first, last);
    const std::size_t len = rel.size();
    switch (choice.kind) {
      case NodeKind::con:
        return TypeNode::con(static_cast<Count>(len));
      case NodeKind::strc:
        return composed(first, last, choice.cuts);
      default:
        return repeated_node(rel, choice, tree(first, first + choice.block - 1));
    }
  }

  // Cheapest tree for the prefix of the given length whose root reaches an
  // indexed node through vec/vecbuc nodes only.
  Choice carrier(std::size_t length) {
    if (carriers_[length]) return *carriers_[length];
    const std::vector<Displacement> rel = relative(0, length - 1);
    std::optional<Choice> best;
    auto offer = [&](const Choice& c) {
      if (!best || c.cost < best->cost) best = c;
    };

    offer({NodeKind::idx, length, 0, false, checked_add(node_cost(NodeKind::idx, 1, model_), this->best(0, length - 1))});
    offer(compose(0, length - 1, 1));
    for_each_repetition(rel, [&](std::size_t q, std::span<const Displacement> starts) {
      const Count c = static_cast<Count>(starts.size());
      const Cost child = this->best(0, q - 1);
      offer({NodeKind::idx, q, 0, false, checked_add(node_cost(NodeKind::idx, c, model_), child)});
      if (common_step(starts)) {
        offer({NodeKind::vec, q, 0, true, checked_add(node_cost(NodeKind::vec, c, model_), carrier(q).cost)});
      }
      if (!extended_) return;
      for_each_grouping(starts, [&](Mask cuts, const Grouping& g) {
        const Count buckets = static_cast<Count>(g.sizes.size());
        offer({NodeKind::idxbuc, q, cuts, false, checked_add(node_cost(NodeKind::idxbuc, buckets, model_), child)});
        if (buckets == 1 || common_step(g.starts)) {
          offer({NodeKind::vecbuc, q, cuts, true,
                 checked_add(node_cost(NodeKind::vecbuc, buckets, model_), carrier(q).cost)});
        }
      });
    });
    carriers_[length] = best;
    return *best;
  }

  TypeNode carrier_tree(std::size_t length) {
    const Choice choice = carrier(length);
    const std::vector<Displacement> rel = relative(0, length - 1);
    if (choice.kind == NodeKind::strc) return composed(0, length - 1, choice.cuts);
    if (choice.block == length) return TypeNode::idx(1, {0}, tree(0, length - 1));
    TypeNode child = choice.over_carrier ? carrier_tree(choice.block) : tree(0, choice.block - 1);
    return repeated_node(rel, choice, std::move(child));
  }

 private:
  std::vector<Displacement> relative(std::size_t first, std::size_t last) const {
    std::vector<Displacement> rel;
    rel.reserve(last - first + 1);
    for (std::size_t k = first; k <= last; ++k) rel.push_back(checked_sub(values_[k], values_[first]));
    return rel;
  }

  // Calls fn(block, block_starts) for every proper block length that tiles rel.
  template <class Fn>
  void for_each_repetition(const std::vector<Displacement>& rel, Fn&& fn) const {
    const std::size_t len = rel.size();
    for (std::size_t q = 1; q < len; ++q) {
      if (len % q != 0) continue;
      std::vector<Displacement> starts;
      bool tiles = true;
      for (std::size_t b = 0; b < len && tiles; b += q) {
        starts.push_back(rel[b]);
        for (std::size_t k = 1; k < q && tiles; ++k) tiles = checked_sub(rel[b + k], rel[b]) == rel[k];
      }
      if (tiles) fn(q, std::span<const Displacement>(starts));
    }
  }

  template <class Fn>
  void for_each_grouping(std::span<const Displacement> starts, Fn&& fn) const {
    const Mask limit = Mask{1} << (starts.size() - 1);
    for (Mask cuts = 0; cuts < limit; ++cuts) {
      if (std::optional<Grouping> g = group(starts, cuts)) fn(cuts, *g);
    }
  }

  TypeNode repeated_node(const std::vector<Displacement>& rel, const Choice& choice, TypeNode child) const {
    std::vector<Displacement> starts;
    for (std::size_t b = 0; b < rel.size(); b += choice.block) starts.push_back(rel[b]);
    const Count c = static_cast<Count>(starts.size());
    switch (choice.kind) {
      case NodeKind::idx:
        return TypeNode::idx(c, std::move(starts), std::move(child));
      case NodeKind::vec:
        return TypeNode::vec(c, *common_step(starts), std::move(child));
      case NodeKind::idxbuc: {
        Grouping g = *group(starts, choice.cuts);
        const Count buckets = static_cast<Count>(g.sizes.size());
        return TypeNode::idxbuc(buckets, g.substride, std::move(g.starts), std::move(g.sizes), std::move(child));
      }
      case NodeKind::vecbuc: {
        Grouping g = *group(starts, choice.cuts);
        const Count buckets = static_cast<Count>(g.sizes.size());
        const Displacement stride = common_step(g.starts).value_or(0);
        return TypeNode::vecbuc(buckets, stride, g.substride, std::move(g.sizes), std::move(child));
      }
      default:
        throw ContractViolation("oracle: not a repetition kind");
    }
  }

  TypeNode composed(std::size_t first, std::size_t last, Mask cuts) {
    const std::vector<std::size_t> starts = part_starts(last - first + 1, cuts);
    std::vector<Displacement> indices;
    std::vector<TypeNode> children;
    for (std::size_t p = 0; p < starts.size(); ++p) {
      const std::size_t from = first + starts[p];
      const std::size_t to = p + 1 < starts.size() ? first + starts[p + 1] - 1 : last;
      indices.push_back(checked_sub(values_[from], values_[first]));
      children.push_back(tree(from, to));
    }
    const auto parts = static_cast<Count>(children.size());
    return TypeNode::strc(parts, std::move(indices), std::move(children));
  }

  // Cheapest strc over [first, last] with at least min_parts parts.
  Choice compose(std::size_t first, std::size_t last, std::size_t min_parts) {
    Choice best{NodeKind::strc, 0, 0, false, -1};
    const Cost per_part = checked_mul(2, model_.k_lookup);
    auto walk = [&](auto&& self, std::size_t start, std::size_t parts, Mask cuts, Cost acc) -> void {
      if (best.cost >= 0 && acc >= best.cost) return;
      for (std::size_t end = start; end <= last; ++end) {
        if (end == last && parts + 1 < min_parts) continue;
        const Cost step = checked_add(acc, checked_add(per_part, this->best(start, end)));
        if (end == last) {
          if (best.cost < 0 || step < best.cost) {
            best.cost = step;
            best.cuts = cuts;
          }
        } else {
          self(self, end + 1, parts + 1, cuts | Mask{1} << (end - first), step);
        }
      }
    };
    walk(walk, first, 0, 0, model_.k_strc);
    return best;
  }

  Choice solve(std::size_t first, std::size_t last) {
    std::optional<Choice>& slot = memo_[first * n_ + last];
    if (slot) return *slot;
    const std::vector<Displacement> rel = relative(first, last);
    const std::size_t len = rel.size();

    std::optional<Choice> best;
    auto offer = [&](const Choice& c) {
      if (c.cost >= 0 && (!best || c.cost < best->cost)) best = c;
    };

    bool run = true;
    for (std::size_t k = 0; k < len && run; ++k) run = rel[k] == static_cast<Displacement>(k);
    if (run) offer({NodeKind::con, 0, 0, false, model_.k_con});

    for_each_repetition(rel, [&](std::size_t q, std::span<const Displacement> starts) {
      const Count c = static_cast<Count>(starts.size());
      const Cost child = this->best(first, first + q - 1);
      offer({NodeKind::idx, q, 0, false, checked_add(node_cost(NodeKind::idx, c, model_), child)});
      if (common_step(starts)) offer({NodeKind::vec, q, 0, false, checked_add(node_cost(NodeKind::vec, c, model_), child)});
      if (!extended_) return;
      for_each_grouping(starts, [&](Mask cuts, const Grouping& g) {
        const Count buckets = static_cast<Count>(g.sizes.size());
        offer({NodeKind::idxbuc, q, cuts, false, checked_add(node_cost(NodeKind::idxbuc, buckets, model_), child)});
        if (buckets == 1 || common_step(g.starts)) {
          offer({NodeKind::vecbuc, q, cuts, false, checked_add(node_cost(NodeKind::vecbuc, buckets, model_), child)});
        }
      });
    });

    if (len >= 2) offer(compose(first, last, 2));
    slot = best;
    return *best;
  }

  std::vector<Displacement> values_;
  std::size_t n_;
  CostModel model_;
  bool extended_;
  std::vector<std::optional<Choice>> memo_;
  std::vector<std::optional<Choice>> carriers_;
};

// Costs here may be unreachable: a lone nonzero displacement has no
// constructor of its own and needs a count-1 wrapper.
constexpr Cost kUnreachable = std::numeric_limits<Cost>::max();

Cost plus(Cost a, Cost b) { return a == kUnreachable || b == kUnreachable ? kUnreachable : checked_add(a, b); }

class FreeSearch {
 public:
  FreeSearch(const CostModel& model, Displacement window) : model_(model), window_(window) {}

  Cost best(const std::vector<Displacement>& x) {
    if (auto it = free_.find(x); it != free_.end()) return it->second;
    Cost result = base(x);
    const Cost translated = best_translate(x, &FreeSearch::base);
    result = std::min(result, plus(node_cost(NodeKind::idx, 1, model_), translated));
    result = std::min(result, plus(node_cost(NodeKind::strc, 1, model_), translated));
    free_.emplace(x, result);
    return result;
  }

 private:
  using Solver = Cost (FreeSearch::*)(const std::vector<Displacement>&);

  Cost best_translate(const std::vector<Displacement>& x, Solver solver) {
    Cost result = kUnreachable;
    for (Displacement z = -window_; z <= window_; ++z) {
      std::vector<Displacement> moved(x.size());
      for (std::size_t k = 0; k < x.size(); ++k) moved[k] = checked_add(checked_sub(x[k], x[0]), z);
      result = std::min(result, (this->*solver)(moved));
    }
    return result;
  }

  Cost base(const std::vector<Displacement>& x) {
    if (auto it = base_.find(x); it != base_.end()) return it->second;
    const std::size_t n = x.size();
    Cost result = kUnreachable;
    auto offer = [&](Cost c) { result = std::min(result, c); };

    bool run = true;
    for (std::size_t k = 0; k < n && run; ++k) run = x[k] == static_cast<Displacement>(k);
    if (run) offer(model_.k_con);

    for (std::size_t q = 1; q < n; ++q) {
      if (n % q != 0) continue;
      const Count c = static_cast<Count>(n / q);
      bool same_shape = true;
      std::vector<Displacement> starts;
      for (std::size_t b = 0; b < n && same_shape; b += q) {
        starts.push_back(x[b]);
        for (std::size_t k = 1; k < q && same_shape; ++k) {
          same_shape = checked_sub(x[b + k], x[b]) == checked_sub(x[k], x[0]);
        }
      }
      if (!same_shape) continue;
      const std::vector<Displacement> block(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(q));
      offer(plus(node_cost(NodeKind::idx, c, model_), best_translate(block, &FreeSearch::best)));
      if (common_step(starts)) offer(plus(node_cost(NodeKind::vec, c, model_), best(block)));
    }

    if (n >= 2) {
      const Mask limit = Mask{1} << (n - 1);
      for (Mask cuts = 1; cuts < limit; ++cuts) {
        const std::vector<std::size_t> starts = part_starts(n, cuts);
        Cost total = node_cost(NodeKind::strc, static_cast<Count>(starts.size()), model_);
        for (std::size_t p = 0; p < starts.size(); ++p) {
          const std::size_t end = p + 1 < starts.size() ? starts[p + 1] : n;
          const std::vector<Displacement> part(x.begin() + static_cast<std::ptrdiff_t>(starts[p]),
                                               x.begin() + static_cast<std::ptrdiff_t>(end));
          total = plus(total, best_translate(part, &FreeSearch::best));
        }
        offer(total);
      }
    }
    base_.emplace(x, result);
    return result;
  }

  CostModel model_;
  Displacement window_;
  std::map<std::vector<Displacement>, Cost> free_;
  std::map<std::vector<Displacement>, Cost> base_;
};

}  // namespace

std::optional<OracleResult> brute_force_optimal(const DisplacementSequence& seq, const CostModel& model,
                                                const OracleConfig& cfg) {
  check_size(seq.size(), cfg.max_n);
  if (seq.size() > 63) throw SizeLimitError("oracle masks hold at most 63 cuts");
  model.validate();
  NiceSearch search(seq, model, cfg.extended);
  const std::size_t n = seq.size();
  const Displacement shift = seq.front();

  std::optional<OracleResult> result;
  if (shift == 0) {
    result = OracleResult{search.tree(0, n - 1), search.best(0, n - 1)};
  } else {
    result = OracleResult{*shift_top_indexed(search.carrier_tree(n), shift), search.carrier(n).cost};
  }
  const Cost bound = cfg.max_cost.value_or(trivial_cost(n, model));
  if (result->cost > bound) return std::nullopt;
  return result;
}

Cost unrestricted_optimal_cost(const DisplacementSequence& seq, const CostModel& model, Displacement window,
                               std::size_t max_n) {
  check_size(seq.size(), max_n);
  model.validate();
  FreeSearch search(model, window);
  return search.best(std::vector<Displacement>(seq.begin(), seq.end()));
}

const char* to_string(Verdict verdict) noexcept {
  switch (verdict) {
    case Verdict::optimal: return "optimal";
    case Verdict::suboptimal: return "suboptimal";
    case Verdict::not_representing: return "not-representing";
  }
  return "unknown";
}

VerifyResult verify(const TypeNode& tree, const DisplacementSequence& seq, const CostModel& model,
                    const OracleConfig& cfg) {
  const Cost tree_cost = cost(tree, model);
  if (tree.length() != static_cast<Count>(seq.size()) || flatten(tree) != seq) {
    return {Verdict::not_representing, tree_cost, std::nullopt, std::nullopt};
  }
  OracleConfig search = cfg;
  search.extended = cfg.extended || contains_buckets(tree);
  search.max_cost = std::max(tree_cost, cfg.max_cost.value_or(trivial_cost(seq.size(), model)));
  const std::optional<OracleResult> best = brute_force_optimal(seq, model, search);
  if (best && best->cost < tree_cost) return {Verdict::suboptimal, tree_cost, best->cost, best->tree};
  return {Verdict::optimal, tree_cost, best ? best->cost : tree_cost, std::nullopt};
}

}  // namespace layoutrec
