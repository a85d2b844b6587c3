#include "layoutrec/reconstruct.hpp"

#include <exception>
#include <limits>
#include <map>
#include <thread>
#include <unordered_map>

#include "layoutrec/checked.hpp"
#include "layoutrec/errors.hpp"
#include "layoutrec/nice.hpp"
#include "layoutrec/pattern_scan.hpp"

namespace layoutrec {

namespace {

// Least cost wins; equal costs go to the simpler root kind. Earlier offers
// win remaining ties.
bool preferred(const CompactSolution& a, const CompactSolution& b) {
  return a.cost < b.cost || (a.cost == b.cost && preference_rank(a.kind) < preference_rank(b.kind));
}

void offer(std::optional<CompactSolution>& best, const CompactSolution& candidate) {
  if (!best || preferred(candidate, *best)) best = candidate;
}

CompactSolution from_shape(const RepetitionShape& shape, Cost cost) {
  return {shape.kind, shape.count, shape.block, shape.stride, shape.substride, cost};
}

void solve_segment(SegmentGraph& graph, std::size_t first, std::size_t last) {
  const CostModel& model = graph.model();
  const bool full = first == 0 && last + 1 == graph.size();
  std::optional<CompactSolution> best;
  if (graph.has_edge(first, last + 1)) best = graph.edge(first, last + 1);  // con run

  const SegmentView seg = graph.segment(first, last);
  for (const RepetitionShape& shape : repetition_shapes(seg, graph.extended())) {
    const Cost c = checked_add(shape.root_cost(model), graph.edge(first, first + shape.block).cost);
    const CompactSolution candidate = from_shape(shape, c);
    offer(best, candidate);
    if (full && has_indices(shape.kind)) offer(graph.full_span().best_indexed, candidate);
  }

  if (std::optional<GraphPath> path = graph.shortest_strc_path(first, last + 1)) {
    const CompactSolution candidate{NodeKind::strc, static_cast<Count>(path->vertices.size() - 1), 0, 0, 0,
                                    checked_add(model.k_strc, path->weight)};
    offer(best, candidate);
    if (full) graph.full_span().best_strc = candidate;
  }
  graph.set_edge(first, last + 1, *best);
}

template <class Fn>
void for_each_index(std::size_t count, unsigned threads, Fn&& fn) {
  if (threads <= 1 || count < 2 * static_cast<std::size_t>(threads)) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t i = t; i < count; i += threads) fn(i);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
  }
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

class Materializer {
 public:
  explicit Materializer(const SegmentGraph& graph) : graph_(graph) {}

  TypeNode segment(std::size_t first, std::size_t last) {
    const std::size_t key = first * graph_.size() + last;
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    const CompactSolution& sol = graph_.edge(first, last + 1);
    TypeNode tree = [&] {
      switch (sol.kind) {
        case NodeKind::con:
          return TypeNode::con(sol.count);
        case NodeKind::strc: {
          std::optional<TypeNode> t = strc(first, last);
          if (!t || cost(*t, graph_.model()) != sol.cost) {
            throw ContractViolation("strc solution of segment does not match its shortest path");
          }
          return *t;
        }
        default:
          return repetition(first, last, sol);
      }
    }();
    memo_.emplace(key, tree);
    return tree;
  }

  TypeNode repetition(std::size_t first, std::size_t last, const CompactSolution& sol) {
    const RepetitionShape shape{sol.kind, sol.block, sol.count, sol.stride, sol.substride};
    return build_repetition(graph_.segment(first, last), shape, segment(first, first + sol.block - 1));
  }

  std::optional<TypeNode> strc(std::size_t first, std::size_t last) {
    std::optional<GraphPath> path = graph_.shortest_strc_path(first, last + 1);
    if (!path) return std::nullopt;
    const DisplacementSequence& seq = graph_.sequence();
    std::vector<Displacement> indices;
    std::vector<TypeNode> children;
    for (std::size_t k = 0; k + 1 < path->vertices.size(); ++k) {
      const std::size_t u = path->vertices[k];
      indices.push_back(checked_sub(seq[u], seq[first]));
      children.push_back(segment(u, path->vertices[k + 1] - 1));
    }
    const auto parts = static_cast<Count>(children.size());
    return TypeNode::strc(parts, std::move(indices), std::move(children));
  }

 private:
  const SegmentGraph& graph_;
  std::unordered_map<std::size_t, TypeNode> memo_;
};

// Cheapest tree for the normalized prefix [0, length-1] whose root's unary
// chain ends in an indexed node, so that adding a shift to that node's
// indices shifts the whole tree. Count-1 wrappers are left to the caller:
// a wrapper below a vec node costs the same as one at the root.
class CarrierSearch {
 public:
  CarrierSearch(const SegmentGraph& graph, Materializer& materializer)
      : graph_(graph), materializer_(materializer) {}

  struct Carrier {
    Cost cost;
    TypeNode tree;
  };

  std::optional<Carrier> best(std::size_t length) {
    if (auto it = memo_.find(length); it != memo_.end()) return it->second;
    std::optional<Carrier> result = compute(length);
    memo_.emplace(length, result);
    return result;
  }

 private:
  enum class Source { repetition, strc, chain };

  std::optional<Carrier> compute(std::size_t length) {
    const CostModel& model = graph_.model();
    const SegmentView seg = graph_.segment(0, length - 1);
    const bool full = length == graph_.size();

    std::optional<CompactSolution> chosen;
    Source source = Source::repetition;
    std::optional<Carrier> chained_child;
    RepetitionShape chained_shape;

    auto take = [&](const CompactSolution& c, Source s) {
      if (!chosen || preferred(c, *chosen)) {
        chosen = c;
        source = s;
        return true;
      }
      return false;
    };

    if (full) {
      if (graph_.full_span().best_indexed) take(*graph_.full_span().best_indexed, Source::repetition);
      if (graph_.full_span().best_strc) take(*graph_.full_span().best_strc, Source::strc);
    }
    for (const RepetitionShape& shape : repetition_shapes(seg, graph_.extended())) {
      if (has_indices(shape.kind)) {
        if (!full) {
          const Cost c = checked_add(shape.root_cost(model), graph_.edge(0, shape.block).cost);
          take(from_shape(shape, c), Source::repetition);
        }
      } else if (std::optional<Carrier> sub = best(shape.block)) {
        const Cost c = checked_add(shape.root_cost(model), sub->cost);
        if (take(from_shape(shape, c), Source::chain)) {
          chained_child = std::move(sub);
          chained_shape = shape;
        }
      }
    }
    if (!full) {
      if (std::optional<GraphPath> path = graph_.shortest_strc_path(0, length)) {
        take({NodeKind::strc, static_cast<Count>(path->vertices.size() - 1), 0, 0, 0,
              checked_add(model.k_strc, path->weight)},
             Source::strc);
      }
    }

    if (!chosen) return std::nullopt;
    switch (source) {
      case Source::repetition:
        return Carrier{chosen->cost, materializer_.repetition(0, length - 1, *chosen)};
      case Source::strc:
        return Carrier{chosen->cost, *materializer_.strc(0, length - 1)};
      case Source::chain:
        return Carrier{chosen->cost, build_repetition(seg, chained_shape, chained_child->tree)};
    }
    return std::nullopt;
  }

  const SegmentGraph& graph_;
  Materializer& materializer_;
  std::map<std::size_t, std::optional<Carrier>> memo_;
};

}  // namespace

std::optional<TypeNode> strc_candidate(const SegmentGraph& graph, std::size_t first, std::size_t last) {
  Materializer materializer(graph);
  return materializer.strc(first, last);
}

SegmentGraph solve_normal_form(const DisplacementSequence& seq, const ReconstructOptions& options) {
  if (!seq.is_normal_form()) throw ContractViolation("solve_normal_form expects a sequence starting at 0");
  options.model.validate();
  SegmentGraph graph(seq, options.model, options.extended);
  const std::size_t n = seq.size();

  // Runs of consecutive displacements are con leaves.
  for (std::size_t i = 0; i < n; ++i) {
    graph.set_edge(i, i + 1, {NodeKind::con, 1, 0, 0, 0, options.model.k_con});
    for (std::size_t j = i + 1; j < n && checked_sub(seq[j], seq[j - 1]) == 1; ++j) {
      graph.set_edge(i, j + 1, {NodeKind::con, static_cast<Count>(j - i + 1), 0, 0, 0, options.model.k_con});
    }
  }

  // A path for a length-l segment cannot use another length-l edge, so all
  // segments of one length are independent.
  for (std::size_t len = 2; len <= n; ++len) {
    for_each_index(n - len + 1, options.threads,
                   [&](std::size_t first) { solve_segment(graph, first, first + len - 1); });
  }
  return graph;
}

TypeNode materialize(const SegmentGraph& graph, std::size_t first, std::size_t last) {
  Materializer materializer(graph);
  return materializer.segment(first, last);
}

TypeNode materialize(const SegmentGraph& graph) { return materialize(graph, 0, graph.size() - 1); }

TypeNode denormalize(const DisplacementSequence& original, const SegmentGraph& graph) {
  if (original.size() != graph.size()) throw ContractViolation("denormalize: graph solves a different sequence");
  const Displacement shift = original.front();
  Materializer materializer(graph);
  TypeNode normal = materializer.segment(0, graph.size() - 1);
  if (shift == 0) return normal;
  if (std::optional<TypeNode> shifted = shift_top_indexed(normal, shift)) return *shifted;

  const CostModel& model = graph.model();
  const Cost normal_cost = graph.edge(0, graph.size()).cost;
  CarrierSearch search(graph, materializer);

  std::optional<TypeNode> best;
  Cost best_cost = 0;
  auto take = [&](Cost c, auto&& build) {
    if (!best || c < best_cost ||
        (c == best_cost && preference_rank(NodeKind::idx) < preference_rank(best->kind()))) {
      best = build();
      best_cost = c;
    }
  };
  if (std::optional<CarrierSearch::Carrier> carrier = search.best(graph.size())) {
    best = *shift_top_indexed(carrier->tree, shift);
    best_cost = carrier->cost;
  }
  take(checked_add(node_cost(NodeKind::idx, 1, model), normal_cost),
       [&] { return TypeNode::idx(1, {shift}, normal); });
  const Cost strc_wrap = checked_add(node_cost(NodeKind::strc, 1, model), normal_cost);
  if (!best || strc_wrap < best_cost) best = TypeNode::strc(1, {shift}, {normal});
  return *best;
}

ReconstructionReport reconstruct(const DisplacementSequence& seq, const ReconstructOptions& options) {
  if (seq.size() > options.max_n) {
    throw SizeLimitError("input length " + std::to_string(seq.size()) + " exceeds the limit of " +
                         std::to_string(options.max_n));
  }
  options.model.validate();
  const auto start = std::chrono::steady_clock::now();

  const DisplacementSequence normal = seq.normal_form();
  const SegmentGraph graph = solve_normal_form(normal, options);
  TypeNode tree = denormalize(seq, graph);

  const Cost tree_cost = cost(tree, options.model);
  const Cost baseline = trivial_cost(seq.size(), options.model);
  return ReconstructionReport{
      .n = seq.size(),
      .tree = std::move(tree),
      .cost = tree_cost,
      .trivial_cost = baseline,
      .compression_ratio = tree_cost == 0 ? std::numeric_limits<double>::infinity()
                                          : static_cast<double>(baseline) / static_cast<double>(tree_cost),
      .wall_time = std::chrono::steady_clock::now() - start,
      .table_entries = graph.entry_count(),
  };
}

}  // namespace layoutrec
