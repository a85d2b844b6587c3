#include "layoutrec/segment_graph.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "layoutrec/checked.hpp"
#include "layoutrec/errors.hpp"

namespace layoutrec {

SegmentGraph::SegmentGraph(DisplacementSequence normal_form, CostModel model, bool extended)
    : seq_(std::move(normal_form)),
      model_(model),
      extended_(extended),
      n_(seq_.size()),
      solutions_(n_ * n_),
      weights_(n_ * n_, -1) {}

std::size_t SegmentGraph::slot(std::size_t from, std::size_t to) const {
  if (from >= to || to > n_) {
    throw ContractViolation("edge (" + std::to_string(from) + ", " + std::to_string(to) + ") out of range");
  }
  return from * n_ + (to - from - 1);
}

bool SegmentGraph::has_edge(std::size_t from, std::size_t to) const noexcept {
  return from < to && to <= n_ && weights_[from * n_ + (to - from - 1)] >= 0;
}

const CompactSolution& SegmentGraph::edge(std::size_t from, std::size_t to) const {
  const std::size_t s = slot(from, to);
  if (weights_[s] < 0) {
    throw ContractViolation("segment [" + std::to_string(from) + ", " + std::to_string(to - 1) +
                            "] has not been solved");
  }
  return solutions_[s];
}

Cost SegmentGraph::weight(std::size_t from, std::size_t to) const {
  const std::size_t s = slot(from, to);
  if (weights_[s] < 0) {
    throw ContractViolation("segment [" + std::to_string(from) + ", " + std::to_string(to - 1) +
                            "] has not been solved");
  }
  return weights_[s];
}

void SegmentGraph::set_edge(std::size_t from, std::size_t to, const CompactSolution& solution) {
  const std::size_t s = slot(from, to);
  solutions_[s] = solution;
  weights_[s] = checked_add(checked_mul(2, model_.k_lookup), solution.cost);
}

std::size_t SegmentGraph::entry_count() const noexcept {
  return static_cast<std::size_t>(std::count_if(weights_.begin(), weights_.end(), [](Cost w) { return w >= 0; }));
}

std::optional<GraphPath> SegmentGraph::shortest_strc_path(std::size_t from, std::size_t to) const {
  if (from >= to || to > n_) throw ContractViolation("shortest_strc_path: bad vertex range");
  const std::size_t len = to - from;
  if (len < 2) return std::nullopt;

  constexpr Cost kUnreached = std::numeric_limits<Cost>::max();
  std::vector<Cost> dist(len + 1, kUnreached);
  std::vector<std::size_t> pred(len + 1, 0);
  dist[0] = 0;
  for (std::size_t u = 0; u < len; ++u) {
    const Cost base = dist[u];
    if (base == kUnreached) continue;
    // Edges out of v_{from+u}: slot layout is contiguous by edge length.
    const Cost* row = weights_.data() + (from + u) * n_;
    const std::size_t reach = len - u;
    const std::size_t limit = u == 0 ? reach - 1 : reach;  // skip the direct edge
    for (std::size_t step = 1; step <= limit; ++step) {
      const Cost w = row[step - 1];
      if (w < 0) {
        throw ContractViolation("segment [" + std::to_string(from + u) + ", " +
                                std::to_string(from + u + step - 1) + "] has not been solved");
      }
      const Cost candidate = checked_add(base, w);
      if (candidate < dist[u + step]) {
        dist[u + step] = candidate;
        pred[u + step] = u;
      }
    }
  }

  GraphPath path;
  path.weight = dist[len];
  for (std::size_t v = len; v != 0; v = pred[v]) path.vertices.push_back(from + v);
  path.vertices.push_back(from);
  std::reverse(path.vertices.begin(), path.vertices.end());
  return path;
}

}  // namespace layoutrec
