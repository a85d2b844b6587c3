#include "layoutrec/pattern_scan.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "layoutrec/checked.hpp"
#include "layoutrec/errors.hpp"

namespace layoutrec {

std::vector<Displacement> BucketPattern::expand() const {
  std::vector<Displacement> out;
  for (Count i = 0; i < count; ++i) {
    const Displacement start = kind == Kind::strided ? checked_add(origin, checked_mul(i, stride))
                                                     : indices[static_cast<std::size_t>(i)];
    for (Count k = 0; k < sizes[static_cast<std::size_t>(i)]; ++k) {
      out.push_back(checked_add(start, checked_mul(k, substride)));
    }
  }
  return out;
}

bool repeated(const SegmentView& seg, std::size_t block) {
  const std::size_t n = seg.size();
  if (block < 1 || block >= n || n % block != 0) {
    throw ContractViolation("repeated: block " + std::to_string(block) + " is not a proper divisor of " +
                            std::to_string(n));
  }
  for (std::size_t i = block; i < n; i += block) {
    const Displacement start = seg[i];
    for (std::size_t j = 1; j < block; ++j) {
      if (seg[j] != checked_sub(seg[i + j], start)) return false;
    }
  }
  return true;
}

std::optional<Displacement> strided(std::span<const Displacement> values) {
  if (values.size() < 2) return std::nullopt;
  const Displacement d = checked_sub(values[1], values[0]);
  for (std::size_t i = 2; i < values.size(); ++i) {
    if (checked_sub(values[i], values[i - 1]) != d) return std::nullopt;
  }
  return d;
}

namespace {

// Full scan for fixed (stride, substride). A value at distance `stride` from
// the current bucket start opens the next bucket; otherwise it must continue
// the current bucket at distance `substride` from its predecessor.
std::optional<BucketPattern> scan_strided(std::span<const Displacement> v, Displacement stride,
                                          Displacement substride) {
  BucketPattern p;
  p.kind = BucketPattern::Kind::strided;
  p.origin = v[0];
  p.stride = stride;
  p.substride = substride;
  p.sizes.push_back(1);
  std::size_t start = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (checked_sub(v[i], v[start]) == stride) {
      start = i;
      p.sizes.push_back(1);
    } else if (checked_sub(v[i], v[i - 1]) == substride) {
      ++p.sizes.back();
    } else {
      return std::nullopt;
    }
  }
  p.count = static_cast<Count>(p.sizes.size());
  return p;
}

}  // namespace

std::optional<BucketPattern> detect_strided_bucket(std::span<const Displacement> v) {
  if (v.size() < 2) throw ContractViolation("detect_strided_bucket needs at least two values");

  std::optional<BucketPattern> best;
  auto consider = [&best](std::optional<BucketPattern> p) {
    if (p && (!best || p->count < best->count)) best = std::move(p);
  };

  // First bucket holds more than one element: the substride is the first step
  // and the first step that breaks it fixes the bucket stride.
  {
    const Displacement e = checked_sub(v[1], v[0]);
    std::size_t i = 2;
    while (i < v.size() && checked_sub(v[i], v[i - 1]) == e) ++i;
    if (i == v.size()) {
      BucketPattern whole;
      whole.kind = BucketPattern::Kind::strided;
      whole.count = 1;
      whole.origin = v[0];
      whole.substride = e;
      whole.sizes = {static_cast<Count>(v.size())};
      return whole;
    }
    consider(scan_strided(v, checked_sub(v[i], v[0]), e));
  }

  // First bucket is a singleton: the first step is the bucket stride and the
  // first step that breaks it is an in-bucket step.
  {
    const Displacement d = checked_sub(v[1], v[0]);
    std::size_t i = 2;
    while (i < v.size() && checked_sub(v[i], v[i - 1]) == d) ++i;
    if (i < v.size()) consider(scan_strided(v, d, checked_sub(v[i], v[i - 1])));
  }
  return best;
}

BucketPattern detect_indexed_bucket(std::span<const Displacement> v) {
  if (v.size() < 2) throw ContractViolation("detect_indexed_bucket needs at least two values");

  auto stride_order = [](Displacement a, Displacement b) {
    auto magnitude = [](Displacement x) {
      const auto u = static_cast<std::uint64_t>(x);
      return x < 0 ? 0 - u : u;
    };
    const std::uint64_t abs_a = magnitude(a);
    const std::uint64_t abs_b = magnitude(b);
    return abs_a != abs_b ? abs_a < abs_b : a < b;
  };
  std::map<Displacement, std::size_t, decltype(stride_order)> occurrences(stride_order);
  for (std::size_t i = 1; i < v.size(); ++i) ++occurrences[checked_sub(v[i], v[i - 1])];

  Displacement e = occurrences.begin()->first;
  std::size_t most = 0;
  for (const auto& [stride, n] : occurrences) {
    if (n > most) {
      most = n;
      e = stride;
    }
  }

  BucketPattern p;
  p.kind = BucketPattern::Kind::indexed;
  p.substride = e;
  p.indices.push_back(v[0]);
  p.sizes.push_back(1);
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (checked_sub(v[i], v[i - 1]) == e) {
      ++p.sizes.back();
    } else {
      p.indices.push_back(v[i]);
      p.sizes.push_back(1);
    }
  }
  p.count = static_cast<Count>(p.sizes.size());
  return p;
}

std::vector<std::size_t> proper_divisors(std::size_t n) {
  std::vector<std::size_t> small;
  std::vector<std::size_t> large;
  for (std::size_t q = 1; q * q <= n; ++q) {
    if (n % q != 0) continue;
    small.push_back(q);
    if (q * q != n) large.push_back(n / q);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  if (!small.empty() && small.back() == n) small.pop_back();
  return small;
}

namespace {

std::vector<Displacement> block_starts(const SegmentView& seg, std::size_t block) {
  std::vector<Displacement> starts;
  starts.reserve(seg.size() / block);
  for (std::size_t i = 0; i < seg.size(); i += block) starts.push_back(seg[i]);
  return starts;
}

}  // namespace

std::vector<RepetitionShape> repetition_shapes(const SegmentView& seg, bool extended) {
  std::vector<RepetitionShape> shapes;
  const std::size_t n = seg.size();
  if (n < 2) return shapes;
  for (std::size_t q : proper_divisors(n)) {
    if (!repeated(seg, q)) continue;
    const Count c = static_cast<Count>(n / q);
    const std::vector<Displacement> starts = block_starts(seg, q);
    if (std::optional<Displacement> d = strided(starts)) {
      shapes.push_back({NodeKind::vec, q, c, *d, 0});
    }
    shapes.push_back({NodeKind::idx, q, c, 0, 0});
    if (extended) {
      if (std::optional<BucketPattern> b = detect_strided_bucket(starts)) {
        shapes.push_back({NodeKind::vecbuc, q, b->count, b->stride, b->substride});
      }
      const BucketPattern b = detect_indexed_bucket(starts);
      shapes.push_back({NodeKind::idxbuc, q, b.count, 0, b.substride});
    }
  }
  return shapes;
}

TypeNode build_repetition(const SegmentView& seg, const RepetitionShape& shape, TypeNode prefix_tree) {
  switch (shape.kind) {
    case NodeKind::vec:
      return TypeNode::vec(shape.count, shape.stride, std::move(prefix_tree));
    case NodeKind::idx:
      return TypeNode::idx(shape.count, block_starts(seg, shape.block), std::move(prefix_tree));
    case NodeKind::vecbuc: {
      std::optional<BucketPattern> b = detect_strided_bucket(block_starts(seg, shape.block));
      if (!b || b->count != shape.count) throw ContractViolation("strided bucket shape no longer matches");
      return TypeNode::vecbuc(b->count, b->stride, b->substride, std::move(b->sizes), std::move(prefix_tree));
    }
    case NodeKind::idxbuc: {
      BucketPattern b = detect_indexed_bucket(block_starts(seg, shape.block));
      if (b.count != shape.count) throw ContractViolation("indexed bucket shape no longer matches");
      return TypeNode::idxbuc(b.count, b.substride, std::move(b.indices), std::move(b.sizes),
                              std::move(prefix_tree));
    }
    default:
      break;
  }
  throw ContractViolation("not a repetition kind: " + std::string(to_string(shape.kind)));
}

std::optional<TypeNode> repetition_candidate(const SegmentView& seg, const PrefixSolutions& prefix_solutions,
                                             const CostModel& model, bool extended) {
  std::optional<TypeNode> best;
  Cost best_cost = 0;
  std::map<std::size_t, TypeNode> prefixes;
  for (const RepetitionShape& shape : repetition_shapes(seg, extended)) {
    auto it = prefixes.find(shape.block);
    if (it == prefixes.end()) it = prefixes.emplace(shape.block, prefix_solutions(shape.block)).first;
    const Cost c = checked_add(shape.root_cost(model), cost(it->second, model));
    if (!best || c < best_cost ||
        (c == best_cost && preference_rank(shape.kind) < preference_rank(best->kind()))) {
      best = build_repetition(seg, shape, it->second);
      best_cost = c;
    }
  }
  return best;
}

}  // namespace layoutrec
