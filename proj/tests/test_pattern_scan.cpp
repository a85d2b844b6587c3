#include <doctest.h>

#include <map>
#include <vector>

#include "layoutrec/errors.hpp"
#include "layoutrec/pattern_scan.hpp"
#include "layoutrec/tree_io.hpp"
#include "support/random_trees.hpp"

using namespace layoutrec;

namespace {

const DisplacementSequence kBlocks{0, 1, 2, 3, 4, 60, 56, 67, 50, 46, 57, 40, 36, 47, 30, 26, 37, 20, 16, 27};

bool repeated_on(const DisplacementSequence& seq, std::size_t block) {
  return repeated(SegmentView(seq, 0, seq.size() - 1), block);
}

// Independent bucket count for one substride: a new bucket starts wherever
// the consecutive difference is not the substride.
std::size_t buckets_for(const std::vector<Displacement>& values, Displacement substride) {
  std::size_t buckets = 1;
  for (std::size_t i = 1; i < values.size(); ++i) buckets += values[i] - values[i - 1] != substride;
  return buckets;
}

// All values a consecutive difference takes, i.e. every useful substride.
std::vector<Displacement> candidate_substrides(const std::vector<Displacement>& values) {
  std::vector<Displacement> out;
  for (std::size_t i = 1; i < values.size(); ++i) out.push_back(values[i] - values[i - 1]);
  return out;
}

std::vector<Displacement> random_values(testing::Rng& rng, std::size_t max_len) {
  std::vector<Displacement> v(static_cast<std::size_t>(testing::uniform(rng, 2, static_cast<std::int64_t>(max_len))));
  // Long runs of a few strides make bucket structure likely.
  const Displacement strides[3] = {testing::uniform(rng, -5, 5), testing::uniform(rng, -30, 30),
                                   testing::uniform(rng, -30, 30)};
  v[0] = testing::uniform(rng, -20, 20);
  for (std::size_t i = 1; i < v.size(); ++i) {
    const bool jump = testing::uniform(rng, 0, 3) == 0;
    v[i] = v[i - 1] + strides[jump ? testing::uniform(rng, 1, 2) : 0];
  }
  return v;
}

}  // namespace

TEST_CASE("repetition check") {
  CHECK(repeated_on({0, 2, 4, 6}, 2));
  CHECK(repeated_on({0, 1, 2, 3}, 2));
  CHECK_FALSE(repeated_on(kBlocks, 5));
  CHECK(repeated_on({0, 1, 10, 11, 3, 4}, 2));
  CHECK_FALSE(repeated_on({0, 1, 10, 12}, 2));
  CHECK(repeated_on({5, 5, 5}, 1));
  CHECK_THROWS_AS(repeated_on({0, 1, 2}, 2), ContractViolation);
  CHECK_THROWS_AS(repeated_on({0, 1, 2}, 3), ContractViolation);
}

TEST_CASE("stride check") {
  const std::vector<Displacement> a{3, 5, 7, 9, 11};
  const std::vector<Displacement> b{0, 2, 5};
  const std::vector<Displacement> c{7, 7, 7};
  const std::vector<Displacement> single{4};
  CHECK(strided(a) == 2);
  CHECK_FALSE(strided(b).has_value());
  CHECK(strided(c) == 0);
  CHECK_FALSE(strided(single).has_value());
}

TEST_CASE("proper divisors") {
  CHECK(proper_divisors(1).empty());
  CHECK(proper_divisors(7) == std::vector<std::size_t>{1});
  CHECK(proper_divisors(12) == std::vector<std::size_t>{1, 2, 3, 4, 6});
}

TEST_CASE("strided bucket examples") {
  const std::vector<Displacement> v{0, 2, 4, 10, 20, 22};
  const std::optional<BucketPattern> p = detect_strided_bucket(v);
  REQUIRE(p);
  CHECK(p->count == 3);
  CHECK(p->stride == 10);
  CHECK(p->substride == 2);
  CHECK(p->sizes == std::vector<Count>{3, 1, 2});
  CHECK(p->expand() == v);

  const std::vector<Displacement> uniform{0, 5, 10, 15};
  const std::optional<BucketPattern> u = detect_strided_bucket(uniform);
  REQUIRE(u);
  CHECK(u->count == 1);
  CHECK(u->substride == 5);
  CHECK(u->sizes == std::vector<Count>{4});
  CHECK(u->expand() == uniform);

  // The second bucket opens at 9 with the first step after the run.
  const std::vector<Displacement> two{0, 2, 4, 9};
  const std::optional<BucketPattern> t = detect_strided_bucket(two);
  REQUIRE(t);
  CHECK(t->count == 2);
  CHECK(t->stride == 9);
  CHECK(t->sizes == std::vector<Count>{3, 1});
  CHECK(t->expand() == two);

  const std::vector<Displacement> broken{0, 2, 4, 9, 11, 20};
  CHECK_FALSE(detect_strided_bucket(broken).has_value());

  // First bucket is a singleton: d from the first step, e from the next.
  const std::vector<Displacement> single_first{0, 10, 13, 20, 23, 26};
  const std::optional<BucketPattern> s = detect_strided_bucket(single_first);
  REQUIRE(s);
  CHECK(s->stride == 10);
  CHECK(s->substride == 3);
  CHECK(s->sizes == std::vector<Count>{1, 2, 3});
  CHECK(s->expand() == single_first);
}

TEST_CASE("indexed bucket examples") {
  const std::vector<Displacement> v{0, 5, 25, 30, 35, 40};
  const BucketPattern p = detect_indexed_bucket(v);
  CHECK(p.substride == 5);
  CHECK(p.count == 2);
  CHECK(p.indices == std::vector<Displacement>{0, 25});
  CHECK(p.sizes == std::vector<Count>{2, 4});
  CHECK(p.expand() == v);

  const std::vector<Displacement> mixed{0, 5, 25, 30, 35, 55};
  const BucketPattern m = detect_indexed_bucket(mixed);
  CHECK(m.substride == 5);
  CHECK(m.count == 3);
  CHECK(m.indices == std::vector<Displacement>{0, 25, 55});
  CHECK(m.sizes == std::vector<Count>{2, 3, 1});

  const std::vector<Displacement> run{0, 1, 2, 3};
  const BucketPattern r = detect_indexed_bucket(run);
  CHECK(r.substride == 1);
  CHECK(r.count == 1);
  CHECK(r.indices == std::vector<Displacement>{0});
  CHECK(r.sizes == std::vector<Count>{4});

  const std::vector<Displacement> tie{0, 10, 25};
  const BucketPattern t = detect_indexed_bucket(tie);
  CHECK(t.substride == 10);
  CHECK(t.sizes == std::vector<Count>{2, 1});

  const std::vector<Displacement> signed_tie{0, -3, 0};
  CHECK(detect_indexed_bucket(signed_tie).substride == -3);
}

TEST_CASE("detected patterns re-expand to their input") {
  testing::Rng rng(3);
  int strided_found = 0;
  for (int i = 0; i < 3000; ++i) {
    const std::vector<Displacement> v = random_values(rng, 14);
    const BucketPattern ib = detect_indexed_bucket(v);
    CHECK(ib.expand() == v);
    CHECK(static_cast<std::size_t>(ib.count) == ib.sizes.size());
    if (const std::optional<BucketPattern> sb = detect_strided_bucket(v)) {
      ++strided_found;
      CHECK(sb->expand() == v);
    }
  }
  CHECK(strided_found > 100);
}

TEST_CASE("indexed bucket count is minimal over all substrides") {
  testing::Rng rng(4);
  for (int i = 0; i < 3000; ++i) {
    const std::vector<Displacement> v = random_values(rng, 12);
    std::size_t best = v.size();
    for (Displacement e : candidate_substrides(v)) best = std::min(best, buckets_for(v, e));
    CHECK(static_cast<std::size_t>(detect_indexed_bucket(v).count) == best);
  }
}

TEST_CASE("repetition candidates") {
  // Optimal prefix trees for the examples below.
  auto prefix = [](const DisplacementSequence& seq) {
    return [&seq](std::size_t length) {
      const SegmentView p = SegmentView(seq, 0, seq.size() - 1).prefix(length);
      if (length == 1) return TypeNode::con(1);
      CHECK(p[length - 1] == static_cast<Displacement>(length - 1));
      return TypeNode::con(static_cast<Count>(length));
    };
  };
  const CostModel unit;

  const DisplacementSequence strided_seq{0, 2, 4, 6, 8};
  const std::optional<TypeNode> a = repetition_candidate(SegmentView(strided_seq, 0, 4), prefix(strided_seq), unit);
  REQUIRE(a);
  CHECK(render_tree(*a) == "vec(5,2,con(1))");
  CHECK(cost(*a, unit) == 2);

  const DisplacementSequence plain{0, 7, 9};
  const std::optional<TypeNode> b = repetition_candidate(SegmentView(plain, 0, 2), prefix(plain), unit);
  REQUIRE(b);
  CHECK(render_tree(*b) == "idx(3,[0,7,9],con(1))");
  CHECK(cost(*b, unit) == 5);

  const DisplacementSequence pairs{0, 1, 10, 11};
  const std::optional<TypeNode> c = repetition_candidate(SegmentView(pairs, 0, 3), prefix(pairs), unit);
  REQUIRE(c);
  CHECK(render_tree(*c) == "vec(2,10,con(2))");
  CHECK(cost(*c, unit) == 2);

  const DisplacementSequence lone{5};
  CHECK_FALSE(repetition_candidate(SegmentView(lone, 0, 0), prefix(lone), unit).has_value());
}

TEST_CASE("repetition shapes in extended mode") {
  // Blocks of two start at 0 2 4 | 30 32 with substride 2.
  const DisplacementSequence seq{0, 1, 2, 3, 4, 5, 30, 31, 32, 33};
  const std::vector<RepetitionShape> shapes = repetition_shapes(SegmentView(seq, 0, seq.size() - 1), true);
  bool has_idxbuc = false;
  for (const RepetitionShape& s : shapes) {
    if (s.kind != NodeKind::idxbuc || s.block != 2) continue;
    has_idxbuc = true;
    CHECK(s.count == 2);
    CHECK(s.substride == 2);
    const TypeNode node = build_repetition(SegmentView(seq, 0, seq.size() - 1), s, TypeNode::con(2));
    CHECK(flatten(node) == seq);
  }
  CHECK(has_idxbuc);
  for (const RepetitionShape& s : repetition_shapes(SegmentView(seq, 0, seq.size() - 1), false)) {
    CHECK_FALSE(is_bucket(s.kind));
  }
}
