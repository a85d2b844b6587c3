#include <doctest.h>

#include <limits>
#include <string>

#include "layoutrec/checked.hpp"
#include "layoutrec/cost_model.hpp"
#include "layoutrec/errors.hpp"
#include "layoutrec/nice.hpp"
#include "layoutrec/sequence_io.hpp"
#include "layoutrec/tree_io.hpp"
#include "layoutrec/type_node.hpp"
#include "support/random_trees.hpp"

using namespace layoutrec;

namespace {

const DisplacementSequence kBlocks{0, 1, 2, 3, 4, 60, 56, 67, 50, 46, 57, 40, 36, 47, 30, 26, 37, 20, 16, 27};

TypeNode blocks_tree() {
  return TypeNode::strc(
      2, {0, 60},
      {TypeNode::con(5), TypeNode::vec(5, -10, TypeNode::idx(3, {0, -4, 7}, TypeNode::con(1)))});
}

TypeNode trivial(const DisplacementSequence& seq) {
  return TypeNode::idx(static_cast<Count>(seq.size()), {seq.begin(), seq.end()}, TypeNode::con(1));
}

}  // namespace

TEST_CASE("flatten follows the constructor semantics") {
  CHECK(flatten(TypeNode::con(5)) == DisplacementSequence{0, 1, 2, 3, 4});
  CHECK(flatten(TypeNode::idx(1, {3}, TypeNode::vec(5, 2, TypeNode::con(1)))) ==
        DisplacementSequence{3, 5, 7, 9, 11});
  CHECK(flatten(blocks_tree()) == kBlocks);
  CHECK(flatten(TypeNode::con(2), 10) == DisplacementSequence{10, 11});
}

TEST_CASE("bucket constructors expand per bucket") {
  // Buckets start at 0, 10, 20 and hold 3, 1, 2 copies spaced by 2.
  const TypeNode vb = TypeNode::vecbuc(3, 10, 2, {3, 1, 2}, TypeNode::con(1));
  CHECK(flatten(vb) == DisplacementSequence{0, 2, 4, 10, 20, 22});
  CHECK(vb.length() == 6);
  const TypeNode ib = TypeNode::idxbuc(2, 5, {0, 25}, {2, 4}, TypeNode::con(2));
  CHECK(flatten(ib) == DisplacementSequence{0, 1, 5, 6, 25, 26, 30, 31, 35, 36, 40, 41});
}

TEST_CASE("unit-model costs") {
  const CostModel unit;
  CHECK(cost(TypeNode::con(5), unit) == 1);
  CHECK(cost(trivial(kBlocks), unit) == 22);
  CHECK(trivial_cost(20, unit) == 22);
  CHECK(cost(blocks_tree(), unit) == 12);
  CHECK(cost(TypeNode::vecbuc(3, 10, 2, {3, 1, 2}, TypeNode::con(1)), unit) == 1 + 3 + 1);
  CHECK(cost(TypeNode::idxbuc(2, 5, {0, 25}, {2, 4}, TypeNode::con(1)), unit) == 1 + 4 + 1);
}

TEST_CASE("costs under a weighted model") {
  const CostModel model = CostModel::parse("k_con=2,k_vec=3,k_idx=5,k_strc=7,k_lookup=11,k_vecbuc=13,k_idxbuc=17");
  CHECK(node_cost(NodeKind::con, 4, model) == 2);
  CHECK(node_cost(NodeKind::vec, 4, model) == 3);
  CHECK(node_cost(NodeKind::idx, 4, model) == 5 + 44);
  CHECK(node_cost(NodeKind::strc, 4, model) == 7 + 88);
  CHECK(node_cost(NodeKind::vecbuc, 4, model) == 13 + 44);
  CHECK(node_cost(NodeKind::idxbuc, 4, model) == 17 + 88);
  CHECK(cost(blocks_tree(), model) == (7 + 44) + 2 + 3 + (5 + 33) + 2);
  CHECK(blocks_tree().profile().evaluate(model) == cost(blocks_tree(), model));
}

TEST_CASE("cost model parsing") {
  CHECK(CostModel::parse("") == CostModel{});
  const CostModel m = CostModel::parse("k_lookup=4, k_con=0");
  CHECK(m.k_lookup == 4);
  CHECK(m.k_con == 0);
  CHECK(m.k_vec == 1);
  CHECK(CostModel::parse(m.to_string()) == m);
  CHECK_THROWS_AS(CostModel::parse("k_foo=1"), std::invalid_argument);
  CHECK_THROWS_AS(CostModel::parse("k_con=-1"), std::invalid_argument);
  CHECK_THROWS_AS(CostModel::parse("k_con"), std::invalid_argument);
}

TEST_CASE("factories reject invalid nodes") {
  CHECK_THROWS_AS(TypeNode::con(0), InvalidTree);
  CHECK_THROWS_AS(TypeNode::idx(2, {0}, TypeNode::con(1)), InvalidTree);
  CHECK_THROWS_AS(TypeNode::strc(2, {0, 1}, {TypeNode::con(1)}), InvalidTree);
  CHECK_THROWS_AS(TypeNode::vec(0, 1, TypeNode::con(1)), InvalidTree);
  CHECK_THROWS_AS(TypeNode::vecbuc(2, 1, 1, {1, 0}, TypeNode::con(1)), InvalidTree);
  CHECK_THROWS_AS(TypeNode::idxbuc(2, 1, {0, 5}, {1}, TypeNode::con(1)), InvalidTree);
  CHECK_THROWS_AS(TypeNode::con(1).child(), ContractViolation);
}

TEST_CASE("flattened length overflow is detected") {
  const Count big = std::numeric_limits<Count>::max() / 2;
  CHECK_THROWS_AS(TypeNode::vec(4, 1, TypeNode::con(big)), OverflowError);
  CHECK_THROWS_AS(flatten(TypeNode::vec(3, std::numeric_limits<Displacement>::max(), TypeNode::con(1))),
                  OverflowError);
}

TEST_CASE("checked arithmetic") {
  constexpr auto max = std::numeric_limits<std::int64_t>::max();
  CHECK(checked_add(2, 3) == 5);
  CHECK_THROWS_AS(checked_add(max, 1), OverflowError);
  CHECK_THROWS_AS(checked_sub(-max, 2), OverflowError);
  CHECK_THROWS_AS(checked_mul(max, 2), OverflowError);
}

TEST_CASE("sequences") {
  CHECK_THROWS_AS(DisplacementSequence(std::vector<Displacement>{}), std::invalid_argument);
  const DisplacementSequence s{3, 5, 3};
  CHECK(s.has_duplicates());
  CHECK_FALSE(s.is_normal_form());
  CHECK(s.normal_form() == DisplacementSequence{0, 2, 0});
  CHECK_THROWS_AS(DisplacementSequence({std::numeric_limits<Displacement>::min(), 1}).normal_form(), OverflowError);
  const SegmentView view(kBlocks, 5, 9);
  CHECK(view.size() == 5);
  CHECK(view.offset() == 60);
  CHECK(view.values() == std::vector<Displacement>{0, -4, 7, -10, -14});
  CHECK(view.prefix(2).values() == std::vector<Displacement>{0, -4});
  CHECK_THROWS_AS(SegmentView(kBlocks, 3, 20), ContractViolation);
}

TEST_CASE("tree text grammar") {
  CHECK(parse_tree("con(5)") == TypeNode::con(5));
  const std::string blocks = "strc(2,[0,60],[con(5),vec(5,-10,idx(3,[0,-4,7],con(1)))])";
  CHECK(parse_tree(blocks) == blocks_tree());
  CHECK(render_tree(blocks_tree()) == blocks);
  CHECK(parse_tree(" idx( 2 , [0, 3] ,\n con(3))") == TypeNode::idx(2, {0, 3}, TypeNode::con(3)));
  CHECK(parse_tree("vecbuc(3,10,2,[3,1,2],con(1))") == TypeNode::vecbuc(3, 10, 2, {3, 1, 2}, TypeNode::con(1)));
  CHECK(parse_tree("idxbuc(2,5,[0,25],[2,4],con(1))") == TypeNode::idxbuc(2, 5, {0, 25}, {2, 4}, TypeNode::con(1)));
}

TEST_CASE("tree grammar errors carry offsets") {
  try {
    parse_tree("idx(2,[0],con(1))");
    FAIL("expected InvalidTree");
  } catch (const InvalidTree& e) {
    CHECK(std::string(e.what()).find("indices length 1") != std::string::npos);
  }
  try {
    parse_tree("vec(2,1,con(1)");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 14);
  }
  CHECK_THROWS_AS(parse_tree("tree(1)"), ParseError);
  CHECK_THROWS_AS(parse_tree("con(1) con(2)"), ParseError);
  CHECK_THROWS_AS(parse_tree("con(99999999999999999999)"), ParseError);
  CHECK_THROWS_AS(parse_tree(""), ParseError);
}

TEST_CASE("json and dot rendering") {
  const TypeNode tree = TypeNode::vecbuc(2, 7, 1, {2, 1}, blocks_tree());
  CHECK(tree_from_json(tree_to_json(tree)) == tree);
  CHECK(tree_from_json(nlohmann::json::parse(render_tree(tree, TreeFormat::json))) == tree);
  CHECK_THROWS_AS(tree_from_json(nlohmann::json::parse(R"({"kind":"con"})")), ParseError);
  const std::string dot = render_tree(blocks_tree(), TreeFormat::dot);
  CHECK(dot.rfind("digraph layout", 0) == 0);
  CHECK(dot.find("con(5)") != std::string::npos);
  CHECK(tree_format_from_string("json") == TreeFormat::json);
  CHECK_FALSE(tree_format_from_string("xml").has_value());
}

TEST_CASE("random trees survive text and json round trips") {
  testing::TreeGenerator gen(11);
  for (int i = 0; i < 300; ++i) {
    const TypeNode tree = gen.tree(64);
    CHECK(parse_tree(render_tree(tree)) == tree);
    CHECK(tree_from_json(tree_to_json(tree)) == tree);
  }
}

TEST_CASE("displacement files") {
  CHECK(parse_displacements("0 1 2 3") == DisplacementSequence{0, 1, 2, 3});
  CHECK(parse_displacements("3,5,7,9,11\n") == DisplacementSequence{3, 5, 7, 9, 11});
  CHECK(parse_displacements("# header\n -4, +2 # tail\n\t7") == DisplacementSequence{-4, 2, 7});
  CHECK(render_displacements(DisplacementSequence{1, -2}) == "1\n-2\n");
  CHECK(parse_displacements(render_displacements(kBlocks)) == kBlocks);
  try {
    parse_displacements("1 2\n 3 x");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 2, column 4") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_displacements("# nothing\n"), ParseError);
  CHECK_THROWS_AS(parse_displacements("99999999999999999999"), ParseError);
}

TEST_CASE("nice rewrite examples") {
  const TypeNode a = TypeNode::strc(2, {0, 10}, {TypeNode::con(1), TypeNode::idx(2, {5, 8}, TypeNode::con(1))});
  const TypeNode a_nice = TypeNode::strc(2, {0, 15}, {TypeNode::con(1), TypeNode::idx(2, {0, 3}, TypeNode::con(1))});
  CHECK(make_nice(a) == a_nice);
  CHECK(flatten(a_nice) == DisplacementSequence{0, 15, 18});

  const TypeNode b = TypeNode::idx(2, {4, 9}, TypeNode::idx(2, {1, 3}, TypeNode::con(1)));
  const TypeNode b_nice = TypeNode::idx(2, {5, 10}, TypeNode::idx(2, {0, 2}, TypeNode::con(1)));
  CHECK(make_nice(b) == b_nice);
  CHECK(flatten(b_nice) == DisplacementSequence{5, 7, 10, 12});

  CHECK(make_nice(blocks_tree()) == blocks_tree());
  CHECK_FALSE(is_nice(a));
  CHECK(is_nice(a_nice));
  CHECK_THROWS_AS(make_nice(TypeNode::vecbuc(1, 0, 1, {2}, TypeNode::con(1))), InvalidTree);
}

TEST_CASE("nice rewrite preserves flattening and cost") {
  testing::TreeGenerator gen(5, false);
  const CostModel weighted = CostModel::parse("k_con=2,k_vec=1,k_idx=3,k_strc=4,k_lookup=2");
  for (int i = 0; i < 500; ++i) {
    const TypeNode tree = gen.tree(96);
    const TypeNode nice = make_nice(tree);
    CHECK(is_nice(nice));
    CHECK(flatten(nice) == flatten(tree));
    CHECK(cost(nice, CostModel{}) == cost(tree, CostModel{}));
    CHECK(cost(nice, weighted) == cost(tree, weighted));
    CHECK(make_nice(nice) == nice);
  }
}

TEST_CASE("shifting the top indexed node") {
  const TypeNode tree = TypeNode::vec(2, 5, TypeNode::idx(2, {0, 2}, TypeNode::con(1)));
  const TypeNode* top = top_indexed_node(tree);
  REQUIRE(top != nullptr);
  CHECK(top->kind() == NodeKind::idx);
  const std::optional<TypeNode> moved = shift_top_indexed(tree, 7);
  REQUIRE(moved);
  CHECK(flatten(*moved) == flatten(tree, 7));
  CHECK_FALSE(shift_top_indexed(TypeNode::vec(2, 1, TypeNode::con(1)), 3).has_value());
  CHECK(top_indexed_node(blocks_tree())->kind() == NodeKind::strc);
}
