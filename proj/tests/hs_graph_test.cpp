#include <gtest/gtest.h>

#include "olc/algorithms.hpp"
#include "olc/hs_graph.hpp"

using namespace olc;

namespace {

// Table 1 of the progress-matrix example: vertex i+1 at (row, column).
std::vector<HsGraph::Placement> table_one() {
  return {{1, 1}, {2, 2}, {1, 3}, {3, 3}, {1, 4}, {4, 1}, {1, 5}, {5, 6},
          {3, 7}, {2, 6}, {4, 7}, {2, 8}, {3, 8}, {5, 9}, {3, 2}};
}

}  // namespace

TEST(HsRows, FloorLogPlusThree) {
  EXPECT_EQ(hs_rows(64), 9);
  EXPECT_EQ(hs_rows(2), 4);
  EXPECT_EQ(hs_rows(3), 4);
  EXPECT_EQ(hs_rows(4), 5);
  EXPECT_EQ(hs_rows(8), 6);
  EXPECT_EQ(hs_rows(16), 7);
}

TEST(NewHs, InitialState) {
  HsGraph g(2, 64);
  EXPECT_EQ(g.b(), 9);
  EXPECT_EQ(g.active_rows(), (std::set<int>{1, 2, 3, 4, 5, 6, 7, 8, 9}));
  EXPECT_EQ(g.round(), 0);
  HsGraph small(1, 2);
  EXPECT_EQ(small.b(), 4);
  EXPECT_THROW(HsGraph(2, 1), BadParameter);
  EXPECT_THROW(HsGraph(0, 8), BadParameter);
}

TEST(GameLength, Examples) {
  EXPECT_TRUE(game_length_check(4, 2));
  EXPECT_TRUE(game_length_check(9, 64));
  EXPECT_TRUE(game_length_check(9, 837));
  EXPECT_FALSE(game_length_check(9, 838));
  EXPECT_TRUE(game_length_check(4, 16));
  EXPECT_FALSE(game_length_check(4, 17));
}

TEST(GuaranteeColumns, Examples) {
  EXPECT_EQ(guarantee_hs_columns(64, 9), 16);
  EXPECT_EQ(guarantee_hs_columns(4, 4), 2);
  EXPECT_EQ(guarantee_hs_columns(2, 4), 1);
  EXPECT_EQ(paper_bound_hs(64), 15);
}

TEST(ChoosePattern, FreshStatePicksSmallestRow) {
  EXPECT_EQ(HsGraph(std::nullopt, 64).choose_pattern(), (Pattern{1}));
  EXPECT_EQ(HsGraph(3, 10).choose_pattern(), (Pattern{1}));
}

TEST(ChoosePattern, TableOneState) {
  // b = 4 needs n in {2, 3}; the example's 15 rounds are replayed as placements.
  const HsGraph g = HsGraph::restore(4, 3, table_one(), {2, 4, 5, 6});
  EXPECT_EQ(g.depleted_rows(), (std::set<int>{1, 3}));
  EXPECT_TRUE(g.is_present({2, 5}));
  EXPECT_TRUE(g.is_present({5}));
  EXPECT_FALSE(g.is_present({2}));
  EXPECT_EQ(g.column_pattern(6), (Pattern{2, 5}));
  EXPECT_EQ(g.column_pattern(9), (Pattern{5}));
  EXPECT_EQ(g.choose_pattern(), (Pattern{2}));
}

TEST(MakeVertex, TableOneAdjacency) {
  HsGraph g = HsGraph::restore(4, 3, table_one(), {2, 4, 5, 6});
  const std::vector<int> adj = g.make_vertex({2});
  // Rows 1, 3, 4, 5 of the table hold 12 vertices; v2, v10, v12 sit in row 2.
  EXPECT_EQ(adj, (std::vector<int>{1, 3, 4, 5, 6, 7, 8, 9, 11, 13, 14, 15}));
}

TEST(MakeVertex, RoundOneHasNoNeighbors) {
  HsGraph g(std::nullopt, 8);
  EXPECT_TRUE(g.make_vertex({1}).empty());
}

TEST(MakeVertex, AdjacentExactlyToOtherPresenterColors) {
  HsGraph g(std::nullopt, 16);
  g.make_vertex({1});
  g.respond(0);
  g.make_vertex({2});
  g.respond(1);
  EXPECT_EQ(g.make_vertex({1, 3}), (std::vector<int>{2}));
}

TEST(MakeVertex, RejectsPresentOrInactivePattern) {
  HsGraph g = HsGraph::restore(4, 3, table_one(), {2, 4, 5, 6});
  EXPECT_THROW(g.make_vertex({2, 5}), BadParameter);
  EXPECT_THROW(g.make_vertex({1}), BadParameter);
  EXPECT_THROW(g.make_vertex({2, 4, 5}), BadParameter);
}

TEST(Respond, RoundOne) {
  HsGraph g(2, 16);
  g.next_vertex();
  EXPECT_EQ(g.respond(0), 1);
}

TEST(Respond, SmallestFreeRowOfPattern) {
  HsGraph g = HsGraph::restore(std::nullopt, 64, {{5, 0}}, {1, 2, 3, 4, 5, 6, 7, 8, 9});
  EXPECT_TRUE(g.make_vertex({2, 5}).empty());
  EXPECT_EQ(g.respond(0), 2);
  EXPECT_EQ(g.column_pattern(0), (Pattern{2, 5}));
}

TEST(Respond, NeighborColorIsIllegal) {
  HsGraph g(std::nullopt, 16);
  g.next_vertex();
  g.respond(0);
  const auto adj = g.next_vertex();
  ASSERT_EQ(adj, (std::vector<int>{1}));
  EXPECT_THROW(g.respond(0), IllegalAlgorithmMove);
  EXPECT_THROW(g.respond(-1), IllegalAlgorithmMove);
}

TEST(Respond, KUsesAreIllegal) {
  HsGraph g(2, 16);
  ASSERT_EQ(g.b(), 7);
  g.make_vertex({1});
  g.respond(0);
  EXPECT_TRUE(g.make_vertex({1, 2}).empty());
  EXPECT_EQ(g.respond(0), 2);
  EXPECT_TRUE(g.make_vertex({1, 2, 3}).empty());
  EXPECT_THROW(g.respond(0), IllegalAlgorithmMove);
  EXPECT_EQ(g.respond(1), 1);
}

TEST(Respond, DepletionActivatesFreshRow) {
  HsGraph g(1, 4);
  ASSERT_EQ(g.b(), 5);
  g.next_vertex();
  EXPECT_EQ(g.respond(0), 1);
  EXPECT_EQ(g.depleted_rows(), (std::set<int>{1}));
  EXPECT_EQ(g.active_rows(), (std::set<int>{2, 3, 4, 5, 6}));
  g.check_invariants();
}

TEST(ChoosePattern, AllSingletonsPresentMovesToPairs) {
  HsGraph g(std::nullopt, 64);
  for (int t = 0; t < 9; ++t) {
    g.next_vertex();
    g.respond(t);
  }
  EXPECT_EQ(g.choose_pattern(), (Pattern{1, 2}));
}

TEST(PlayHsGraph, DeskScaleBounds) {
  FirstFit ff;
  const HsGraphResult bounded = play_hs_graph(2, 64, ff);
  EXPECT_GE(bounded.algorithm_colors, 16);
  EXPECT_LE(bounded.presenter_colors, 41);
  FirstFit ff2;
  const HsGraphResult unbounded = play_hs_graph(std::nullopt, 64, ff2);
  EXPECT_GE(unbounded.algorithm_colors, 16);
  EXPECT_LE(unbounded.presenter_colors, 9);
}

// Random legal algorithms never break the strict-subset claim and always meet
// the column guarantee and the Presenter color bound.
TEST(PlayHsGraphProperty, RandomAlgorithmsRespectBounds) {
  const std::vector<std::optional<int>> ks{1, 2, 3, 5, std::nullopt};
  for (int n = 2; n <= 80; n += 3) {
    for (const auto& k : ks) {
      for (std::uint64_t seed = 0; seed < 3; ++seed) {
        RandomFit alg(seed * 977 + static_cast<std::uint64_t>(n));
        const HsGraphResult r = play_hs_graph(k, n, alg);
        const int b = hs_rows(n);
        EXPECT_GE(r.algorithm_colors, guarantee_hs_columns(n, b)) << "n=" << n;
        EXPECT_LE(r.presenter_colors, (k ? n / *k : 0) + b) << "n=" << n;
        EXPECT_TRUE(r.columns_within_half);
        EXPECT_EQ(r.strict_subset_checks, n);
      }
    }
  }
}

TEST(ReplayGraph, RoundTripAndCorruption) {
  FirstFit ff;
  HsGraphResult r = play_hs_graph(2, 32, ff);
  Transcript t;
  t.constraints = {0, 2};
  t.strategy.name = "hs-graph";
  t.strategy.params = Json{{"n", 32}};
  t.moves = r.moves;
  GraphReplayReport rep = replay_graph_transcript(t);
  EXPECT_FALSE(rep.illegal_round);
  EXPECT_TRUE(rep.mismatches.empty());
  EXPECT_EQ(rep.algorithm_colors, r.algorithm_colors);
  EXPECT_EQ(rep.presenter_colors, r.presenter_colors);

  // Copy a neighbor's color onto a later vertex.
  for (Move& m : t.moves) {
    if (m.adjacent_to && !m.adjacent_to->empty()) {
      m.algorithm_color = t.moves[static_cast<std::size_t>(m.adjacent_to->front() - 1)].algorithm_color;
      const int round = m.round;
      rep = replay_graph_transcript(t);
      ASSERT_TRUE(rep.illegal_round.has_value());
      EXPECT_EQ(*rep.illegal_round, round);
      break;
    }
  }
}
