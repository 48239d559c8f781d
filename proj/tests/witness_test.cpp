#include <gtest/gtest.h>

#include "olc/witness.hpp"
#include "test_support.hpp"

using namespace olc;

namespace {

Rational R(long n, long d = 1) { return Rational(n, d); }

WeightedInterval wi(int id, Rational l, Rational r, std::optional<WeightVector> w = std::nullopt) {
  WeightedInterval x;
  x.id = id;
  x.interval = Interval(l, r);
  x.weights = std::move(w);
  return x;
}

std::size_t node_with_path(const CallGraph& g, const std::string& path) {
  for (std::size_t i = 0; i < g.tags.size(); ++i) {
    if (g.tags[i].path == path) return i;
  }
  ADD_FAILURE() << "no call with path " << path;
  return 0;
}

PlayResult play_ff(const std::string& strategy, int m, int d, std::optional<int> k) {
  return play(test_support::interval_config(strategy, m, d, k));
}

}  // namespace

TEST(BuildCallGraph, SingleCallHasNoEdges) {
  const PlayResult r = play_ff("sm", 1, 8, std::nullopt);
  const CallGraph g = build_call_graph(r.transcript);
  EXPECT_EQ(g.nodes.size(), 1u);
  EXPECT_TRUE(g.edges.empty());
}

TEST(BuildCallGraph, UnitDepthTwoGeometry) {
  const PlayResult r = play_ff("unit", 2, 8, 2);
  const CallGraph g = build_call_graph(r.transcript);
  ASSERT_EQ(g.nodes.size(), 4u);
  std::vector<std::size_t> sub;
  std::size_t initial = 0, final_call = 0;
  for (std::size_t i = 0; i < g.tags.size(); ++i) {
    if (g.tags[i].path == "initial") initial = i;
    if (g.tags[i].path == "final") final_call = i;
    if (g.tags[i].path == "sep") sub.push_back(i);
  }
  ASSERT_EQ(sub.size(), 2u);
  EXPECT_TRUE(g.conflict(sub[0], sub[1]));
  EXPECT_FALSE(g.conflict(initial, sub[0]));
  EXPECT_FALSE(g.conflict(initial, sub[1]));
  EXPECT_TRUE(g.conflict(initial, final_call));
}

TEST(BuildCallGraph, CaseOneGeometry) {
  const PlayResult r = test_support::play_parity("sm", 2, 16, std::nullopt);
  const CallGraph g = build_call_graph(r.transcript);
  const std::size_t k1 = node_with_path(g, "K1");
  const std::size_t k2 = node_with_path(g, "K2");
  const std::size_t k3 = node_with_path(g, "K3");
  EXPECT_TRUE(g.conflict(k3, k1));
  EXPECT_TRUE(g.conflict(k3, k2));
  EXPECT_FALSE(g.conflict(k1, k2));
}

TEST(BuildCallGraph, EpsCollisionIsFatal) {
  PlayResult r = play_ff("unit", 2, 4, std::nullopt);
  Transcript& t = r.transcript;
  // Both subphases overlap at the point 2; give them one ladder level.
  for (Move& m : t.moves) {
    if (m.phase && *m.phase == "sep") m.eps_index = 1;
  }
  for (CallInfo& c : t.calls) {
    if (c.path == "sep") c.eps_index = 1;
  }
  EXPECT_THROW(build_call_graph(t), SameEpsOverlap);
}

TEST(AssignPalettes, Counts) {
  const PlayResult s1 = play_ff("sm", 1, 8, std::nullopt);
  EXPECT_EQ(assign_palettes(build_call_graph(s1.transcript), s1.transcript).palette_count, 1);
  const PlayResult case1 = test_support::play_parity("sm", 2, 16, std::nullopt);
  EXPECT_EQ(assign_palettes(build_call_graph(case1.transcript), case1.transcript).palette_count, 2);
  const PlayResult case2 = play_ff("sm", 2, 16, 4);
  EXPECT_EQ(assign_palettes(build_call_graph(case2.transcript), case2.transcript).palette_count, 2);
  const PlayResult unit = play_ff("unit", 2, 8, 2);
  EXPECT_EQ(assign_palettes(build_call_graph(unit.transcript), unit.transcript).palette_count, 2);
}

TEST(AssignPalettes, ConflictingCallsNeverSharePalette) {
  for (int m = 1; m <= 3; ++m) {
    for (const char* strategy : {"sm", "unit"}) {
      if (std::string(strategy) == "sm" && m == 3) continue;
      const PlayResult r = play_ff(strategy, m, 4, 2);
      const CallGraph g = build_call_graph(r.transcript);
      const PaletteAssignment pa = assign_palettes(g, r.transcript);
      EXPECT_LE(pa.palette_count, m);
      for (const auto& [a, b] : g.edges) {
        EXPECT_NE(pa.palette_of.at(g.nodes[static_cast<std::size_t>(a)].call_id),
                  pa.palette_of.at(g.nodes[static_cast<std::size_t>(b)].call_id));
      }
    }
  }
}

TEST(WitnessColoring, DeskScaleBounds) {
  const WitnessResult sm = witness_coloring(play_ff("sm", 2, 16, 4).transcript);
  EXPECT_TRUE(sm.valid);
  EXPECT_EQ(sm.bound, 22);
  EXPECT_EQ(sm.paper_bound, 22);
  EXPECT_LE(sm.color_count, 22);

  const WitnessResult unit = witness_coloring(play_ff("unit", 2, 8, 2).transcript);
  EXPECT_TRUE(unit.valid);
  EXPECT_EQ(unit.paper_bound, 20);
  EXPECT_LE(unit.color_count, 20);

  const WitnessResult call = witness_coloring(play_ff("hs-call", 1, 8, std::nullopt).transcript);
  EXPECT_TRUE(call.valid);
  EXPECT_LE(call.color_count, 6);
}

TEST(WitnessColoring, CaseOneWitnessIsLegal) {
  const PlayResult r = test_support::play_parity("sm", 2, 16, std::nullopt);
  const WitnessResult w = witness_coloring(r.transcript);
  EXPECT_TRUE(w.valid);
  EXPECT_EQ(w.palette_count, 2);
  EXPECT_FALSE(sweep_check(r.transcript.constraints, [&] {
                 std::vector<WeightedInterval> xs;
                 for (const Move& m : r.transcript.moves) xs.push_back(m.as_weighted());
                 return xs;
               }(),
                           w.colors)
                   .has_value());
}

TEST(WitnessColoring, CorruptPresenterColorsAreCaught) {
  PlayResult r = play_ff("hs-call", 1, 8, std::nullopt);
  for (Move& m : r.transcript.moves) m.presenter_color = 0;
  EXPECT_THROW(witness_coloring(r.transcript), WitnessInvalid);
}

TEST(BruteForce, Examples) {
  const GameConstraints classic{0, 1};
  EXPECT_EQ(brute_force_chromatic({wi(1, R(0), R(1)), wi(2, R(2), R(3))}, classic), 1);
  const GameConstraints weighted{2, std::nullopt};
  EXPECT_EQ(brute_force_chromatic({wi(1, R(0), R(1), WeightVector{R(7, 8), R(1, 16)}),
                                   wi(2, R(0), R(1), WeightVector{R(1, 4), R(7, 8)})},
                                  weighted),
            2);
  std::vector<WeightedInterval> many;
  for (int i = 0; i < 13; ++i) many.push_back(wi(i + 1, R(i), R(i + 1)));
  EXPECT_THROW(brute_force_chromatic(many, classic), TooLarge);
  // Cardinality k=2 over three nested intervals needs two colors.
  EXPECT_EQ(brute_force_chromatic({wi(1, R(0), R(3)), wi(2, R(0), R(3)), wi(3, R(0), R(3))}, {0, 2}), 2);
}

TEST(PointClique, Examples) {
  EXPECT_EQ(point_clique_bound({wi(1, R(0), R(1)), wi(2, R(2), R(3))}, {0, 1}), 1);
  EXPECT_EQ(point_clique_bound({wi(1, R(0), R(2)), wi(2, R(1), R(3)), wi(3, R(3, 2), R(4))}, {0, 1}), 3);
}

// Sandwich on every short prefix of strategy transcripts.
TEST(OracleProperty, SandwichOnPrefixes) {
  int prefixes = 0;
  for (const char* strategy : {"sm", "unit", "hs-call"}) {
    for (int d : {2, 3, 4}) {
      for (const char* alg : {"first-fit", "random"}) {
        PlayConfig cfg = test_support::interval_config(strategy, 2, d, 2, alg);
        cfg.seed = static_cast<std::uint64_t>(d);
        const PlayResult r = play(cfg);
        const OracleResult o = oracle(r.transcript, 10);
        EXPECT_EQ(o.exit_code, 0);
        for (const OracleRow& row : o.rows) {
          EXPECT_LE(row.clique, row.chromatic);
          EXPECT_LE(row.chromatic, row.witness);
          ++prefixes;
        }
      }
    }
  }
  EXPECT_GE(prefixes, 50);
}
