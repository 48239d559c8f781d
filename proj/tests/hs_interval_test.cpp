#include <gtest/gtest.h>

#include <random>

#include "olc/algorithms.hpp"
#include "olc/hs_interval.hpp"

using namespace olc;

namespace {

Rational R(long n, long d = 1) { return Rational(n, d); }

WeightedInterval weighted(int id, const Interval& iv, WeightVector w) {
  WeightedInterval x;
  x.id = id;
  x.interval = iv;
  x.weights = std::move(w);
  return x;
}

// Expected vector from a row pattern: 'a' alpha, 'e' eps, 'd' delta.
WeightVector row(const std::string& pattern, const EncoderParams& p) {
  WeightVector w;
  for (char c : pattern) w.push_back(c == 'a' ? p.alpha : c == 'e' ? p.eps : p.delta);
  return w;
}

}  // namespace

TEST(Epsilon, Ladder) {
  EXPECT_EQ(epsilon(2, 1), R(1, 4));
  EXPECT_EQ(epsilon(2, 2), R(1, 16));
  EXPECT_EQ(epsilon(16, 1), R(1, 32));
  const EncoderParams p = EncoderParams::level(2, 1);
  EXPECT_EQ(p.delta, epsilon(2, 2));
}

TEST(EncoderParams, DerivedValues) {
  const EncoderParams p = EncoderParams::level(2, 1);
  EXPECT_EQ(p.alpha, R(7, 8));
  EXPECT_EQ(p.delta, R(1, 16));
  EXPECT_THROW(EncoderParams::make(1, R(1, 4)), BadParameter);
  EXPECT_THROW(EncoderParams::make(4, R(1, 4)), BadParameter);
}

TEST(EncodeWeights, VertexSixOfEight) {
  const EncoderParams p = EncoderParams::level(8, 1);
  EXPECT_EQ(encode_weights(6, {2, 5}, p), row("deddeadd", p));
}

TEST(EncodeWeights, SixVertexExampleAllRows) {
  // Edges of the six-vertex example: v2-v1, v3-v2, v4-{v1,v3}, v5-{v2,v3}, v6-{v4,v5}.
  const EncoderParams p = EncoderParams::level(6, 1);
  EXPECT_EQ(encode_weights(1, {}, p), row("addddd", p));
  EXPECT_EQ(encode_weights(2, {1}, p), row("eadddd", p));
  EXPECT_EQ(encode_weights(3, {2}, p), row("deaddd", p));
  EXPECT_EQ(encode_weights(4, {1, 3}, p), row("edeadd", p));
  EXPECT_EQ(encode_weights(5, {2, 3}, p), row("deedad", p));
  EXPECT_EQ(encode_weights(6, {4, 5}, p), row("dddeea", p));
}

TEST(CallNext, FirstRoundCoversRegion) {
  const Interval region(R(1, 8), R(3, 8));
  HsCall call(0, 4, std::nullopt, 1, region);
  const HsCall::Presentation pr = call.call_next();
  EXPECT_EQ(pr.interval, region);
  EXPECT_EQ(pr.weights, row("addd", call.params()));
}

TEST(CallNext, SecondAdjacentVertexForDimensionTwo) {
  HsCall call(0, 2, std::nullopt, 1, Interval(R(0), R(1)));
  const auto first = call.call_next();
  call.call_feed(1, first.interval, 0);
  const auto second = call.call_next();
  EXPECT_EQ(second.weights, (WeightVector{R(1, 4), R(7, 8)}));
  call.call_feed(2, second.interval, 1);
  EXPECT_THROW(call.call_next(), CallExhausted);
}

TEST(CallFeed, RoundOneRowAndFullCall) {
  FirstFit ff;
  Referee ref({4, std::nullopt}, ff);
  const CallDescriptor c = run_call(ref, 0, 4, std::nullopt, 1, Interval(R(0), R(1)));
  ASSERT_EQ(c.presenter_colors.size(), 4u);
  EXPECT_EQ(c.presenter_colors.front(), 1);
  EXPECT_EQ(c.produced, (std::vector<int>{1, 2, 3, 4}));
  EXPECT_GE(static_cast<int>(c.colors_in_first_use_order().size()), per_call_guarantee(4));
}

TEST(CallFeed, ReusedColorOnAdjacentVertexIsRejected) {
  HsCall call(0, 2, std::nullopt, 1, Interval(R(0), R(1)));
  const auto first = call.call_next();
  call.call_feed(1, first.interval, 0);
  const auto second = call.call_next();
  EXPECT_THROW(call.call_feed(2, second.interval, 0), IllegalAlgorithmMove);
}

TEST(PerCallGuarantee, Values) {
  EXPECT_EQ(per_call_guarantee(2), 1);
  EXPECT_EQ(per_call_guarantee(4), 2);
  EXPECT_EQ(per_call_guarantee(8), 3);
  EXPECT_EQ(per_call_guarantee(16), 6);
  EXPECT_EQ(paper_per_call_bound(16), 5);
}

namespace {

CallDescriptor desc(int id, int eps, const Interval& iv) {
  CallDescriptor c;
  c.call_id = id;
  c.eps_index = eps;
  c.region = iv;
  c.intervals = {iv};
  return c;
}

}  // namespace

TEST(CallsConflict, Examples) {
  const Interval u(R(0), R(1));
  EXPECT_TRUE(calls_conflict(desc(0, 1, u), desc(1, 2, u)));
  EXPECT_FALSE(calls_conflict(desc(0, 1, Interval(R(0), R(1, 4))), desc(1, 2, Interval(R(1, 2), R(1)))));
  EXPECT_THROW(calls_conflict(desc(0, 1, u), desc(1, 1, Interval(R(1, 2), R(2)))), SameEpsOverlap);
  EXPECT_FALSE(calls_conflict(desc(0, 1, Interval(R(0), R(1, 4))), desc(1, 1, Interval(R(1, 2), R(1)))));
  // Unit intervals with left endpoints inside (3/2, 2) all contain 2.
  EXPECT_TRUE(calls_conflict(desc(0, 1, Interval(R(7, 4), R(11, 4))),
                             desc(1, 2, Interval(R(13, 8), R(21, 8)))));
}

// Within one call, a set of intervals fits one color class exactly when its
// vertices are pairwise non-adjacent. Subsets grow by increasing vertex; a
// rejected set is never extended since legality is monotone.
namespace {

void faithful_dfs(const std::vector<WeightedInterval>& xs, const std::vector<std::set<int>>& adj,
                  std::vector<int>& members, int next, long& checked) {
  const int d = static_cast<int>(xs.size());
  ColoringState s({d, std::nullopt});
  for (int v : members) s.assign(xs[static_cast<std::size_t>(v)], 0);
  for (int v = next; v < d; ++v) {
    bool independent = true;
    for (int u : members) independent = independent && !adj[static_cast<std::size_t>(v)].count(u);
    const bool fits = s.can_assign(xs[static_cast<std::size_t>(v)], 0);
    ++checked;
    ASSERT_EQ(fits, independent) << "vertex " << v + 1 << " with " << members.size() << " members";
    if (fits) {
      members.push_back(v);
      faithful_dfs(xs, adj, members, v + 1, checked);
      members.pop_back();
    }
  }
}

}  // namespace

TEST(EncodingFaithfulness, RandomGraphsExhaustive) {
  std::mt19937_64 rng(2024);
  long checked = 0;
  for (int d = 2; d <= 10; ++d) {
    const EncoderParams p = EncoderParams::level(d, 1);
    for (int trial = 0; trial < 12; ++trial) {
      std::vector<std::set<int>> adj(static_cast<std::size_t>(d));
      std::vector<WeightedInterval> xs;
      const double density = (trial % 4 + 1) / 5.0;
      for (int t = 1; t <= d; ++t) {
        std::set<int> before;
        for (int u = 1; u < t; ++u) {
          if (std::uniform_real_distribution<double>(0, 1)(rng) < density) {
            before.insert(u);
            adj[static_cast<std::size_t>(t - 1)].insert(u - 1);
            adj[static_cast<std::size_t>(u - 1)].insert(t - 1);
          }
        }
        xs.push_back(weighted(t, Interval(R(0), R(1)), encode_weights(t, before, p)));
      }
      std::vector<int> members;
      faithful_dfs(xs, adj, members, 0, checked);
    }
  }
  EXPECT_GT(checked, 1000);
}

TEST(CrossCallConflict, DeeperLevelAlwaysBlocksShallower) {
  for (int d : {2, 3, 5}) {
    for (int i = 1; i <= 3; ++i) {
      for (int j = i + 1; j <= 4; ++j) {
        const EncoderParams pi = EncoderParams::level(d, i);
        const EncoderParams pj = EncoderParams::level(d, j);
        for (int t = 1; t <= d; ++t) {
          for (int u = 1; u <= d; ++u) {
            std::set<int> all_before;
            for (int x = 1; x < t; ++x) all_before.insert(x);
            ColoringState s({d, std::nullopt});
            s.assign(weighted(1, Interval(R(0), R(1)), encode_weights(t, all_before, pi)), 0);
            EXPECT_FALSE(s.can_assign(weighted(2, Interval(R(1, 2), R(3, 2)), encode_weights(u, {}, pj)), 0))
                << "d=" << d << " i=" << i << " j=" << j;
          }
        }
      }
    }
  }
}

TEST(PerCallProperty, GuaranteeAndPresenterBound) {
  for (int d = 2; d <= 24; ++d) {
    for (const std::optional<int>& k : {std::optional<int>(1), std::optional<int>(2), std::optional<int>()}) {
      for (std::uint64_t seed = 0; seed < 3; ++seed) {
        RandomFit alg(seed + 31 * static_cast<std::uint64_t>(d));
        Referee ref({d, k}, alg);
        const CallDescriptor c = run_call(ref, 0, d, k, 1, Interval(R(0), R(1)));
        EXPECT_GE(static_cast<int>(c.colors_in_first_use_order().size()), per_call_guarantee(d));
        const std::set<int> rows(c.presenter_colors.begin(), c.presenter_colors.end());
        const int b = hs_rows(d);
        EXPECT_LE(static_cast<int>(rows.size()), (k ? d / *k : 0) + b);
      }
    }
  }
}
