#pragma once

#include <optional>
#include <set>
#include <vector>

#include "olc/hs_graph.hpp"
#include "olc/referee.hpp"

namespace olc {

// (2d)^-i, the encoding parameter of ladder level i >= 1.
Rational epsilon(int d, int i);

struct EncoderParams {
  int d = 0;
  Rational eps;
  Rational alpha;  // 1 - eps/2
  Rational delta;  // eps/(2d)

  // Requires d >= 2 and eps in (0, 1/d).
  static EncoderParams make(int d, const Rational& eps);
  static EncoderParams level(int d, int eps_index) { return make(d, epsilon(d, eps_index)); }
};

// Weight vector of the t-th vertex of a call (1 <= t <= d): alpha in
// coordinate t, eps at earlier adjacent rounds, delta elsewhere.
WeightVector encode_weights(int t, const std::set<int>& neighbors, const EncoderParams& params);

// G(d) = ceil(d / floor(b(d)/2)): distinct colors forced by one call.
int per_call_guarantee(int d);

// ceil(2d / (log2 d + 3)), reporting only.
int paper_per_call_bound(int d);

struct CallDescriptor {
  int call_id = 0;
  int eps_index = 0;
  Interval region;
  std::vector<int> produced;          // transcript rounds
  std::vector<Interval> intervals;    // as presented
  std::vector<int> presenter_colors;  // inner transparent rows, 1-based
  std::vector<Color> algorithm_colors;
  int strict_subset_checks = 0;

  // Distinct algorithm colors in order of first use.
  std::vector<Color> colors_in_first_use_order() const;
};

// One HS_{k,d}(eps, L, R) invocation: the graph strategy with n = d whose
// vertices are shown as weighted intervals.
class HsCall {
 public:
  struct Presentation {
    Interval interval;
    WeightVector weights;
  };

  HsCall(int call_id, int d, std::optional<int> k, int eps_index, Interval region);

  // Next vertex of the inner strategy, shown over the call region.
  // Throws CallExhausted after d rounds.
  Presentation call_next();

  // Forwards the algorithm color to the inner strategy and records the
  // transparent color. interval is what was actually presented.
  void call_feed(int round, const Interval& interval, Color gamma);

  bool exhausted() const { return graph_.finished(); }
  int rounds_played() const { return graph_.round(); }
  const CallDescriptor& descriptor() const { return descriptor_; }
  const HsGraph& graph() const { return graph_; }
  const EncoderParams& params() const { return params_; }

 private:
  HsGraph graph_;
  EncoderParams params_;
  CallDescriptor descriptor_;
};

// Plays a complete call with every interval equal to the region.
CallDescriptor run_call(Referee& referee, int call_id, int d, std::optional<int> k, int eps_index,
                        const Interval& region, const MoveTags& extra = {});

// True iff some interval of a intersects some interval of b. Throws
// SameEpsOverlap when two distinct calls at one ladder level intersect.
bool calls_conflict(const CallDescriptor& a, const CallDescriptor& b);

}  // namespace olc
