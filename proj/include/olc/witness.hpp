#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "olc/hs_interval.hpp"

namespace olc {

struct CallGraph {
  std::vector<CallDescriptor> nodes;  // sorted by call id
  std::vector<CallInfo> tags;         // parallel to nodes
  std::set<std::pair<int, int>> edges;  // node indices, first < second

  bool conflict(std::size_t a, std::size_t b) const {
    return edges.count(a < b ? std::pair<int, int>(static_cast<int>(a), static_cast<int>(b))
                             : std::pair<int, int>(static_cast<int>(b), static_cast<int>(a))) > 0;
  }
  std::optional<std::size_t> index_of(int call_id) const;
};

// Groups interval moves by call; edge iff two calls have intersecting
// intervals. Throws SameEpsOverlap.
CallGraph build_call_graph(const Transcript& t);

struct PaletteAssignment {
  std::map<int, int> palette_of;  // call id -> palette (1-based)
  int palette_count = 0;
};

// Structured scheme per strategy ("sm", "unit", "hs-call"). Throws
// SchemeConflict when two conflicting calls share a palette.
PaletteAssignment assign_palettes(const CallGraph& g, const Transcript& t);

struct WitnessResult {
  std::vector<Color> colors;  // per round
  int color_count = 0;
  int palette_count = 0;
  int stride = 0;
  int bound = 0;        // palette_count * (floor(d/k) + b(d))
  int paper_bound = 0;  // m * (floor(d/k) + floor(log2 d) + 3)
  bool valid = false;
};

// Palette-major flattening: (palette - 1) * stride + presenter color. The
// result is replayed through the legality checker; throws WitnessInvalid.
WitnessResult witness_coloring(const Transcript& t);

// Exact chromatic number under the game constraints. Throws TooLarge when
// the input exceeds limit.
int brute_force_chromatic(const std::vector<WeightedInterval>& intervals,
                          const GameConstraints& constraints, int limit = 12);

// Largest set of pairwise-conflicting intervals through one point.
int point_clique_bound(const std::vector<WeightedInterval>& intervals,
                       const GameConstraints& constraints);

}  // namespace olc
