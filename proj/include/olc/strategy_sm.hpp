#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "olc/hs_interval.hpp"

namespace olc {

using ColorSet = std::set<Color>;

// Collects the calls a strategy plays and tags each with its structural path.
struct CallLog {
  explicit CallLog(Referee& r) : referee(r) {}

  Referee& referee;
  int next_call = 0;
  std::vector<CallInfo> calls;
  std::vector<CallDescriptor> descriptors;

  CallDescriptor play(int d, std::optional<int> k, int eps_index, const Interval& region,
                      const std::string& path, const MoveTags& extra = {});
};

// Integer guarantee: T_1 = G(d), T_{m+1} = T_m + 2G + ceil(G/2).
int guarantee_sm(int m, int d);

// ceil((5m - 3) d / (log2 d + 3)); reporting only.
int paper_bound_sm(int m, int d);

// Slot i of the parent occupies [A + w(1 - 2^{1-i}), A + w(1 - 2^{-i})]; the
// returned region is the middle half of that slot.
Interval sub_region(const Interval& parent, int slot);

// First s distinct colors of the list. Throws TooFewColors.
ColorSet canonical_subset(const std::vector<Color>& colors_in_first_use_order, int s);

struct Quadruple {
  ColorSet colors;
  std::array<int, 4> regions{};  // 1-based, increasing
};

// First color set to appear four times, with the four positions.
std::optional<Quadruple> detect_quadruple(const std::vector<ColorSet>& seen);

enum class SmCase { kNone = 0, kCase1 = 1, kCase2 = 2 };

// Case 1 iff |D1 n D2| <= floor(G/2).
SmCase case_split(const ColorSet& d1, const ColorSet& d2, int g);

struct SmConfig {
  int m = 1;
  int d = 2;
  std::optional<int> k;
  Interval region{Rational(0), Rational(1)};
  int region_cap = 10000;
  int eps_base = 0;
};

struct SmOutcome {
  std::string path;  // "" for the root, "R2/R5/" for nested instances
  int level = 1;
  std::vector<CallDescriptor> calls;  // every call of this instance, nested included
  int regions_used = 0;
  bool early_stop = false;
  std::optional<Quadruple> quadruple;
  SmCase case_taken = SmCase::kNone;
  std::map<int, ColorSet> d_sets;  // keyed 1..5
  int distinct_colors = 0;
  int guarantee = 0;
  std::vector<Color> colors_in_first_use_order;
  std::vector<SmOutcome> children;
};

// Plays S_m against the referee's algorithm.
SmOutcome run_sm(const SmConfig& cfg, CallLog& log, const std::string& path = "");

// Per-node bookkeeping for transcripts: quadruple, case and D sets.
Json sm_outcome_json(const SmOutcome& outcome);

// Transcript-level proof invariants, re-derived from moves and call paths.
struct SmCheckReport {
  int nodes = 0;
  int case1 = 0;
  int case2 = 0;
  int early_stops = 0;
  std::vector<std::string> violations;
};

SmCheckReport check_sm_transcript(const Transcript& t);

}  // namespace olc
