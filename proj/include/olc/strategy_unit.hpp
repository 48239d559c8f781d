#pragma once

#include <optional>
#include <string>
#include <vector>

#include "olc/strategy_sm.hpp"

namespace olc {

// Binary search that places unit intervals [p, p+1] inside a window (l, r).
struct SepState {
  Rational l;
  Rational r;
  std::vector<Rational> marked_positions;
  std::optional<Rational> pending;

  SepState(Rational left, Rational right);
};

// [p, p+1] with p = (l + r) / 2. Records p as pending.
Interval sep_next(SepState& s);

// r := p if color is in C_init, otherwise the interval is marked and l := p.
// Returns true when the interval was marked.
bool sep_feed(SepState& s, Color color, const ColorSet& c_init);

struct SubphaseRecord {
  int index = 0;
  Rational window_left;   // L_i
  Rational window_right;  // R_i
  int eps_index = 0;
  int call_id = 0;
  std::vector<Rational> positions;  // left endpoints in play order
  std::vector<Color> colors;
  std::vector<bool> in_init;
  ColorSet c_i;  // colors of the subphase outside C_init
  bool marked = false;
  Rational leftmost;     // L*
  Rational last_out;     // L: rightmost left endpoint colored outside C_init
  Rational first_in;     // R: leftmost left endpoint colored inside C_init
  int left_of_p_checks = 0;
};

struct UnitInitial {
  std::vector<CallDescriptor> calls;
  ColorSet c_init;
};

// floor(m/2) calls over [0,1] at ladder levels 1..floor(m/2).
UnitInitial run_initial(int m, int d, std::optional<int> k, CallLog& log);

// One subphase: positions from Sep(L_i, R_i), weights from HS at ladder i.
SubphaseRecord run_subphase(int i, const Rational& window_left, const Rational& window_right, int d,
                            std::optional<int> k, const ColorSet& c_init, CallLog& log);

// Condition (1): remaining == floor(m/2) - |M|; condition (2): |C_i| >= ceil(G/2)
// and |M| < floor(m/2).
bool mark_decision(int c_i_size, int remaining_including_current, int marked_so_far, int m, int g);

struct Window {
  Rational left;
  Rational right;
};

// Marked: (L, R). Unmarked: (L_i, L*).
Window window_update(bool marked, const Rational& window_left, const Rational& last_out,
                     const Rational& first_in, const Rational& leftmost);

struct UnitOutcome {
  int m = 1;
  ColorSet c_init;
  std::vector<int> marked;  // subphase indices
  int m_prime = 0;
  Rational p;
  Interval final_region{Rational(0), Rational(1)};
  std::vector<CallDescriptor> initial_calls;
  std::vector<SubphaseRecord> subphases;
  std::vector<CallDescriptor> final_calls;
  int distinct_colors = 0;
  int guarantee = 0;
  int left_of_p_checks = 0;
};

UnitOutcome run_unit(int m, int d, std::optional<int> k, CallLog& log);

// floor(m/2)(G + ceil(G/2)) + ceil(m/2) G.
int guarantee_unit(int m, int d);

// ceil(floor(5m/2) d / (log2 d + 3)); reporting only.
int paper_bound_unit(int m, int d);

Json unit_outcome_json(const UnitOutcome& outcome);

struct UnitCheckReport {
  int subphases = 0;
  int marked = 0;
  int left_of_p_checks = 0;
  std::vector<std::string> violations;
};

// Replays marking, windows and P from the moves and checks the phase invariants.
UnitCheckReport check_unit_transcript(const Transcript& t);

}  // namespace olc
