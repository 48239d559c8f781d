#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "olc/coloring_state.hpp"
#include "olc/transcript.hpp"

namespace olc {

// On-line colorer for the interval game. choose() sees the current state and
// the pending move; it must return a color index >= 0.
class IntervalAlgorithm {
 public:
  virtual ~IntervalAlgorithm() = default;
  virtual void begin(const Json& /*header*/) {}
  virtual Color choose(const ColoringState& state, const WeightedInterval& cand,
                       const Move& request) = 0;
  virtual void end() {}
};

// What a graph-game algorithm may look at: the colors of earlier vertices and
// the pending vertex's neighbors (ids are 1-based rounds).
struct GraphView {
  std::optional<int> k;
  std::span<const Color> colors;  // colors[id - 1]
  std::span<const int> neighbors;
};

class GraphAlgorithm {
 public:
  virtual ~GraphAlgorithm() = default;
  virtual void begin(const Json& /*header*/) {}
  virtual Color choose(const GraphView& view, const Move& request) = 0;
  virtual void end() {}
};

struct MoveTags {
  std::optional<int> call;
  std::optional<int> eps_index;
  std::optional<std::string> phase;
  std::optional<int> subphase;
};

// Drives one interval game: numbers the rounds, asks the algorithm, enforces
// legality and records the moves.
class Referee {
 public:
  Referee(GameConstraints constraints, IntervalAlgorithm& algorithm);

  // Throws IllegalMove if the algorithm's answer is not legal.
  Color present(const Interval& interval, std::optional<WeightVector> weights,
                const MoveTags& tags = {});

  void record_presenter_color(int round, Color color);

  const ColoringState& state() const { return state_; }
  const std::vector<Move>& moves() const { return moves_; }
  std::vector<Move> take_moves() { return std::move(moves_); }
  int rounds() const { return static_cast<int>(moves_.size()); }

 private:
  ColoringState state_;
  IntervalAlgorithm& algorithm_;
  std::vector<Move> moves_;
};

}  // namespace olc
