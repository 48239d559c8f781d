#include "olc/referee.hpp"

namespace olc {

Referee::Referee(GameConstraints constraints, IntervalAlgorithm& algorithm)
    : state_(constraints), algorithm_(algorithm) {}

Color Referee::present(const Interval& interval, std::optional<WeightVector> weights,
                       const MoveTags& tags) {
  Move move;
  move.round = rounds() + 1;
  move.interval = interval;
  move.weights = std::move(weights);
  move.call = tags.call;
  move.eps_index = tags.eps_index;
  move.phase = tags.phase;
  move.subphase = tags.subphase;

  const WeightedInterval cand = move.as_weighted();
  state_.validate(cand);
  const Color color = algorithm_.choose(state_, cand, move);
  state_.assign(cand, color);
  move.algorithm_color = color;
  moves_.push_back(std::move(move));
  return color;
}

void Referee::record_presenter_color(int round, Color color) {
  moves_.at(static_cast<std::size_t>(round - 1)).presenter_color = color;
}

}  // namespace olc
