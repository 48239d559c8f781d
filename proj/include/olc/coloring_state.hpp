#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "olc/errors.hpp"
#include "olc/interval.hpp"

namespace olc {

struct Violation {
  Constraint violated;
  Rational point;
  std::optional<int> coordinate;
};

// Color classes of one interval game. Every class satisfies, at every point of
// the line, cardinality <= k and coordinate-wise weight sum <= 1.
class ColoringState {
 public:
  explicit ColoringState(GameConstraints constraints);

  const GameConstraints& constraints() const { return constraints_; }

  // Throws DimensionMismatch when the weight vector does not match d, and
  // BadParameter when a coordinate lies outside [0,1].
  void validate(const WeightedInterval& cand) const;

  // Evaluates the class at every critical point: each endpoint of a class
  // member or of cand that lies inside cand. Sums are piecewise constant
  // between endpoints so this is exact.
  std::optional<Violation> violation(const WeightedInterval& cand, Color color) const;

  bool can_assign(const WeightedInterval& cand, Color color) const {
    return !violation(cand, color).has_value();
  }

  // Throws IllegalMove and leaves the state untouched when can_assign fails.
  void assign(const WeightedInterval& cand, Color color);

  int distinct_colors() const { return static_cast<int>(classes_.size()); }

  // Nonempty classes keyed by color; members are interval ids.
  const std::map<Color, std::vector<int>>& classes() const { return classes_; }
  const std::map<int, WeightedInterval>& intervals() const { return intervals_; }
  std::optional<Color> color_of(int id) const;
  std::set<Color> colors() const;

  // Smallest color index not used by any class.
  Color fresh_color() const;

 private:
  GameConstraints constraints_;
  std::map<Color, std::vector<int>> classes_;
  std::map<int, WeightedInterval> intervals_;
  std::map<int, Color> color_of_;
};

// Independent full sweep: checks every class at every endpoint of its members
// without relying on incremental state. Returns the first violation found.
std::optional<Violation> sweep_check(const GameConstraints& constraints,
                                     const std::vector<WeightedInterval>& intervals,
                                     const std::vector<Color>& colors);

// Dense evaluation at an arbitrary point, used to cross-check the sweep.
std::optional<Violation> check_point(const GameConstraints& constraints,
                                     const std::vector<const WeightedInterval*>& members,
                                     const Rational& point);

}  // namespace olc
