#pragma once

#include <optional>
#include <string>
#include <vector>

#include "olc/rational.hpp"

namespace olc {

using Color = int;

// Closed interval [left, right] with left < right.
struct Interval {
  Rational left;
  Rational right;

  Interval() = default;
  Interval(Rational l, Rational r);

  Rational length() const { return right - left; }
  bool contains(const Rational& p) const { return left <= p && p <= right; }
  bool covers(const Interval& other) const {
    return left <= other.left && other.right <= right;
  }

  friend bool operator==(const Interval&, const Interval&) = default;
};

// Closed intervals; a shared endpoint counts as an intersection.
bool intersects(const Interval& a, const Interval& b);

using WeightVector = std::vector<Rational>;

struct GameConstraints {
  int d = 0;                // 0: no weight vectors
  std::optional<int> k;     // nullopt: unbounded cardinality

  bool unbounded() const { return !k.has_value(); }
  friend bool operator==(const GameConstraints&, const GameConstraints&) = default;
};

// "inf" or a positive integer.
std::string k_to_string(const std::optional<int>& k);

struct WeightedInterval {
  int id = 0;  // 1-based round index
  Interval interval;
  std::optional<WeightVector> weights;
  std::optional<int> call_id;
  std::optional<int> eps_index;
};

}  // namespace olc
