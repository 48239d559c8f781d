#include "olc/coloring_state.hpp"

#include <algorithm>
#include <sstream>

namespace olc {

const char* to_string(Constraint c) {
  switch (c) {
    case Constraint::kCardinality: return "cardinality";
    case Constraint::kBandwidth: return "bandwidth";
  }
  return "?";
}

namespace {

std::string describe_illegal(Constraint violated, const Rational& point,
                             std::optional<int> coordinate, int round, int color) {
  std::ostringstream os;
  os << "illegal move at round " << round << ": color " << color << " violates "
     << to_string(violated) << " at point " << point;
  if (coordinate) os << " (coordinate " << *coordinate << ")";
  return os.str();
}

}  // namespace

IllegalMove::IllegalMove(Constraint violated, Rational point, std::optional<int> coordinate,
                         int round, int color)
    : Error(describe_illegal(violated, point, coordinate, round, color)),
      violated_(violated),
      point_(std::move(point)),
      coordinate_(coordinate),
      round_(round),
      color_(color) {}

Interval::Interval(Rational l, Rational r) : left(std::move(l)), right(std::move(r)) {
  if (!(left < right)) {
    throw BadParameter("interval needs left < right, got [" + left.str() + ", " +
                       right.str() + "]");
  }
}

bool intersects(const Interval& a, const Interval& b) {
  return std::max(a.left, b.left) <= std::min(a.right, b.right);
}

std::string k_to_string(const std::optional<int>& k) {
  return k ? std::to_string(*k) : std::string("inf");
}

std::optional<Violation> check_point(const GameConstraints& constraints,
                                     const std::vector<const WeightedInterval*>& members,
                                     const Rational& point) {
  int count = 0;
  std::vector<Rational> sums(static_cast<std::size_t>(constraints.d));
  for (const WeightedInterval* m : members) {
    if (!m->interval.contains(point)) continue;
    ++count;
    if (m->weights) {
      for (std::size_t c = 0; c < sums.size(); ++c) sums[c] += (*m->weights)[c];
    }
  }
  if (constraints.k && count > *constraints.k) {
    return Violation{Constraint::kCardinality, point, std::nullopt};
  }
  const Rational one(1);
  for (std::size_t c = 0; c < sums.size(); ++c) {
    if (sums[c] > one) return Violation{Constraint::kBandwidth, point, static_cast<int>(c)};
  }
  return std::nullopt;
}

ColoringState::ColoringState(GameConstraints constraints) : constraints_(constraints) {
  if (constraints_.d < 0) throw BadParameter("dimension must be nonnegative");
  if (constraints_.k && *constraints_.k < 1) throw BadParameter("k must be positive");
}

void ColoringState::validate(const WeightedInterval& cand) const {
  const int d = constraints_.d;
  if (d == 0) {
    if (cand.weights && !cand.weights->empty()) {
      throw DimensionMismatch("weights given but d = 0");
    }
    return;
  }
  if (!cand.weights || static_cast<int>(cand.weights->size()) != d) {
    throw DimensionMismatch("weight vector length " +
                            std::to_string(cand.weights ? cand.weights->size() : 0) +
                            " != d = " + std::to_string(d));
  }
  for (const Rational& w : *cand.weights) {
    if (w < Rational(0) || w > Rational(1)) {
      throw BadParameter("weight coordinate " + w.str() + " outside [0,1]");
    }
  }
}

std::optional<Violation> ColoringState::violation(const WeightedInterval& cand,
                                                  Color color) const {
  validate(cand);
  std::vector<const WeightedInterval*> members{&cand};
  std::vector<Rational> points{cand.interval.left, cand.interval.right};
  if (auto it = classes_.find(color); it != classes_.end()) {
    for (int id : it->second) {
      const WeightedInterval& m = intervals_.at(id);
      if (!intersects(m.interval, cand.interval)) continue;
      members.push_back(&m);
      for (const Rational* p : {&m.interval.left, &m.interval.right}) {
        if (cand.interval.contains(*p)) points.push_back(*p);
      }
    }
  }
  if (members.size() == 1) return check_point(constraints_, members, cand.interval.left);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  for (const Rational& p : points) {
    if (auto v = check_point(constraints_, members, p)) return v;
  }
  return std::nullopt;
}

void ColoringState::assign(const WeightedInterval& cand, Color color) {
  if (color < 0) throw BadParameter("color indices are nonnegative");
  if (intervals_.count(cand.id)) {
    throw BadParameter("interval " + std::to_string(cand.id) + " already assigned");
  }
  if (auto v = violation(cand, color)) {
    throw IllegalMove(v->violated, v->point, v->coordinate, cand.id, color);
  }
  intervals_.emplace(cand.id, cand);
  classes_[color].push_back(cand.id);
  color_of_[cand.id] = color;
}

std::optional<Color> ColoringState::color_of(int id) const {
  if (auto it = color_of_.find(id); it != color_of_.end()) return it->second;
  return std::nullopt;
}

std::set<Color> ColoringState::colors() const {
  std::set<Color> out;
  for (const auto& [c, _] : classes_) out.insert(c);
  return out;
}

Color ColoringState::fresh_color() const {
  return classes_.empty() ? 0 : classes_.rbegin()->first + 1;
}

std::optional<Violation> sweep_check(const GameConstraints& constraints,
                                     const std::vector<WeightedInterval>& intervals,
                                     const std::vector<Color>& colors) {
  std::map<Color, std::vector<const WeightedInterval*>> classes;
  for (std::size_t i = 0; i < intervals.size(); ++i) classes[colors.at(i)].push_back(&intervals[i]);
  for (const auto& [color, members] : classes) {
    std::vector<Rational> points;
    for (const WeightedInterval* m : members) {
      points.push_back(m->interval.left);
      points.push_back(m->interval.right);
    }
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    for (const Rational& p : points) {
      if (auto v = check_point(constraints, members, p)) return v;
    }
  }
  return std::nullopt;
}

}  // namespace olc
