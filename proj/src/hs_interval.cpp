#include "olc/hs_interval.hpp"

#include <algorithm>
#include <cmath>

namespace olc {

Rational epsilon(int d, int i) {
  if (d < 2) throw BadParameter("d must be at least 2");
  if (i < 1) throw BadParameter("ladder index must be positive");
  return pow(Rational(1, 2L * d), static_cast<unsigned>(i));
}

EncoderParams EncoderParams::make(int d, const Rational& eps) {
  if (d < 2) throw BadParameter("d must be at least 2");
  if (!(Rational(0) < eps && eps < Rational(1, d))) {
    throw BadParameter("eps must lie in (0, 1/d)");
  }
  EncoderParams p;
  p.d = d;
  p.eps = eps;
  p.alpha = Rational(1) - eps / Rational(2);
  p.delta = eps / Rational(2L * d);
  return p;
}

WeightVector encode_weights(int t, const std::set<int>& neighbors, const EncoderParams& params) {
  if (t < 1 || t > params.d) throw BadParameter("round outside 1..d");
  WeightVector w(static_cast<std::size_t>(params.d), params.delta);
  for (int i : neighbors) {
    if (i < 1 || i >= t) throw BadParameter("neighbors must be earlier rounds");
    w[static_cast<std::size_t>(i - 1)] = params.eps;
  }
  w[static_cast<std::size_t>(t - 1)] = params.alpha;
  return w;
}

int per_call_guarantee(int d) { return guarantee_hs_columns(d, hs_rows(d)); }

int paper_per_call_bound(int d) { return paper_bound_hs(d); }

std::vector<Color> CallDescriptor::colors_in_first_use_order() const {
  std::vector<Color> out;
  for (Color c : algorithm_colors) {
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  }
  return out;
}

HsCall::HsCall(int call_id, int d, std::optional<int> k, int eps_index, Interval region)
    : graph_(k, d), params_(EncoderParams::level(d, eps_index)) {
  descriptor_.call_id = call_id;
  descriptor_.eps_index = eps_index;
  descriptor_.region = std::move(region);
}

HsCall::Presentation HsCall::call_next() {
  if (graph_.finished()) {
    throw CallExhausted("call " + std::to_string(descriptor_.call_id) + " already played d rounds");
  }
  const std::vector<int>& adjacency = graph_.next_vertex();
  const std::set<int> neighbors(adjacency.begin(), adjacency.end());
  return {descriptor_.region, encode_weights(graph_.round() + 1, neighbors, params_)};
}

void HsCall::call_feed(int round, const Interval& interval, Color gamma) {
  const int rho = graph_.respond(gamma);
  descriptor_.produced.push_back(round);
  descriptor_.intervals.push_back(interval);
  descriptor_.presenter_colors.push_back(rho);
  descriptor_.algorithm_colors.push_back(gamma);
  descriptor_.strict_subset_checks = graph_.strict_subset_checks();
}

CallDescriptor run_call(Referee& referee, int call_id, int d, std::optional<int> k, int eps_index,
                        const Interval& region, const MoveTags& extra) {
  HsCall call(call_id, d, k, eps_index, region);
  MoveTags tags = extra;
  tags.call = call_id;
  tags.eps_index = eps_index;
  while (!call.exhausted()) {
    HsCall::Presentation next = call.call_next();
    const Color gamma = referee.present(next.interval, next.weights, tags);
    const int round = referee.rounds();
    call.call_feed(round, next.interval, gamma);
    referee.record_presenter_color(round, call.descriptor().presenter_colors.back() - 1);
  }
  return call.descriptor();
}

bool calls_conflict(const CallDescriptor& a, const CallDescriptor& b) {
  for (const Interval& x : a.intervals) {
    for (const Interval& y : b.intervals) {
      if (!intersects(x, y)) continue;
      if (a.call_id != b.call_id && a.eps_index == b.eps_index) {
        throw SameEpsOverlap("calls " + std::to_string(a.call_id) + " and " +
                             std::to_string(b.call_id) + " share ladder level " +
                             std::to_string(a.eps_index) + " and intersect");
      }
      return true;
    }
  }
  return false;
}

}  // namespace olc
