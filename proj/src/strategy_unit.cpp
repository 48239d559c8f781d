#include "olc/strategy_unit.hpp"

#include <algorithm>
#include <cmath>

namespace olc {

namespace {

const Rational kSepLeft(3, 2);
const Rational kSepRight(2);

bool unit_length(const Interval& iv) { return iv.length() == Rational(1); }

}  // namespace

SepState::SepState(Rational left, Rational right) : l(std::move(left)), r(std::move(right)) {
  if (!(l < r)) throw RegionDegenerate("separation window is empty");
}

Interval sep_next(SepState& s) {
  if (!(s.l < s.r)) throw RegionDegenerate("separation window is empty");
  const Rational p = midpoint(s.l, s.r);
  s.pending = p;
  return Interval(p, p + Rational(1));
}

bool sep_feed(SepState& s, Color color, const ColorSet& c_init) {
  if (!s.pending) throw BadParameter("no pending separation interval");
  const Rational p = *s.pending;
  s.pending.reset();
  if (c_init.count(color)) {
    s.r = p;
    return false;
  }
  s.marked_positions.push_back(p);
  s.l = p;
  return true;
}

UnitInitial run_initial(int m, int d, std::optional<int> k, CallLog& log) {
  UnitInitial out;
  const int g = per_call_guarantee(d);
  MoveTags tags;
  tags.phase = "initial";
  for (int i = 1; i <= m / 2; ++i) {
    CallDescriptor call = log.play(d, k, i, Interval(Rational(0), Rational(1)), "initial", tags);
    const ColorSet part = canonical_subset(call.colors_in_first_use_order(), g);
    out.c_init.insert(part.begin(), part.end());
    out.calls.push_back(std::move(call));
  }
  return out;
}

SubphaseRecord run_subphase(int i, const Rational& window_left, const Rational& window_right, int d,
                            std::optional<int> k, const ColorSet& c_init, CallLog& log) {
  SubphaseRecord rec;
  rec.index = i;
  rec.window_left = window_left;
  rec.window_right = window_right;
  rec.eps_index = i;
  rec.call_id = log.next_call++;
  rec.last_out = window_left;
  rec.first_in = window_right;

  HsCall call(rec.call_id, d, k, i, Interval(window_left, window_right + Rational(1)));
  SepState sep(window_left, window_right);
  MoveTags tags;
  tags.call = rec.call_id;
  tags.eps_index = i;
  tags.phase = "sep";
  tags.subphase = i;

  while (!call.exhausted()) {
    const HsCall::Presentation next = call.call_next();
    const Interval iv = sep_next(sep);
    const Rational p = *sep.pending;
    for (std::size_t j = 0; j < rec.positions.size(); ++j) {
      if (rec.positions[j] < p && rec.in_init[j]) {
        throw InternalInvariantBroken("unmarked separation interval left of p");
      }
    }
    ++rec.left_of_p_checks;
    const Color color = log.referee.present(iv, next.weights, tags);
    const int round = log.referee.rounds();
    call.call_feed(round, iv, color);
    log.referee.record_presenter_color(round, call.descriptor().presenter_colors.back() - 1);
    const bool marked = sep_feed(sep, color, c_init);
    rec.positions.push_back(p);
    rec.colors.push_back(color);
    rec.in_init.push_back(!marked);
    if (marked) {
      rec.c_i.insert(color);
      rec.last_out = std::max(rec.last_out, p);
    } else {
      rec.first_in = std::min(rec.first_in, p);
    }
  }
  rec.leftmost = *std::min_element(rec.positions.begin(), rec.positions.end());
  log.calls.push_back(CallInfo{rec.call_id, i, "sep", i, std::nullopt});
  log.descriptors.push_back(call.descriptor());
  return rec;
}

bool mark_decision(int c_i_size, int remaining_including_current, int marked_so_far, int m, int g) {
  const int f = m / 2;
  if (remaining_including_current == f - marked_so_far) return true;
  return c_i_size >= (g + 1) / 2 && marked_so_far < f;
}

Window window_update(bool marked, const Rational& window_left, const Rational& last_out,
                     const Rational& first_in, const Rational& leftmost) {
  if (marked) return {last_out, first_in};
  return {window_left, leftmost};
}

int guarantee_unit(int m, int d) {
  if (m < 1) throw BadParameter("m must be positive");
  const int g = per_call_guarantee(d);
  return (m / 2) * (g + (g + 1) / 2) + ((m + 1) / 2) * g;
}

int paper_bound_unit(int m, int d) {
  return static_cast<int>(
      std::ceil((5 * m / 2) * static_cast<double>(d) / (std::log2(static_cast<double>(d)) + 3.0)));
}

UnitOutcome run_unit(int m, int d, std::optional<int> k, CallLog& log) {
  if (m < 1) throw BadParameter("m must be positive");
  if (d < 2) throw BadParameter("d must be at least 2");
  const std::size_t start = log.referee.moves().size();
  const int f = m / 2;
  const int g = per_call_guarantee(d);

  UnitOutcome out;
  out.m = m;
  out.m_prime = 2 * f;
  out.guarantee = guarantee_unit(m, d);

  UnitInitial initial = run_initial(m, d, k, log);
  out.c_init = initial.c_init;
  out.initial_calls = std::move(initial.calls);

  Window window{kSepLeft, kSepRight};
  for (int i = 1; i <= out.m_prime; ++i) {
    SubphaseRecord rec = run_subphase(i, window.left, window.right, d, k, out.c_init, log);
    rec.marked = mark_decision(static_cast<int>(rec.c_i.size()), out.m_prime - i + 1,
                               static_cast<int>(out.marked.size()), m, g);
    log.calls.back().marked = rec.marked;
    if (rec.marked) out.marked.push_back(i);
    window = window_update(rec.marked, rec.window_left, rec.last_out, rec.first_in, rec.leftmost);
    if (!(window.left < window.right)) throw RegionDegenerate("separation window collapsed");
    out.left_of_p_checks += rec.left_of_p_checks;
    out.subphases.push_back(std::move(rec));
  }
  if (static_cast<int>(out.marked.size()) != f) {
    throw InternalInvariantBroken("marked subphase count differs from floor(m/2)");
  }

  if (out.m_prime > 0) {
    out.p = midpoint(window.left, window.right);
    out.final_region = Interval(out.p - Rational(1), out.p);
  } else {
    out.p = Rational(1);
    out.final_region = Interval(Rational(0), Rational(1));
  }

  for (const SubphaseRecord& rec : out.subphases) {
    for (std::size_t j = 0; j < rec.positions.size(); ++j) {
      if (rec.positions[j] < out.p && (!rec.marked || rec.in_init[j])) {
        throw InternalInvariantBroken("separation interval left of P is not marked");
      }
    }
  }

  MoveTags tags;
  tags.phase = "final";
  for (int j = 1; j <= (m + 1) / 2; ++j) {
    out.final_calls.push_back(log.play(d, k, m + j, out.final_region, "final", tags));
  }

  ColorSet seen;
  const auto& moves = log.referee.moves();
  for (std::size_t i = start; i < moves.size(); ++i) {
    if (!unit_length(*moves[i].interval)) throw InternalInvariantBroken("interval length is not 1");
    seen.insert(moves[i].algorithm_color);
  }
  out.distinct_colors = static_cast<int>(seen.size());
  return out;
}

Json unit_outcome_json(const UnitOutcome& o) {
  Json subs = Json::array();
  for (const SubphaseRecord& s : o.subphases) {
    subs.push_back(Json{{"subphase", s.index},
                        {"window", Json{{"left", s.window_left.str()}, {"right", s.window_right.str()}}},
                        {"new_colors", s.c_i.size()},
                        {"marked", s.marked}});
  }
  return Json{{"c_init", std::vector<Color>(o.c_init.begin(), o.c_init.end())},
              {"marked", o.marked},
              {"P", o.p.str()},
              {"final_region", to_json(o.final_region)},
              {"subphases", std::move(subs)}};
}

UnitCheckReport check_unit_transcript(const Transcript& t) {
  UnitCheckReport report;
  auto fail = [&](const std::string& what) { report.violations.push_back(what); };
  if (!t.strategy.params.contains("m")) throw MalformedTranscript("unit transcript needs strategy.m");
  const int m = t.strategy.params["m"].get<int>();
  const int d = t.constraints.d;
  if (m < 1 || d < 2) throw MalformedTranscript("unit transcript needs m >= 1 and d >= 2");
  const int f = m / 2;
  const int g = per_call_guarantee(d);

  std::map<int, std::vector<const Move*>> moves_of;
  for (const Move& mv : t.moves) {
    if (!mv.call || !mv.interval) throw MalformedTranscript("unit move without call or interval");
    if (!unit_length(*mv.interval)) fail("round " + std::to_string(mv.round) + ": length is not 1");
    moves_of[*mv.call].push_back(&mv);
  }

  std::vector<const CallInfo*> initial, sep, final_calls;
  for (const CallInfo& c : t.calls) {
    if (c.path == "initial") initial.push_back(&c);
    else if (c.path == "sep") sep.push_back(&c);
    else if (c.path == "final") final_calls.push_back(&c);
    else throw MalformedTranscript("unknown unit phase \"" + c.path + "\"");
  }
  if (static_cast<int>(initial.size()) != f) fail("initial phase does not have floor(m/2) calls");
  if (static_cast<int>(sep.size()) != 2 * f) fail("separation phase does not have 2 floor(m/2) subphases");
  if (static_cast<int>(final_calls.size()) != (m + 1) / 2) fail("final phase does not have ceil(m/2) calls");

  auto colors_first_use = [&](int call) {
    std::vector<Color> out;
    for (const Move* mv : moves_of[call]) {
      if (std::find(out.begin(), out.end(), mv->algorithm_color) == out.end()) {
        out.push_back(mv->algorithm_color);
      }
    }
    return out;
  };

  ColorSet c_init;
  for (std::size_t i = 0; i < initial.size(); ++i) {
    const CallInfo& c = *initial[i];
    if (c.eps_index != static_cast<int>(i) + 1) fail("initial call at the wrong ladder level");
    for (const Move* mv : moves_of[c.call]) {
      if (!(*mv->interval == Interval(Rational(0), Rational(1)))) fail("initial interval is not [0,1]");
    }
    try {
      const ColorSet part = canonical_subset(colors_first_use(c.call), g);
      c_init.insert(part.begin(), part.end());
    } catch (const TooFewColors&) {
      fail("initial call below its guarantee");
    }
  }

  Window window{kSepLeft, kSepRight};
  int marked_count = 0;
  struct Placed {
    Rational left;
    bool marked_subphase;
    bool in_init;
    Color color;
  };
  std::vector<Placed> placed;
  for (std::size_t idx = 0; idx < sep.size(); ++idx) {
    const CallInfo& c = *sep[idx];
    const int i = static_cast<int>(idx) + 1;
    ++report.subphases;
    if (c.eps_index != i || c.subphase != i) fail("subphase " + std::to_string(i) + " mislabeled");
    if (!(kSepLeft <= window.left && window.left < window.right && window.right <= kSepRight)) {
      fail("subphase " + std::to_string(i) + " window outside [3/2, 2]");
      break;
    }
    SepState s(window.left, window.right);
    Rational last_out = window.left;
    Rational first_in = window.right;
    std::vector<std::pair<Rational, bool>> here;
    ColorSet c_i;
    for (const Move* mv : moves_of[c.call]) {
      const Interval expected = sep_next(s);
      const Rational p = *s.pending;
      ++report.left_of_p_checks;
      for (const auto& [left, in] : here) {
        if (left < p && in) fail("round " + std::to_string(mv->round) + ": unmarked interval left of p");
      }
      if (!(*mv->interval == expected)) {
        fail("round " + std::to_string(mv->round) + ": interval differs from the separation search");
        break;
      }
      const bool marked = sep_feed(s, mv->algorithm_color, c_init);
      here.emplace_back(p, !marked);
      if (marked) {
        c_i.insert(mv->algorithm_color);
        last_out = std::max(last_out, p);
      } else {
        first_in = std::min(first_in, p);
      }
    }
    if (here.empty()) {
      fail("subphase " + std::to_string(i) + " is empty");
      break;
    }
    Rational leftmost = here.front().first;
    for (const auto& h : here) leftmost = std::min(leftmost, h.first);
    const bool marked = mark_decision(static_cast<int>(c_i.size()), 2 * f - i + 1, marked_count, m, g);
    if (c.marked && *c.marked != marked) fail("subphase " + std::to_string(i) + " marking differs");
    if (marked) ++marked_count;
    for (std::size_t j = 0; j < here.size(); ++j) {
      placed.push_back({here[j].first, marked, here[j].second, moves_of[c.call][j]->algorithm_color});
    }
    window = window_update(marked, window.left, last_out, first_in, leftmost);
  }
  report.marked = marked_count;
  if (marked_count != f) fail("marked subphase count is not floor(m/2)");

  Interval final_region(Rational(0), Rational(1));
  Rational p(1);
  if (f > 0 && window.left < window.right) {
    p = midpoint(window.left, window.right);
    final_region = Interval(p - Rational(1), p);
  }
  ColorSet c_sep;
  for (const Placed& x : placed) {
    if (x.left < p) {
      if (!x.marked_subphase || x.in_init) fail("separation interval left of P is not marked");
      c_sep.insert(x.color);
    }
  }
  for (std::size_t j = 0; j < final_calls.size(); ++j) {
    const CallInfo& c = *final_calls[j];
    if (c.eps_index != m + static_cast<int>(j) + 1) fail("final call at the wrong ladder level");
    for (const Move* mv : moves_of[c.call]) {
      if (!(*mv->interval == final_region)) fail("final interval is not [P-1, P]");
      if (c_init.count(mv->algorithm_color)) fail("final color reuses C_init");
      if (c_sep.count(mv->algorithm_color)) fail("final color reuses C_sep");
    }
  }
  return report;
}

}  // namespace olc
