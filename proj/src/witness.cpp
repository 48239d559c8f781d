#include "olc/witness.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <sstream>

#include "olc/strategy_sm.hpp"

namespace olc {

namespace {

struct Hull {
  Rational left;
  Rational right;
};

Hull hull_of(const CallDescriptor& c) {
  Hull h{c.intervals.front().left, c.intervals.front().right};
  for (const Interval& iv : c.intervals) {
    h.left = std::min(h.left, iv.left);
    h.right = std::max(h.right, iv.right);
  }
  return h;
}

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> out;
  std::stringstream ss(path);
  std::string tok;
  while (std::getline(ss, tok, '/')) out.push_back(tok);
  return out;
}

struct SmNode {
  std::map<std::string, int> roles;
  std::map<int, std::string> children;  // slot -> key
};

using Palettes = std::map<int, int>;

// Relabels x to x, or x + 1 once x reaches the avoided palette.
void avoid(Palettes& sub, int pi) {
  for (auto& [call, p] : sub) {
    if (p >= pi) ++p;
  }
}

Palettes sm_palettes(const std::string& key, int level, const std::map<std::string, SmNode>& tree,
                     const CallGraph& g) {
  const SmNode& node = tree.at(key);
  Palettes out;
  if (level == 1) {
    for (const auto& [role, call] : node.roles) out[call] = 1;
    return out;
  }
  std::map<int, int> k_palette;  // call id -> palette
  if (node.roles.count("K3")) {
    k_palette[node.roles.at("K1")] = level;
    k_palette[node.roles.at("K2")] = level;
    k_palette[node.roles.at("K3")] = 1;
  } else if (node.roles.count("K4") || node.roles.count("K5")) {
    k_palette[node.roles.at("K1")] = level;
    k_palette[node.roles.at("K5")] = 1;
    k_palette[node.roles.at("K4")] = level;
    k_palette[node.roles.at("K2")] = 1;
  }
  for (const auto& [slot, child] : node.children) {
    Palettes sub = sm_palettes(child, level - 1, tree, g);
    std::set<int> hit;
    for (const auto& [kcall, kp] : k_palette) {
      const std::size_t ki = *g.index_of(kcall);
      for (const auto& [call, p] : sub) {
        if (g.conflict(ki, *g.index_of(call))) {
          hit.insert(kp);
          break;
        }
      }
    }
    if (hit.size() > 1) {
      throw SchemeConflict("region " + key + "R" + std::to_string(slot) +
                           " meets K calls with different palettes");
    }
    if (hit.size() == 1) avoid(sub, *hit.begin());
    out.insert(sub.begin(), sub.end());
  }
  out.insert(k_palette.begin(), k_palette.end());
  return out;
}

Palettes sm_scheme(const CallGraph& g, int m) {
  std::map<std::string, SmNode> tree;
  tree[""];
  for (const CallInfo& c : g.tags) {
    const auto tokens = split_path(c.path);
    if (tokens.empty()) throw MalformedTranscript("empty call path");
    std::string key;
    for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
      if (tokens[i].size() < 2 || tokens[i][0] != 'R') {
        throw MalformedTranscript("bad path token \"" + tokens[i] + "\"");
      }
      const std::string child = key + tokens[i] + "/";
      tree[key].children[std::stoi(tokens[i].substr(1))] = child;
      tree[child];
      key = child;
    }
    if (static_cast<int>(tokens.size()) > m) throw MalformedTranscript("path deeper than m");
    tree[key].roles[tokens.back()] = c.call;
  }
  return sm_palettes("", m, tree, g);
}

Palettes unit_scheme(const CallGraph& g, int m) {
  const int f = m / 2;
  Palettes out;
  int initial = 0, marked = 0, unmarked = 0, final_calls = 0;
  for (const CallInfo& c : g.tags) {
    if (c.path == "initial") {
      out[c.call] = ++initial;
    } else if (c.path == "sep") {
      if (!c.marked) throw MalformedTranscript("subphase call without marked flag");
      out[c.call] = *c.marked ? ++marked : f + ++unmarked;
    } else if (c.path == "final") {
      out[c.call] = f + ++final_calls;
    } else {
      throw MalformedTranscript("unknown unit phase \"" + c.path + "\"");
    }
  }
  return out;
}

int strategy_m(const Transcript& t) {
  if (t.strategy.name == "hs-call") return 1;
  if (!t.strategy.params.contains("m") || !t.strategy.params["m"].is_number_integer()) {
    throw MalformedTranscript("strategy.m is required");
  }
  return t.strategy.params["m"].get<int>();
}

}  // namespace

std::optional<std::size_t> CallGraph::index_of(int call_id) const {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), call_id,
                             [](const CallDescriptor& c, int id) { return c.call_id < id; });
  if (it == nodes.end() || it->call_id != call_id) return std::nullopt;
  return static_cast<std::size_t>(it - nodes.begin());
}

CallGraph build_call_graph(const Transcript& t) {
  if (t.is_graph_game()) throw BadParameter("graph games have no call structure");
  std::map<int, CallDescriptor> by_id;
  for (const Move& mv : t.moves) {
    if (!mv.call || !mv.eps_index || !mv.interval) {
      throw MalformedTranscript("move " + std::to_string(mv.round) + " lacks call data");
    }
    CallDescriptor& c = by_id[*mv.call];
    if (c.intervals.empty()) {
      c.call_id = *mv.call;
      c.eps_index = *mv.eps_index;
    } else if (c.eps_index != *mv.eps_index) {
      throw MalformedTranscript("call " + std::to_string(*mv.call) + " mixes ladder levels");
    }
    c.produced.push_back(mv.round);
    c.intervals.push_back(*mv.interval);
    c.presenter_colors.push_back(mv.presenter_color ? *mv.presenter_color + 1 : 0);
    c.algorithm_colors.push_back(mv.algorithm_color);
  }
  std::map<int, CallInfo> info;
  for (const CallInfo& c : t.calls) info[c.call] = c;

  CallGraph g;
  for (auto& [id, c] : by_id) {
    auto it = info.find(id);
    g.tags.push_back(it != info.end() ? it->second : CallInfo{id, c.eps_index, "", {}, {}});
    g.nodes.push_back(std::move(c));
  }
  std::vector<Hull> hulls;
  for (const CallDescriptor& c : g.nodes) hulls.push_back(hull_of(c));
  for (std::size_t a = 0; a < g.nodes.size(); ++a) {
    for (std::size_t b = a + 1; b < g.nodes.size(); ++b) {
      if (std::max(hulls[a].left, hulls[b].left) > std::min(hulls[a].right, hulls[b].right)) continue;
      if (calls_conflict(g.nodes[a], g.nodes[b])) {
        g.edges.emplace(static_cast<int>(a), static_cast<int>(b));
      }
    }
  }
  return g;
}

PaletteAssignment assign_palettes(const CallGraph& g, const Transcript& t) {
  PaletteAssignment out;
  if (t.strategy.name == "sm") {
    out.palette_of = sm_scheme(g, strategy_m(t));
  } else if (t.strategy.name == "unit") {
    out.palette_of = unit_scheme(g, strategy_m(t));
  } else if (t.strategy.name == "hs-call") {
    for (const CallDescriptor& c : g.nodes) out.palette_of[c.call_id] = 1;
  } else {
    throw BadParameter("no palette scheme for strategy \"" + t.strategy.name + "\"");
  }
  for (const CallDescriptor& c : g.nodes) {
    if (!out.palette_of.count(c.call_id)) {
      throw MalformedTranscript("call " + std::to_string(c.call_id) + " is missing from the calls table");
    }
  }
  for (const auto& [a, b] : g.edges) {
    const int ca = g.nodes[static_cast<std::size_t>(a)].call_id;
    const int cb = g.nodes[static_cast<std::size_t>(b)].call_id;
    if (out.palette_of.at(ca) == out.palette_of.at(cb)) {
      throw SchemeConflict("conflicting calls " + std::to_string(ca) + " and " + std::to_string(cb) +
                           " share palette " + std::to_string(out.palette_of.at(ca)));
    }
  }
  for (const auto& [call, p] : out.palette_of) out.palette_count = std::max(out.palette_count, p);
  return out;
}

WitnessResult witness_coloring(const Transcript& t) {
  const CallGraph g = build_call_graph(t);
  const PaletteAssignment palettes = assign_palettes(g, t);
  WitnessResult out;
  out.palette_count = palettes.palette_count;
  for (const Move& mv : t.moves) {
    if (!mv.presenter_color) {
      throw MalformedTranscript("move " + std::to_string(mv.round) + " lacks presenter_color");
    }
    out.stride = std::max(out.stride, *mv.presenter_color + 1);
  }
  ColoringState state(t.constraints);
  std::set<Color> used;
  for (const Move& mv : t.moves) {
    const Color c = (palettes.palette_of.at(*mv.call) - 1) * out.stride + *mv.presenter_color;
    try {
      state.assign(mv.as_weighted(), c);
    } catch (const IllegalMove& e) {
      throw WitnessInvalid(std::string("witness coloring is illegal: ") + e.what());
    }
    out.colors.push_back(c);
    used.insert(c);
  }
  out.color_count = static_cast<int>(used.size());
  const int d = t.constraints.d;
  const int per_palette = (t.constraints.k ? d / *t.constraints.k : 0) + hs_rows(d);
  out.bound = out.palette_count * per_palette;
  out.paper_bound = strategy_m(t) * per_palette;
  out.valid = out.color_count <= out.bound && out.palette_count <= strategy_m(t);
  return out;
}

namespace {

bool fits(const std::vector<WeightedInterval>& all, const std::vector<int>& cls, int cand,
          const GameConstraints& constraints) {
  const WeightedInterval& x = all[static_cast<std::size_t>(cand)];
  std::vector<const WeightedInterval*> members{&x};
  std::vector<Rational> points{x.interval.left};
  for (int i : cls) {
    const WeightedInterval& y = all[static_cast<std::size_t>(i)];
    if (!intersects(x.interval, y.interval)) continue;
    members.push_back(&y);
    if (x.interval.contains(y.interval.left)) points.push_back(y.interval.left);
  }
  for (const Rational& p : points) {
    if (check_point(constraints, members, p)) return false;
  }
  return true;
}

}  // namespace

int brute_force_chromatic(const std::vector<WeightedInterval>& intervals,
                          const GameConstraints& constraints, int limit) {
  const int n = static_cast<int>(intervals.size());
  if (n > limit) {
    throw TooLarge(std::to_string(n) + " intervals exceed the brute-force limit " + std::to_string(limit));
  }
  if (n == 0) return 0;
  std::vector<std::vector<int>> greedy;
  for (int i = 0; i < n; ++i) {
    auto it = std::find_if(greedy.begin(), greedy.end(),
                           [&](const std::vector<int>& cls) { return fits(intervals, cls, i, constraints); });
    if (it == greedy.end()) {
      greedy.push_back({i});
    } else {
      it->push_back(i);
    }
  }
  int best = static_cast<int>(greedy.size());
  std::vector<std::vector<int>> classes;
  std::function<void(int)> search = [&](int i) {
    if (static_cast<int>(classes.size()) >= best) return;
    if (i == n) {
      best = static_cast<int>(classes.size());
      return;
    }
    for (std::size_t c = 0; c < classes.size(); ++c) {
      if (!fits(intervals, classes[c], i, constraints)) continue;
      classes[c].push_back(i);
      search(i + 1);
      classes[c].pop_back();
    }
    // A new class is opened only in index order, which breaks color symmetry.
    classes.push_back({i});
    if (fits(intervals, {}, i, constraints)) search(i + 1);
    classes.pop_back();
  };
  search(0);
  return best;
}

int point_clique_bound(const std::vector<WeightedInterval>& intervals,
                       const GameConstraints& constraints) {
  const std::size_t n = intervals.size();
  if (n > 24) throw TooLarge("point clique bound is limited to 24 intervals");
  std::vector<std::uint32_t> adj(n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (!intersects(intervals[a].interval, intervals[b].interval)) continue;
      const Rational p = std::max(intervals[a].interval.left, intervals[b].interval.left);
      if (check_point(constraints, {&intervals[a], &intervals[b]}, p)) {
        adj[a] |= 1u << b;
        adj[b] |= 1u << a;
      }
    }
  }
  int best = n > 0 ? 1 : 0;
  for (const WeightedInterval& at : intervals) {
    const Rational x = at.interval.left;
    std::uint32_t through = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (intervals[i].interval.contains(x)) through |= 1u << i;
    }
    std::function<void(std::uint32_t, int)> grow = [&](std::uint32_t cand, int size) {
      best = std::max(best, size);
      while (cand) {
        if (size + __builtin_popcount(cand) <= best) return;
        const int v = __builtin_ctz(cand);
        cand &= cand - 1;
        grow(cand & adj[static_cast<std::size_t>(v)], size + 1);
      }
    };
    grow(through, 0);
  }
  return best;
}

}  // namespace olc
