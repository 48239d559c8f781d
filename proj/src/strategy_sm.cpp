#include "olc/strategy_sm.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace olc {

namespace {

std::vector<Color> first_use(const std::vector<Move>& moves, std::size_t from) {
  std::vector<Color> out;
  ColorSet seen;
  for (std::size_t i = from; i < moves.size(); ++i) {
    if (seen.insert(moves[i].algorithm_color).second) out.push_back(moves[i].algorithm_color);
  }
  return out;
}

std::vector<Color> all_colors_first_use(const CallDescriptor& call) {
  return call.colors_in_first_use_order();
}

ColorSet as_set(const std::vector<Color>& v) { return ColorSet(v.begin(), v.end()); }

bool disjoint(const ColorSet& a, const ColorSet& b) {
  return std::none_of(a.begin(), a.end(), [&](Color c) { return b.count(c) > 0; });
}

Json colors_json(const ColorSet& s) { return Json(std::vector<Color>(s.begin(), s.end())); }

}  // namespace

CallDescriptor CallLog::play(int d, std::optional<int> k, int eps_index, const Interval& region,
                             const std::string& path, const MoveTags& extra) {
  const int id = next_call++;
  CallDescriptor call = run_call(referee, id, d, k, eps_index, region, extra);
  calls.push_back(CallInfo{id, eps_index, path, extra.subphase, std::nullopt});
  descriptors.push_back(call);
  return call;
}

int guarantee_sm(int m, int d) {
  if (m < 1) throw BadParameter("m must be positive");
  const int g = per_call_guarantee(d);
  int t = g;
  for (int level = 1; level < m; ++level) t += 2 * g + (g + 1) / 2;
  return t;
}

int paper_bound_sm(int m, int d) {
  return static_cast<int>(
      std::ceil((5.0 * m - 3.0) * d / (std::log2(static_cast<double>(d)) + 3.0)));
}

Interval sub_region(const Interval& parent, int slot) {
  if (slot < 1) throw BadParameter("slot must be positive");
  const Rational w = parent.length();
  const Rational start = parent.left + w * (Rational(1) - pow(Rational(1, 2), slot - 1));
  const Rational end = parent.left + w * (Rational(1) - pow(Rational(1, 2), slot));
  const Rational quarter = (end - start) / Rational(4);
  return Interval(start + quarter, end - quarter);
}

ColorSet canonical_subset(const std::vector<Color>& colors_in_first_use_order, int s) {
  ColorSet out;
  for (Color c : colors_in_first_use_order) {
    if (static_cast<int>(out.size()) == s) break;
    out.insert(c);
  }
  if (static_cast<int>(out.size()) < s) {
    throw TooFewColors("need " + std::to_string(s) + " distinct colors, found " +
                       std::to_string(out.size()));
  }
  return out;
}

std::optional<Quadruple> detect_quadruple(const std::vector<ColorSet>& seen) {
  std::map<ColorSet, std::vector<int>> positions;
  for (std::size_t i = 0; i < seen.size(); ++i) {
    auto& pos = positions[seen[i]];
    pos.push_back(static_cast<int>(i) + 1);
    if (pos.size() == 4) return Quadruple{seen[i], {pos[0], pos[1], pos[2], pos[3]}};
  }
  return std::nullopt;
}

SmCase case_split(const ColorSet& d1, const ColorSet& d2, int g) {
  int common = 0;
  for (Color c : d1) common += static_cast<int>(d2.count(c));
  return common <= g / 2 ? SmCase::kCase1 : SmCase::kCase2;
}

SmOutcome run_sm(const SmConfig& cfg, CallLog& log, const std::string& path) {
  if (cfg.m < 1) throw BadParameter("m must be positive");
  if (cfg.d < 2) throw BadParameter("d must be at least 2");
  const std::size_t start = log.referee.moves().size();
  const int g = per_call_guarantee(cfg.d);

  SmOutcome out;
  out.path = path;
  out.level = cfg.m;
  out.guarantee = guarantee_sm(cfg.m, cfg.d);

  auto finish = [&]() {
    out.colors_in_first_use_order = first_use(log.referee.moves(), start);
    out.distinct_colors = static_cast<int>(out.colors_in_first_use_order.size());
  };

  if (cfg.m == 1) {
    out.calls.push_back(log.play(cfg.d, cfg.k, cfg.eps_base + 1, cfg.region, path + "B"));
    finish();
    return out;
  }

  const int child_level = cfg.m - 1;
  const int child_guarantee = guarantee_sm(child_level, cfg.d);
  std::vector<ColorSet> seen;
  std::vector<Interval> regions;
  for (int slot = 1;; ++slot) {
    if (slot > cfg.region_cap) {
      throw RegionCapExceeded("S_" + std::to_string(cfg.m) + " at \"" + path + "\" needed more than " +
                              std::to_string(cfg.region_cap) + " regions");
    }
    regions.push_back(sub_region(cfg.region, slot));
    SmConfig child = cfg;
    child.m = child_level;
    child.region = regions.back();
    SmOutcome sub = run_sm(child, log, path + "R" + std::to_string(slot) + "/");
    seen.push_back(canonical_subset(sub.colors_in_first_use_order, child_guarantee));
    out.calls.insert(out.calls.end(), sub.calls.begin(), sub.calls.end());
    out.children.push_back(std::move(sub));
    out.regions_used = slot;

    if (static_cast<int>(first_use(log.referee.moves(), start).size()) >= out.guarantee) {
      out.early_stop = true;
      finish();
      return out;
    }
    out.quadruple = detect_quadruple(seen);
    if (out.quadruple) break;
  }

  // The fourth occurrence is the last region played, so regions a+1, b+1 and
  // c+1 all exist.
  const auto [a, b, c, dd] = out.quadruple->regions;
  auto l = [&](int i) { return regions[static_cast<std::size_t>(i - 1)].left; };
  auto r = [&](int i) { return regions[static_cast<std::size_t>(i - 1)].right; };
  auto p = [&](int i) { return midpoint(r(i), l(i + 1)); };

  const int level_eps = cfg.eps_base + 3 * child_level;
  const CallDescriptor k1 =
      log.play(cfg.d, cfg.k, level_eps + 1, Interval(l(a), p(a)), path + "K1");
  const CallDescriptor k2 =
      log.play(cfg.d, cfg.k, level_eps + 1, Interval(midpoint(r(c), p(c)), r(dd)), path + "K2");
  out.calls.push_back(k1);
  out.calls.push_back(k2);
  out.d_sets[1] = canonical_subset(all_colors_first_use(k1), g);
  out.d_sets[2] = canonical_subset(all_colors_first_use(k2), g);
  out.case_taken = case_split(out.d_sets[1], out.d_sets[2], g);

  if (out.case_taken == SmCase::kCase1) {
    const CallDescriptor k3 =
        log.play(cfg.d, cfg.k, level_eps + 2, Interval(midpoint(r(a), p(a)), p(c)), path + "K3");
    out.calls.push_back(k3);
    out.d_sets[3] = as_set(all_colors_first_use(k3));
  } else {
    const CallDescriptor k4 =
        log.play(cfg.d, cfg.k, level_eps + 2, Interval(midpoint(r(b), p(b)), p(c)), path + "K4");
    out.calls.push_back(k4);
    out.d_sets[4] = canonical_subset(all_colors_first_use(k4), g);
    const CallDescriptor k5 =
        log.play(cfg.d, cfg.k, level_eps + 3, Interval(midpoint(r(a), p(a)), p(b)), path + "K5");
    out.calls.push_back(k5);
    out.d_sets[5] = as_set(all_colors_first_use(k5));
  }
  finish();
  return out;
}

Json sm_outcome_json(const SmOutcome& root) {
  Json nodes = Json::array();
  std::vector<const SmOutcome*> stack{&root};
  while (!stack.empty()) {
    const SmOutcome* node = stack.back();
    stack.pop_back();
    if (node->level >= 2) {
      Json j{{"path", node->path},
             {"level", node->level},
             {"regions", node->regions_used},
             {"distinct_colors", node->distinct_colors},
             {"guarantee", node->guarantee},
             {"early_stop", node->early_stop}};
      if (node->quadruple) {
        j["quadruple"] = Json{{"colors", colors_json(node->quadruple->colors)},
                              {"regions", node->quadruple->regions}};
        j["case"] = static_cast<int>(node->case_taken);
        for (const auto& [i, s] : node->d_sets) j["D" + std::to_string(i)] = colors_json(s);
      }
      nodes.push_back(std::move(j));
    }
    for (auto it = node->children.rbegin(); it != node->children.rend(); ++it) {
      stack.push_back(&*it);
    }
  }
  return Json{{"nodes", std::move(nodes)}};
}

namespace {

struct NodeView {
  std::string path;
  int level = 0;
  Interval region;
  std::map<int, std::vector<int>> region_calls;  // slot -> call ids (deep)
  std::map<std::string, int> roles;               // "B", "K1".. -> call id
  std::vector<int> all_calls;                     // deep
};

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> out;
  std::stringstream ss(path);
  std::string tok;
  while (std::getline(ss, tok, '/')) out.push_back(tok);
  return out;
}

}  // namespace

SmCheckReport check_sm_transcript(const Transcript& t) {
  SmCheckReport report;
  auto fail = [&](const std::string& what) { report.violations.push_back(what); };
  if (!t.strategy.params.contains("m")) throw MalformedTranscript("sm transcript needs strategy.m");
  const int m = t.strategy.params["m"].get<int>();
  const int d = t.constraints.d;
  if (d < 2) throw MalformedTranscript("sm transcript needs d >= 2");
  Interval root_region(Rational(0), Rational(1));
  if (t.strategy.params.contains("region")) {
    root_region = interval_from_json(t.strategy.params["region"]);
  }
  const int g = per_call_guarantee(d);

  std::map<int, std::vector<const Move*>> moves_of;
  for (const Move& mv : t.moves) {
    if (!mv.call) throw MalformedTranscript("sm move without call id");
    moves_of[*mv.call].push_back(&mv);
  }
  std::map<int, const CallInfo*> info_of;
  for (const CallInfo& c : t.calls) info_of[c.call] = &c;
  if (info_of.size() != moves_of.size()) fail("calls table does not match move call ids");

  // Build the node tree from paths.
  std::map<std::string, NodeView> nodes;
  auto node_at = [&](const std::string& key, int level) -> NodeView& {
    NodeView& n = nodes[key];
    n.path = key;
    n.level = level;
    return n;
  };
  node_at("", m).region = root_region;
  for (const CallInfo& c : t.calls) {
    const auto tokens = split_path(c.path);
    if (tokens.empty()) throw MalformedTranscript("empty call path");
    std::string key;
    int level = m;
    node_at(key, level).all_calls.push_back(c.call);
    for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
      if (tokens[i].size() < 2 || tokens[i][0] != 'R') {
        throw MalformedTranscript("bad path token \"" + tokens[i] + "\"");
      }
      const int slot = std::stoi(tokens[i].substr(1));
      nodes[key].region_calls[slot].push_back(c.call);
      const Interval parent_region = nodes[key].region;
      key += tokens[i] + "/";
      --level;
      if (level < 1) throw MalformedTranscript("path deeper than m");
      NodeView& child = node_at(key, level);
      child.region = sub_region(parent_region, slot);
      child.all_calls.push_back(c.call);
    }
    nodes[key].roles[tokens.back()] = c.call;
  }

  auto colors_of_calls = [&](const std::vector<int>& calls) {
    std::vector<const Move*> mv;
    for (int id : calls) {
      auto it = moves_of.find(id);
      if (it != moves_of.end()) mv.insert(mv.end(), it->second.begin(), it->second.end());
    }
    std::sort(mv.begin(), mv.end(), [](const Move* x, const Move* y) { return x->round < y->round; });
    std::vector<Color> out;
    ColorSet seen;
    for (const Move* x : mv) {
      if (seen.insert(x->algorithm_color).second) out.push_back(x->algorithm_color);
    }
    return out;
  };
  auto check_call = [&](int id, int eps, const Interval& region, const std::string& where) {
    auto it = moves_of.find(id);
    if (it == moves_of.end() || static_cast<int>(it->second.size()) != d) {
      fail(where + ": call does not have d moves");
      return;
    }
    for (const Move* mv : it->second) {
      if (!mv->eps_index || *mv->eps_index != eps) fail(where + ": wrong ladder level");
      if (!mv->interval || !(*mv->interval == region)) fail(where + ": interval is not the call region");
    }
  };

  for (auto& [key, node] : nodes) {
    ++report.nodes;
    const std::string where = "node \"" + key + "\"";
    for (int id : node.all_calls) {
      for (const Move* mv : moves_of[id]) {
        if (mv->interval && !node.region.covers(*mv->interval)) fail(where + ": interval outside region");
      }
    }
    const int distinct = static_cast<int>(colors_of_calls(node.all_calls).size());
    const int guarantee = guarantee_sm(node.level, d);
    if (distinct < guarantee) fail(where + ": " + std::to_string(distinct) + " colors < guarantee " + std::to_string(guarantee));

    if (node.level == 1) {
      if (node.roles.size() != 1 || !node.roles.count("B")) {
        fail(where + ": level-1 node must hold exactly one base call");
        continue;
      }
      check_call(node.roles["B"], 1, node.region, where);
      continue;
    }

    const int child_guarantee = guarantee_sm(node.level - 1, d);
    const int n_regions = node.region_calls.empty() ? 0 : node.region_calls.rbegin()->first;
    if (static_cast<int>(node.region_calls.size()) != n_regions) fail(where + ": region slots not consecutive");
    std::vector<ColorSet> seen;
    std::vector<int> prefix_calls;
    std::optional<Quadruple> quad;
    bool stopped_early = false;
    for (int slot = 1; slot <= n_regions; ++slot) {
      const auto& calls = node.region_calls[slot];
      try {
        seen.push_back(canonical_subset(colors_of_calls(calls), child_guarantee));
      } catch (const TooFewColors&) {
        fail(where + ": region " + std::to_string(slot) + " below its guarantee");
        seen.emplace_back();
      }
      prefix_calls.insert(prefix_calls.end(), calls.begin(), calls.end());
      const bool enough = static_cast<int>(colors_of_calls(prefix_calls).size()) >= guarantee;
      const auto q = detect_quadruple(seen);
      if (slot < n_regions && (enough || q)) fail(where + ": region generation should have stopped earlier");
      if (slot == n_regions) {
        stopped_early = enough;
        if (!enough) quad = q;
      }
    }
    const bool has_k = node.roles.count("K1") > 0;
    if (stopped_early) {
      ++report.early_stops;
      if (has_k || !node.roles.empty()) fail(where + ": early stop but K calls were played");
      continue;
    }
    if (!quad) {
      fail(where + ": neither early stop nor quadruple");
      continue;
    }
    if (!has_k || !node.roles.count("K2")) {
      fail(where + ": quadruple without K1/K2");
      continue;
    }
    const auto [a, b, c, dd] = quad->regions;
    auto reg = [&](int i) { return sub_region(node.region, i); };
    auto p = [&](int i) { return midpoint(reg(i).right, reg(i + 1).left); };
    const int level_eps = 3 * (node.level - 1);
    check_call(node.roles["K1"], level_eps + 1, Interval(reg(a).left, p(a)), where + " K1");
    check_call(node.roles["K2"], level_eps + 1, Interval(midpoint(reg(c).right, p(c)), reg(dd).right),
               where + " K2");

    auto colors_of = [&](const std::string& role) { return colors_of_calls({node.roles[role]}); };
    const ColorSet& cstar = quad->colors;
    for (const auto& [role, id] : node.roles) {
      if (!disjoint(cstar, as_set(colors_of_calls({id})))) fail(where + ": C* color reused on " + role);
    }
    ColorSet d1, d2;
    try {
      d1 = canonical_subset(colors_of("K1"), g);
      d2 = canonical_subset(colors_of("K2"), g);
    } catch (const TooFewColors&) {
      fail(where + ": K1/K2 below per-call guarantee");
      continue;
    }
    const SmCase expected = case_split(d1, d2, g);
    if (expected == SmCase::kCase1) {
      ++report.case1;
      if (!node.roles.count("K3") || node.roles.count("K4") || node.roles.count("K5")) {
        fail(where + ": case 1 requires exactly K3");
        continue;
      }
      check_call(node.roles["K3"], level_eps + 2, Interval(midpoint(reg(a).right, p(a)), p(c)),
                 where + " K3");
      const ColorSet d3 = as_set(colors_of("K3"));
      if (!disjoint(d3, d1)) fail(where + ": D3 meets D1");
      if (!disjoint(d3, d2)) fail(where + ": D3 meets D2");
    } else {
      ++report.case2;
      if (!node.roles.count("K4") || !node.roles.count("K5") || node.roles.count("K3")) {
        fail(where + ": case 2 requires K4 and K5");
        continue;
      }
      check_call(node.roles["K4"], level_eps + 2, Interval(midpoint(reg(b).right, p(b)), p(c)),
                 where + " K4");
      check_call(node.roles["K5"], level_eps + 3, Interval(midpoint(reg(a).right, p(a)), p(b)),
                 where + " K5");
      ColorSet d4;
      try {
        d4 = canonical_subset(colors_of("K4"), g);
      } catch (const TooFewColors&) {
        fail(where + ": K4 below per-call guarantee");
        continue;
      }
      const ColorSet d5 = as_set(colors_of("K5"));
      if (!disjoint(d2, d4)) fail(where + ": D2 meets D4");
      if (!disjoint(d1, d5)) fail(where + ": D1 meets D5");
      if (!disjoint(d4, d5)) fail(where + ": D4 meets D5");
    }
  }
  return report;
}

}  // namespace olc
