#include "olc/transcript.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "olc/coloring_state.hpp"
#include "olc/errors.hpp"

namespace olc {

namespace {

Rational rational_from_json(const Json& j) {
  if (!j.is_string()) throw MalformedTranscript("rational must be a \"num/den\" string");
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw MalformedTranscript(e.what());
  }
}

int int_field(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer()) {
    throw MalformedTranscript(std::string("missing integer field \"") + key + "\"");
  }
  return j[key].get<int>();
}

std::optional<int> opt_int(const Json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  if (!j[key].is_number_integer()) {
    throw MalformedTranscript(std::string("field \"") + key + "\" must be an integer");
  }
  return j[key].get<int>();
}

std::optional<std::string> opt_string(const Json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  if (!j[key].is_string()) {
    throw MalformedTranscript(std::string("field \"") + key + "\" must be a string");
  }
  return j[key].get<std::string>();
}

Move move_from_json(const Json& j, const GameConstraints& constraints) {
  if (!j.is_object()) throw MalformedTranscript("move must be an object");
  Move m;
  m.round = int_field(j, "round");
  if (j.contains("interval")) m.interval = interval_from_json(j["interval"]);
  if (j.contains("weights")) {
    if (!j["weights"].is_array()) throw MalformedTranscript("weights must be an array");
    WeightVector w;
    for (const Json& x : j["weights"]) w.push_back(rational_from_json(x));
    m.weights = std::move(w);
  }
  if (constraints.d == 0 && m.weights) throw MalformedTranscript("weights present with d = 0");
  if (constraints.d > 0 && m.interval &&
      (!m.weights || static_cast<int>(m.weights->size()) != constraints.d)) {
    throw MalformedTranscript("move " + std::to_string(m.round) + " needs " +
                              std::to_string(constraints.d) + " weights");
  }
  m.call = opt_int(j, "call");
  m.eps_index = opt_int(j, "eps_index");
  m.phase = opt_string(j, "phase");
  m.subphase = opt_int(j, "subphase");
  if (j.contains("adjacent_to")) {
    if (!j["adjacent_to"].is_array()) throw MalformedTranscript("adjacent_to must be an array");
    std::vector<int> adj;
    for (const Json& x : j["adjacent_to"]) {
      if (!x.is_number_integer()) throw MalformedTranscript("adjacent_to entries are ids");
      adj.push_back(x.get<int>());
    }
    m.adjacent_to = std::move(adj);
  }
  m.algorithm_color = int_field(j, "algorithm_color");
  m.presenter_color = opt_int(j, "presenter_color");
  return m;
}

}  // namespace

WeightedInterval Move::as_weighted() const {
  if (!interval) throw MalformedTranscript("move " + std::to_string(round) + " has no interval");
  return WeightedInterval{round, *interval, weights, call, eps_index};
}

Json to_json(const Interval& interval) {
  return Json{{"left", interval.left.str()}, {"right", interval.right.str()}};
}

Interval interval_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("left") || !j.contains("right")) {
    throw MalformedTranscript("interval needs left and right");
  }
  try {
    return Interval(rational_from_json(j["left"]), rational_from_json(j["right"]));
  } catch (const BadParameter& e) {
    throw MalformedTranscript(e.what());
  }
}

Json to_json(const WeightVector& weights) {
  Json out = Json::array();
  for (const Rational& w : weights) out.push_back(w.str());
  return out;
}

Json move_request_json(const Move& m) {
  Json j;
  j["round"] = m.round;
  if (m.interval) j["interval"] = to_json(*m.interval);
  if (m.weights) j["weights"] = to_json(*m.weights);
  if (m.adjacent_to) j["adjacent_to"] = *m.adjacent_to;
  if (m.call) j["call"] = *m.call;
  if (m.eps_index) j["eps_index"] = *m.eps_index;
  if (m.phase) j["phase"] = *m.phase;
  if (m.subphase) j["subphase"] = *m.subphase;
  return j;
}

Json to_json(const Move& m) {
  Json j = move_request_json(m);
  j["algorithm_color"] = m.algorithm_color;
  if (m.presenter_color) j["presenter_color"] = *m.presenter_color;
  return j;
}

Json header_json(const Transcript& t) {
  Json j;
  j["version"] = t.version;
  j["constraints"] = Json{{"k", t.constraints.k ? Json(*t.constraints.k) : Json(nullptr)},
                          {"d", t.constraints.d}};
  Json strategy{{"name", t.strategy.name}};
  for (const auto& [key, value] : t.strategy.params.items()) strategy[key] = value;
  j["strategy"] = strategy;
  Json algorithm{{"name", t.algorithm.name}};
  if (t.algorithm.seed) algorithm["seed"] = *t.algorithm.seed;
  if (t.algorithm.command) algorithm["command"] = *t.algorithm.command;
  j["algorithm"] = algorithm;
  return j;
}

Json to_json(const Transcript& t) {
  Json j = header_json(t);
  Json moves = Json::array();
  for (const Move& m : t.moves) moves.push_back(to_json(m));
  j["moves"] = std::move(moves);
  if (!t.calls.empty()) {
    Json calls = Json::array();
    for (const CallInfo& c : t.calls) {
      Json cj{{"call", c.call}, {"eps_index", c.eps_index}, {"path", c.path}};
      if (c.subphase) cj["subphase"] = *c.subphase;
      if (c.marked) cj["marked"] = *c.marked;
      calls.push_back(std::move(cj));
    }
    j["calls"] = std::move(calls);
  }
  if (!t.outcome.empty()) j["outcome"] = t.outcome;
  Json summary{{"algorithm_colors", t.summary.algorithm_colors},
               {"guarantee", t.summary.guarantee},
               {"paper_bound", t.summary.paper_bound},
               {"witness_colors", t.summary.witness_colors},
               {"witness_valid", t.summary.witness_valid}};
  if (t.summary.palette_count) summary["palette_count"] = *t.summary.palette_count;
  if (t.summary.paper_colorability_bound) {
    summary["paper_colorability_bound"] = *t.summary.paper_colorability_bound;
  }
  j["summary"] = std::move(summary);
  return j;
}

Transcript transcript_from_json(const Json& j) {
  if (!j.is_object()) throw MalformedTranscript("transcript must be a JSON object");
  Transcript t;
  t.version = int_field(j, "version");
  if (t.version != 1) throw MalformedTranscript("unsupported version");

  if (!j.contains("constraints") || !j["constraints"].is_object()) {
    throw MalformedTranscript("missing constraints");
  }
  const Json& c = j["constraints"];
  t.constraints.d = int_field(c, "d");
  if (t.constraints.d < 0) throw MalformedTranscript("negative d");
  t.constraints.k = opt_int(c, "k");
  if (t.constraints.k && *t.constraints.k < 1) throw MalformedTranscript("k must be positive");

  if (!j.contains("strategy") || !j["strategy"].is_object()) {
    throw MalformedTranscript("missing strategy");
  }
  for (const auto& [key, value] : j["strategy"].items()) {
    if (key == "name") {
      if (!value.is_string()) throw MalformedTranscript("strategy name must be a string");
      t.strategy.name = value.get<std::string>();
    } else {
      t.strategy.params[key] = value;
    }
  }
  static const std::set<std::string> kStrategies{"sm", "unit", "hs-graph", "hs-call"};
  if (!kStrategies.count(t.strategy.name)) {
    throw MalformedTranscript("unknown strategy \"" + t.strategy.name + "\"");
  }

  if (!j.contains("algorithm") || !j["algorithm"].is_object()) {
    throw MalformedTranscript("missing algorithm");
  }
  const Json& a = j["algorithm"];
  if (!a.contains("name") || !a["name"].is_string()) {
    throw MalformedTranscript("algorithm name missing");
  }
  t.algorithm.name = a["name"].get<std::string>();
  if (a.contains("seed")) {
    if (!a["seed"].is_number_unsigned()) throw MalformedTranscript("seed must be unsigned");
    t.algorithm.seed = a["seed"].get<std::uint64_t>();
  }
  t.algorithm.command = opt_string(a, "command");

  if (!j.contains("moves") || !j["moves"].is_array()) throw MalformedTranscript("missing moves");
  for (const Json& mj : j["moves"]) {
    Move m = move_from_json(mj, t.constraints);
    if (m.round != static_cast<int>(t.moves.size()) + 1) {
      throw MalformedTranscript("move rounds must be consecutive from 1");
    }
    if (!t.is_graph_game() && !m.interval) {
      throw MalformedTranscript("move " + std::to_string(m.round) + " lacks an interval");
    }
    if (m.algorithm_color < 0) throw MalformedTranscript("negative color");
    t.moves.push_back(std::move(m));
  }

  if (j.contains("calls")) {
    if (!j["calls"].is_array()) throw MalformedTranscript("calls must be an array");
    for (const Json& cj : j["calls"]) {
      CallInfo info;
      info.call = int_field(cj, "call");
      info.eps_index = int_field(cj, "eps_index");
      auto path = opt_string(cj, "path");
      if (!path) throw MalformedTranscript("call without path");
      info.path = *path;
      info.subphase = opt_int(cj, "subphase");
      if (cj.contains("marked")) {
        if (!cj["marked"].is_boolean()) throw MalformedTranscript("marked must be boolean");
        info.marked = cj["marked"].get<bool>();
      }
      t.calls.push_back(std::move(info));
    }
  }
  if (j.contains("outcome")) t.outcome = j["outcome"];

  if (!j.contains("summary") || !j["summary"].is_object()) {
    throw MalformedTranscript("missing summary");
  }
  const Json& s = j["summary"];
  t.summary.algorithm_colors = int_field(s, "algorithm_colors");
  t.summary.guarantee = int_field(s, "guarantee");
  t.summary.paper_bound = int_field(s, "paper_bound");
  t.summary.witness_colors = int_field(s, "witness_colors");
  if (!s.contains("witness_valid") || !s["witness_valid"].is_boolean()) {
    throw MalformedTranscript("missing witness_valid");
  }
  t.summary.witness_valid = s["witness_valid"].get<bool>();
  t.summary.palette_count = opt_int(s, "palette_count");
  t.summary.paper_colorability_bound = opt_int(s, "paper_colorability_bound");
  return t;
}

std::string serialize(const Transcript& t) { return to_json(t).dump(1) + "\n"; }

Transcript deserialize(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw MalformedTranscript(std::string("invalid JSON: ") + e.what());
  }
  try {
    return transcript_from_json(j);
  } catch (const Json::exception& e) {
    throw MalformedTranscript(e.what());
  }
}

void write_transcript(const Transcript& t, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw BadParameter("cannot open " + path.string() + " for writing");
  out << serialize(t);
}

Transcript read_transcript(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MalformedTranscript("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return deserialize(buf.str());
}

ReplayReport verify_transcript(const Transcript& t, int recomputed_guarantee) {
  if (t.is_graph_game()) {
    throw MalformedTranscript("graph-game transcripts are replayed by the graph referee");
  }
  ReplayReport report;
  ColoringState state(t.constraints);
  for (const Move& m : t.moves) {
    try {
      state.assign(m.as_weighted(), m.algorithm_color);
    } catch (const IllegalMove& e) {
      report.illegal_round = m.round;
      report.illegal_reason = e.what();
      break;
    } catch (const DimensionMismatch& e) {
      throw MalformedTranscript(e.what());
    } catch (const BadParameter& e) {
      throw MalformedTranscript(e.what());
    }
  }
  report.distinct_colors = state.distinct_colors();
  if (!report.illegal_round && report.distinct_colors != t.summary.algorithm_colors) {
    report.mismatches.push_back("summary.algorithm_colors = " +
                                std::to_string(t.summary.algorithm_colors) + " but replay gives " +
                                std::to_string(report.distinct_colors));
  }
  if (recomputed_guarantee != t.summary.guarantee) {
    report.mismatches.push_back("summary.guarantee = " + std::to_string(t.summary.guarantee) +
                                " but recomputed " + std::to_string(recomputed_guarantee));
  }
  return report;
}

}  // namespace olc
