#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "olc/interval.hpp"

namespace olc {

using Json = nlohmann::ordered_json;

struct StrategyInfo {
  std::string name;  // "sm" | "unit" | "hs-graph" | "hs-call"
  Json params = Json::object();
};

struct AlgorithmInfo {
  std::string name;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> command;  // external algorithms only
};

struct Move {
  int round = 0;
  std::optional<Interval> interval;  // absent in graph games
  std::optional<WeightVector> weights;
  std::optional<int> call;
  std::optional<int> eps_index;
  std::optional<std::string> phase;  // unit strategy: "initial" | "sep" | "final"
  std::optional<int> subphase;
  std::optional<std::vector<int>> adjacent_to;  // graph games
  Color algorithm_color = 0;
  std::optional<Color> presenter_color;

  WeightedInterval as_weighted() const;
};

// Structural tag of one HS call, enough for the witness to rebuild palettes.
struct CallInfo {
  int call = 0;
  int eps_index = 0;
  std::string path;  // sm: "R3/R1/K2", "R2/B"; unit and hs-call: phase name
  std::optional<int> subphase;
  std::optional<bool> marked;
};

struct Summary {
  int algorithm_colors = 0;
  int guarantee = 0;
  int paper_bound = 0;
  int witness_colors = 0;
  bool witness_valid = false;
  std::optional<int> palette_count;
  std::optional<int> paper_colorability_bound;
};

struct Transcript {
  int version = 1;
  GameConstraints constraints;
  StrategyInfo strategy;
  AlgorithmInfo algorithm;
  std::vector<Move> moves;
  std::vector<CallInfo> calls;
  Json outcome = Json::object();
  Summary summary;

  bool is_graph_game() const { return strategy.name == "hs-graph"; }
};

Json to_json(const Interval& interval);
Interval interval_from_json(const Json& j);
Json to_json(const WeightVector& weights);

// The move object without colors; this is also the external wire request.
Json move_request_json(const Move& move);
Json to_json(const Move& move);
Json header_json(const Transcript& t);
Json to_json(const Transcript& t);

// Throws MalformedTranscript on any schema violation.
Transcript transcript_from_json(const Json& j);

std::string serialize(const Transcript& t);
Transcript deserialize(const std::string& text);

void write_transcript(const Transcript& t, const std::filesystem::path& path);
Transcript read_transcript(const std::filesystem::path& path);

// Replay every move through ColoringState::assign and compare the summary.
struct ReplayReport {
  int distinct_colors = 0;
  std::optional<int> illegal_round;
  std::string illegal_reason;
  std::vector<std::string> mismatches;

  bool ok() const { return !illegal_round && mismatches.empty(); }
};

ReplayReport verify_transcript(const Transcript& t, int recomputed_guarantee);

}  // namespace olc
