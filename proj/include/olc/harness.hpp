#pragma once

#include <cstdint>
#include <exception>
#include <optional>
#include <string>
#include <vector>

#include "olc/algorithms.hpp"
#include "olc/transcript.hpp"

namespace olc {

enum ExitCode { kOk = 0, kBoundFailed = 1, kIllegalMove = 2, kConfigError = 3 };

// Maps a library exception to the command-line exit code.
int exit_code_for(const std::exception& e);

struct PlayConfig {
  std::string strategy;  // hs-graph | hs-call | sm | unit
  int n = 0;
  int m = 0;
  int d = 0;
  std::optional<int> k;
  std::string algorithm = "first-fit";
  std::uint64_t seed = 0;
  int region_cap = 10000;
};

// "inf" or a positive integer.
std::optional<int> parse_k(const std::string& text);

// Throws BadParameter on a configuration the strategy cannot run.
void validate(const PlayConfig& cfg);

struct PlayResult {
  Transcript transcript;
  int exit_code = kOk;
  std::vector<std::string> failures;
  std::string summary_line;
};

// Plays the selected strategy against the selected algorithm. Illegal
// algorithm moves propagate as exceptions.
PlayResult play(const PlayConfig& cfg);

// Interval strategies (hs-call, sm, unit) against a caller-owned algorithm.
PlayResult play_interval(const PlayConfig& cfg, IntervalAlgorithm& algorithm, const AlgorithmInfo& info);

struct VerifyResult {
  Json report = Json::object();
  int exit_code = kOk;
};

// Replays legality, re-derives the strategy invariants and the witness, and
// compares the summary. Structural errors propagate as exceptions.
VerifyResult verify(const Transcript& t);

struct TableRow {
  std::string strategy;
  int n = 0;
  int d = 0;
  std::optional<int> k;
  int m = 0;
  std::string algorithm;
  int colors_used = 0;
  int guarantee = 0;
  int paper_bound = 0;
  int witness_colors = 0;
  int paper_colorability_bound = 0;
  std::string status = "ok";
};

struct TableSpec {
  std::string strategy;
  std::vector<int> ns;
  std::vector<int> ds;
  std::vector<int> ms;
  std::vector<std::optional<int>> ks;
  std::vector<std::string> algorithms;
  std::uint64_t seed = 0;
  int region_cap = 10000;
};

// One row per cell of the cartesian product, in input order. A failing cell
// is annotated in its status column.
std::vector<TableRow> run_table(const TableSpec& spec);
std::string table_csv(const std::vector<TableRow>& rows);
Json table_json(const std::vector<TableRow>& rows);

struct OracleRow {
  int size = 0;
  int clique = 0;
  int chromatic = 0;
  int witness = 0;
  bool ok() const { return clique <= chromatic && chromatic <= witness; }
};

struct OracleResult {
  std::vector<OracleRow> rows;  // one per prefix length 1..N
  int exit_code = kOk;
  Json report = Json::object();
};

// Sandwich check on every prefix of at most max_n moves. max_n above 16
// throws TooLarge.
OracleResult oracle(const Transcript& t, int max_n);

}  // namespace olc
