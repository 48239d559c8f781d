#include "olc/harness.hpp"

#include <cstdio>
#include <set>
#include <sstream>

#include "olc/hs_graph.hpp"
#include "olc/strategy_sm.hpp"
#include "olc/strategy_unit.hpp"
#include "olc/witness.hpp"

namespace olc {

namespace {

const std::set<std::string> kStrategies{"hs-graph", "hs-call", "sm", "unit"};

Json region_json(const Interval& iv) { return to_json(iv); }

int presenter_bound(int n, std::optional<int> k) { return (k ? n / *k : 0) + hs_rows(n); }

int param_int(const Transcript& t, const char* key) {
  if (!t.strategy.params.contains(key) || !t.strategy.params[key].is_number_integer()) {
    throw MalformedTranscript(std::string("strategy.") + key + " is required");
  }
  return t.strategy.params[key].get<int>();
}

int recompute_guarantee(const Transcript& t) {
  const std::string& s = t.strategy.name;
  if (s == "hs-graph") {
    const int n = param_int(t, "n");
    return guarantee_hs_columns(n, hs_rows(n));
  }
  const int d = t.constraints.d;
  if (d < 2) throw MalformedTranscript("interval strategies need d >= 2");
  if (s == "hs-call") return per_call_guarantee(d);
  const int m = param_int(t, "m");
  if (m < 1) throw MalformedTranscript("m must be positive");
  return s == "sm" ? guarantee_sm(m, d) : guarantee_unit(m, d);
}

std::string summary_line(const Summary& s) {
  return "colors=" + std::to_string(s.algorithm_colors) + " guarantee=" +
         std::to_string(s.guarantee) + " paper_bound=" + std::to_string(s.paper_bound) +
         " witness=" + std::to_string(s.witness_colors) +
         " witness_valid=" + (s.witness_valid ? "true" : "false");
}

int strict_subset_total(const std::vector<CallDescriptor>& calls) {
  int total = 0;
  for (const CallDescriptor& c : calls) total += c.strict_subset_checks;
  return total;
}

}  // namespace

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const IllegalMove*>(&e) || dynamic_cast<const IllegalAlgorithmMove*>(&e) ||
      dynamic_cast<const ProtocolError*>(&e) || dynamic_cast<const Timeout*>(&e)) {
    return kIllegalMove;
  }
  if (dynamic_cast<const BadParameter*>(&e) || dynamic_cast<const MalformedTranscript*>(&e) ||
      dynamic_cast<const TooLarge*>(&e) || dynamic_cast<const DimensionMismatch*>(&e)) {
    return kConfigError;
  }
  return kBoundFailed;
}

std::optional<int> parse_k(const std::string& text) {
  if (text == "inf") return std::nullopt;
  std::size_t used = 0;
  int k = 0;
  try {
    k = std::stoi(text, &used);
  } catch (const std::exception&) {
    throw BadParameter("k must be a positive integer or \"inf\", got \"" + text + "\"");
  }
  if (used != text.size() || k < 1) {
    throw BadParameter("k must be a positive integer or \"inf\", got \"" + text + "\"");
  }
  return k;
}

void validate(const PlayConfig& cfg) {
  if (!kStrategies.count(cfg.strategy)) throw BadParameter("unknown strategy \"" + cfg.strategy + "\"");
  if (cfg.k && *cfg.k < 1) throw BadParameter("k must be positive");
  if (cfg.strategy == "hs-graph") {
    if (cfg.n < 2) throw BadParameter("hs-graph needs --n >= 2");
    return;
  }
  if (cfg.d < 2) throw BadParameter(cfg.strategy + " needs --d >= 2");
  if ((cfg.strategy == "sm" || cfg.strategy == "unit") && cfg.m < 1) {
    throw BadParameter(cfg.strategy + " needs --m >= 1");
  }
  if (cfg.region_cap < 1) throw BadParameter("region cap must be positive");
}

namespace {

void finish(PlayResult& result) {
  const Summary& s = result.transcript.summary;
  if (s.algorithm_colors < s.guarantee) {
    result.failures.push_back("algorithm used " + std::to_string(s.algorithm_colors) +
                              " colors, below the guarantee " + std::to_string(s.guarantee));
  }
  if (!s.witness_valid) result.failures.push_back("witness exceeds its bound");
  result.exit_code = result.failures.empty() ? kOk : kBoundFailed;
  result.summary_line = summary_line(s);
}

}  // namespace

PlayResult play(const PlayConfig& cfg) {
  validate(cfg);
  AnyAlgorithm algorithm(parse_algorithm(cfg.algorithm, cfg.seed));
  if (cfg.strategy != "hs-graph") return play_interval(cfg, algorithm.interval(), algorithm.info());
  PlayResult result;
  Transcript& t = result.transcript;
  t.constraints = GameConstraints{0, cfg.k};
  t.strategy.name = cfg.strategy;
  t.algorithm = algorithm.info();
  t.strategy.params = Json{{"n", cfg.n}};
  algorithm.graph().begin(header_json(t));
  HsGraphResult game = play_hs_graph(cfg.k, cfg.n, algorithm.graph());
  algorithm.graph().end();
  t.moves = std::move(game.moves);
  const int bound = presenter_bound(cfg.n, cfg.k);
  t.outcome = Json{{"presenter_colors", game.presenter_colors},
                   {"presenter_bound", bound},
                   {"strict_subset_checks", game.strict_subset_checks},
                   {"columns_within_half", game.columns_within_half}};
  t.summary.algorithm_colors = game.algorithm_colors;
  t.summary.guarantee = game.guarantee;
  t.summary.paper_bound = paper_bound_hs(cfg.n);
  t.summary.witness_colors = game.presenter_colors;
  t.summary.witness_valid = game.presenter_colors <= bound;
  t.summary.paper_colorability_bound = bound;
  finish(result);
  return result;
}

PlayResult play_interval(const PlayConfig& cfg, IntervalAlgorithm& algorithm, const AlgorithmInfo& info) {
  validate(cfg);
  if (cfg.strategy == "hs-graph") throw BadParameter("hs-graph is not an interval strategy");
  PlayResult result;
  Transcript& t = result.transcript;
  t.constraints = GameConstraints{cfg.d, cfg.k};
  t.strategy.name = cfg.strategy;
  t.algorithm = info;
  const Interval unit_region(Rational(0), Rational(1));
  if (cfg.strategy == "sm") {
    t.strategy.params = Json{{"m", cfg.m}, {"region", region_json(unit_region)}, {"region_cap", cfg.region_cap}};
  } else if (cfg.strategy == "unit") {
    t.strategy.params = Json{{"m", cfg.m}};
  } else {
    t.strategy.params = Json{{"eps_index", 1}, {"region", region_json(unit_region)}};
  }
  Referee referee(t.constraints, algorithm);
  CallLog log{referee};
  algorithm.begin(header_json(t));
  if (cfg.strategy == "sm") {
    SmConfig sm;
    sm.m = cfg.m;
    sm.d = cfg.d;
    sm.k = cfg.k;
    sm.region_cap = cfg.region_cap;
    const SmOutcome out = run_sm(sm, log);
    t.outcome = sm_outcome_json(out);
    t.summary.guarantee = out.guarantee;
    t.summary.paper_bound = paper_bound_sm(cfg.m, cfg.d);
  } else if (cfg.strategy == "unit") {
    const UnitOutcome out = run_unit(cfg.m, cfg.d, cfg.k, log);
    t.outcome = unit_outcome_json(out);
    t.outcome["left_of_p_checks"] = out.left_of_p_checks;
    t.summary.guarantee = out.guarantee;
    t.summary.paper_bound = paper_bound_unit(cfg.m, cfg.d);
  } else {
    MoveTags tags;
    log.play(cfg.d, cfg.k, 1, unit_region, "call", tags);
    t.summary.guarantee = per_call_guarantee(cfg.d);
    t.summary.paper_bound = paper_per_call_bound(cfg.d);
  }
  algorithm.end();
  t.outcome["strict_subset_checks"] = strict_subset_total(log.descriptors);
  t.summary.algorithm_colors = referee.state().distinct_colors();
  t.moves = referee.take_moves();
  t.calls = log.calls;
  const WitnessResult w = witness_coloring(t);
  t.summary.witness_colors = w.color_count;
  t.summary.witness_valid = w.valid;
  t.summary.palette_count = w.palette_count;
  t.summary.paper_colorability_bound = w.paper_bound;
  finish(result);
  return result;
}

VerifyResult verify(const Transcript& t) {
  VerifyResult out;
  Json& r = out.report;
  std::vector<std::string> problems;
  auto raise = [&](int code) { out.exit_code = std::max(out.exit_code, code); };
  const int guarantee = recompute_guarantee(t);
  r["strategy"] = t.strategy.name;
  r["rounds"] = t.moves.size();
  r["guarantee"] = guarantee;

  if (t.is_graph_game()) {
    const GraphReplayReport rep = replay_graph_transcript(t);
    r["algorithm_colors"] = rep.algorithm_colors;
    if (rep.illegal_round) {
      r["illegal_round"] = *rep.illegal_round;
      r["illegal_reason"] = rep.illegal_reason;
      raise(kIllegalMove);
    }
    problems.insert(problems.end(), rep.mismatches.begin(), rep.mismatches.end());
    const int n = param_int(t, "n");
    const int bound = presenter_bound(n, t.constraints.k);
    r["presenter_colors"] = rep.presenter_colors;
    if (!rep.illegal_round) {
      if (rep.algorithm_colors != t.summary.algorithm_colors) {
        problems.push_back("summary.algorithm_colors disagrees with replay");
      }
      if (rep.presenter_colors != t.summary.witness_colors) {
        problems.push_back("summary.witness_colors disagrees with replay");
      }
      if (rep.presenter_colors > bound) problems.push_back("presenter colors exceed n/k + b");
      if (static_cast<int>(t.moves.size()) == n && rep.algorithm_colors < guarantee) {
        problems.push_back("algorithm colors below the guarantee");
      }
    }
    if (guarantee != t.summary.guarantee) problems.push_back("summary.guarantee disagrees");
  } else {
    const ReplayReport rep = verify_transcript(t, guarantee);
    r["algorithm_colors"] = rep.distinct_colors;
    if (rep.illegal_round) {
      r["illegal_round"] = *rep.illegal_round;
      r["illegal_reason"] = rep.illegal_reason;
      raise(kIllegalMove);
    }
    problems.insert(problems.end(), rep.mismatches.begin(), rep.mismatches.end());
    if (!rep.illegal_round) {
      if (rep.distinct_colors < guarantee) problems.push_back("algorithm colors below the guarantee");
      if (t.strategy.name == "sm") {
        const SmCheckReport sm = check_sm_transcript(t);
        r["invariants"] = Json{{"nodes", sm.nodes}, {"case1", sm.case1}, {"case2", sm.case2},
                               {"early_stops", sm.early_stops}, {"violations", sm.violations}};
        problems.insert(problems.end(), sm.violations.begin(), sm.violations.end());
      } else if (t.strategy.name == "unit") {
        const UnitCheckReport unit = check_unit_transcript(t);
        r["invariants"] = Json{{"subphases", unit.subphases}, {"marked", unit.marked},
                               {"left_of_p_checks", unit.left_of_p_checks},
                               {"violations", unit.violations}};
        problems.insert(problems.end(), unit.violations.begin(), unit.violations.end());
      }
      try {
        const WitnessResult w = witness_coloring(t);
        r["witness_colors"] = w.color_count;
        r["palette_count"] = w.palette_count;
        r["paper_colorability_bound"] = w.paper_bound;
        r["witness_valid"] = w.valid;
        if (!w.valid) problems.push_back("witness exceeds its bound");
        if (w.color_count != t.summary.witness_colors) {
          problems.push_back("summary.witness_colors disagrees with the recomputed witness");
        }
        if (w.valid != t.summary.witness_valid) problems.push_back("summary.witness_valid disagrees");
      } catch (const SameEpsOverlap& e) {
        r["witness_valid"] = false;
        r["error"] = std::string("SameEpsOverlap: ") + e.what();
        problems.push_back(e.what());
      } catch (const SchemeConflict& e) {
        r["witness_valid"] = false;
        r["error"] = std::string("SchemeConflict: ") + e.what();
        problems.push_back(e.what());
      } catch (const WitnessInvalid& e) {
        r["witness_valid"] = false;
        r["error"] = std::string("WitnessInvalid: ") + e.what();
        problems.push_back(e.what());
      }
    }
  }
  if (!problems.empty()) raise(kBoundFailed);
  r["problems"] = problems;
  r["exit_code"] = out.exit_code;
  return out;
}

std::vector<TableRow> run_table(const TableSpec& spec) {
  std::vector<PlayConfig> cells;
  const bool graph = spec.strategy == "hs-graph";
  const bool needs_m = spec.strategy == "sm" || spec.strategy == "unit";
  const std::vector<int> sizes = graph ? spec.ns : spec.ds;
  const std::vector<int> ms = needs_m ? spec.ms : std::vector<int>{0};
  for (int size : sizes) {
    for (int m : ms) {
      for (const auto& k : spec.ks) {
        for (const std::string& a : spec.algorithms) {
          PlayConfig cfg;
          cfg.strategy = spec.strategy;
          (graph ? cfg.n : cfg.d) = size;
          cfg.m = m;
          cfg.k = k;
          cfg.algorithm = a;
          cfg.seed = spec.seed;
          cfg.region_cap = spec.region_cap;
          cells.push_back(cfg);
        }
      }
    }
  }
  std::vector<TableRow> rows(cells.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const PlayConfig& cfg = cells[i];
    TableRow& row = rows[i];
    row.strategy = cfg.strategy;
    row.n = cfg.n;
    row.d = cfg.d;
    row.k = cfg.k;
    row.m = cfg.m;
    row.algorithm = cfg.algorithm;
    try {
      const PlayResult res = play(cfg);
      const Summary& s = res.transcript.summary;
      row.colors_used = s.algorithm_colors;
      row.guarantee = s.guarantee;
      row.paper_bound = s.paper_bound;
      row.witness_colors = s.witness_colors;
      row.paper_colorability_bound = s.paper_colorability_bound.value_or(0);
      if (!res.failures.empty()) row.status = res.failures.front();
    } catch (const std::exception& e) {
      row.status = std::string("error: ") + e.what();
    }
  }
  return rows;
}

namespace {

std::string ratio(const TableRow& r) {
  if (r.witness_colors == 0) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", static_cast<double>(r.colors_used) / r.witness_colors);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string table_csv(const std::vector<TableRow>& rows) {
  std::ostringstream out;
  out << "strategy,n,d,k,m,algorithm,colors_used,guarantee,paper_bound,witness_colors,"
         "paper_colorability_bound,ratio,status\n";
  for (const TableRow& r : rows) {
    out << r.strategy << ',' << r.n << ',' << r.d << ',' << k_to_string(r.k) << ',' << r.m << ','
        << csv_field(r.algorithm) << ',' << r.colors_used << ',' << r.guarantee << ','
        << r.paper_bound << ',' << r.witness_colors << ',' << r.paper_colorability_bound << ','
        << ratio(r) << ',' << csv_field(r.status) << '\n';
  }
  return out.str();
}

Json table_json(const std::vector<TableRow>& rows) {
  Json out = Json::array();
  for (const TableRow& r : rows) {
    out.push_back(Json{{"strategy", r.strategy},
                       {"n", r.n},
                       {"d", r.d},
                       {"k", r.k ? Json(*r.k) : Json(nullptr)},
                       {"m", r.m},
                       {"algorithm", r.algorithm},
                       {"colors_used", r.colors_used},
                       {"guarantee", r.guarantee},
                       {"paper_bound", r.paper_bound},
                       {"witness_colors", r.witness_colors},
                       {"paper_colorability_bound", r.paper_colorability_bound},
                       {"ratio", r.witness_colors ? static_cast<double>(r.colors_used) / r.witness_colors : 0.0},
                       {"status", r.status}});
  }
  return out;
}

OracleResult oracle(const Transcript& t, int max_n) {
  if (max_n < 1) throw BadParameter("--max-n must be positive");
  if (max_n > 16) throw TooLarge("--max-n above 16 is out of brute-force reach");
  if (t.is_graph_game()) throw BadParameter("the oracle works on interval transcripts");
  const WitnessResult w = witness_coloring(t);
  OracleResult out;
  const std::size_t n = std::min<std::size_t>(t.moves.size(), static_cast<std::size_t>(max_n));
  std::vector<WeightedInterval> prefix;
  std::set<Color> witness_used;
  Json rows = Json::array();
  for (std::size_t i = 0; i < n; ++i) {
    prefix.push_back(t.moves[i].as_weighted());
    witness_used.insert(w.colors[i]);
    OracleRow row;
    row.size = static_cast<int>(i) + 1;
    row.clique = point_clique_bound(prefix, t.constraints);
    row.chromatic = brute_force_chromatic(prefix, t.constraints, max_n);
    row.witness = static_cast<int>(witness_used.size());
    if (!row.ok()) out.exit_code = kBoundFailed;
    rows.push_back(Json{{"prefix", row.size}, {"point_clique", row.clique},
                        {"chromatic", row.chromatic}, {"witness", row.witness}, {"ok", row.ok()}});
    out.rows.push_back(row);
  }
  out.report = Json{{"prefixes", std::move(rows)}, {"exit_code", out.exit_code}};
  return out;
}

}  // namespace olc
