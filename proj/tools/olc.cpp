#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "olc/harness.hpp"

namespace {

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw olc::BadParameter("cannot write " + path);
  out << text;
}

std::vector<std::optional<int>> parse_ks(const std::vector<std::string>& texts) {
  std::vector<std::optional<int>> out;
  for (const std::string& t : texts) out.push_back(olc::parse_k(t));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"On-line interval coloring adversaries: play, verify, tabulate, and check."};
  app.require_subcommand(1);

  olc::PlayConfig play_cfg;
  std::string k_text = "inf";
  std::string out_path;
  auto* play = app.add_subcommand("play", "Run a strategy against an algorithm and write the transcript");
  play->add_option("--strategy", play_cfg.strategy, "hs-graph | hs-call | sm | unit")->required();
  play->add_option("--n", play_cfg.n, "Vertices (hs-graph)");
  play->add_option("--m", play_cfg.m, "Recursion depth (sm, unit)");
  play->add_option("--d", play_cfg.d, "Weight dimension");
  play->add_option("--k", k_text, "Cardinality bound or inf")->capture_default_str();
  play->add_option("--algorithm", play_cfg.algorithm,
                   "first-fit | graph-first-fit | random | fresh | external:<command>")
      ->capture_default_str();
  play->add_option("--seed", play_cfg.seed, "Seed for the random algorithm")->capture_default_str();
  play->add_option("--region-cap", play_cfg.region_cap, "Maximum regions per sm instance")
      ->capture_default_str();
  play->add_option("--out", out_path, "Transcript path (stdout when omitted)");

  std::string in_path;
  std::string format = "json";
  auto* verify = app.add_subcommand("verify", "Replay a transcript and check every invariant");
  verify->add_option("--in", in_path, "Transcript path")->required();
  verify->add_option("--format", format, "json")->check(CLI::IsMember({"json"}));

  olc::TableSpec table_spec;
  std::vector<std::string> k_list{"inf"};
  std::string table_format = "csv";
  std::string table_out;
  auto* table = app.add_subcommand("table", "Play the cartesian product of parameters; one row per cell");
  table->add_option("--strategy", table_spec.strategy, "hs-graph | hs-call | sm | unit")->required();
  table->add_option("--n", table_spec.ns, "Vertex counts (hs-graph)")->delimiter(',');
  table->add_option("--d", table_spec.ds, "Dimensions")->delimiter(',');
  table->add_option("--m", table_spec.ms, "Depths")->delimiter(',');
  table->add_option("--k", k_list, "Cardinality bounds, inf allowed")->delimiter(',');
  table->add_option("--algorithms", table_spec.algorithms, "Algorithms")->delimiter(',')->required();
  table->add_option("--seed", table_spec.seed, "Seed for random algorithms");
  table->add_option("--region-cap", table_spec.region_cap, "Maximum regions per sm instance");
  table->add_option("--format", table_format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  table->add_option("--out", table_out, "Output path (stdout when omitted)");

  int max_n = 12;
  auto* oracle = app.add_subcommand("oracle", "Brute-force sandwich check on transcript prefixes");
  oracle->add_option("--in", in_path, "Transcript path")->required();
  oracle->add_option("--max-n", max_n, "Longest prefix")->capture_default_str();
  oracle->add_option("--format", format, "json")->check(CLI::IsMember({"json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : olc::kConfigError;
  }

  try {
    if (*play) {
      play_cfg.k = olc::parse_k(k_text);
      const olc::PlayResult res = olc::play(play_cfg);
      write_text(out_path, olc::serialize(res.transcript));
      (out_path.empty() ? std::cerr : std::cout) << res.summary_line << "\n";
      for (const std::string& f : res.failures) std::cerr << "failed: " << f << "\n";
      return res.exit_code;
    }
    if (*verify) {
      const olc::VerifyResult res = olc::verify(olc::read_transcript(in_path));
      std::cout << res.report.dump(2) << "\n";
      return res.exit_code;
    }
    if (*table) {
      table_spec.ks = parse_ks(k_list);
      if (table_spec.ms.empty()) table_spec.ms = {1};
      const auto rows = olc::run_table(table_spec);
      write_text(table_out, table_format == "csv" ? olc::table_csv(rows)
                                                  : olc::table_json(rows).dump(2) + "\n");
      return olc::kOk;
    }
    if (*oracle) {
      const olc::OracleResult res = olc::oracle(olc::read_transcript(in_path), max_n);
      std::cout << res.report.dump(2) << "\n";
      return res.exit_code;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return olc::exit_code_for(e);
  }
  return olc::kConfigError;
}
