#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "olc/harness.hpp"
#include "olc/witness.hpp"

using namespace olc;

namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "olc_harness_test" /
                       ::testing::UnitTest::GetInstance()->current_test_info()->name();
  fs::create_directories(dir);
  return dir / name;
}

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun cli(const std::string& args) {
  const fs::path out = scratch("stdout.txt");
  const std::string cmd = std::string(OLC_BINARY) + " " + args + " > " + out.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  CliRun r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json load(const fs::path& p) { return Json::parse(slurp(p)); }

void save(const fs::path& p, const Json& j) { std::ofstream(p) << j.dump(2); }

}  // namespace

TEST(ExitCodeFor, Mapping) {
  EXPECT_EQ(exit_code_for(IllegalAlgorithmMove("x", 1)), kIllegalMove);
  EXPECT_EQ(exit_code_for(ProtocolError("x")), kIllegalMove);
  EXPECT_EQ(exit_code_for(Timeout("x")), kIllegalMove);
  EXPECT_EQ(exit_code_for(BadParameter("x")), kConfigError);
  EXPECT_EQ(exit_code_for(MalformedTranscript("x")), kConfigError);
  EXPECT_EQ(exit_code_for(TooLarge("x")), kConfigError);
  EXPECT_EQ(exit_code_for(RegionCapExceeded("x")), kBoundFailed);
  EXPECT_EQ(exit_code_for(SameEpsOverlap("x")), kBoundFailed);
}

TEST(ParseK, Values) {
  EXPECT_FALSE(parse_k("inf").has_value());
  EXPECT_EQ(parse_k("4"), 4);
  EXPECT_THROW(parse_k("0"), BadParameter);
  EXPECT_THROW(parse_k("4x"), BadParameter);
}

TEST(Cli, PlayDeskScaleExamples) {
  const fs::path t = scratch("sm.json");
  const CliRun sm = cli("play --strategy sm --m 2 --d 16 --k 4 --algorithm first-fit --out " + t.string());
  EXPECT_EQ(sm.code, 0);
  EXPECT_NE(sm.out.find("guarantee=21"), std::string::npos) << sm.out;
  const Json j = load(t);
  EXPECT_GE(j["summary"]["algorithm_colors"].get<int>(), 21);
  EXPECT_LE(j["summary"]["witness_colors"].get<int>(), 22);

  const fs::path g = scratch("graph.json");
  EXPECT_EQ(cli("play --strategy hs-graph --n 64 --k 2 --algorithm graph-first-fit --out " + g.string()).code, 0);
  EXPECT_GE(load(g)["summary"]["algorithm_colors"].get<int>(), 16);
}

TEST(Cli, VerifyAcceptsEveryPlayOutput) {
  const std::vector<std::string> plays{
      "--strategy hs-graph --n 40 --k 3",      "--strategy hs-call --d 8 --k inf",
      "--strategy sm --m 2 --d 8 --k 2",       "--strategy unit --m 3 --d 4 --k 1",
      "--strategy unit --m 2 --d 8 --algorithm random --seed 3"};
  for (const std::string& p : plays) {
    const fs::path t = scratch("v.json");
    ASSERT_EQ(cli("play " + p + " --out " + t.string()).code, 0) << p;
    const CliRun v = cli("verify --in " + t.string());
    EXPECT_EQ(v.code, 0) << p << "\n" << v.out;
  }
}

TEST(Cli, ConfigurationErrorsExitThree) {
  EXPECT_EQ(cli("play --strategy sm --m 2 --d 1").code, 3);
  EXPECT_EQ(cli("play --strategy sm --m 2 --d 8 --k 0").code, 3);
  EXPECT_EQ(cli("play --strategy nope --d 8").code, 3);
  EXPECT_EQ(cli("play --strategy sm --d 8 --m 1 --bogus").code, 3);
  EXPECT_EQ(cli("play --strategy sm --d 8 --m 1 --algorithm best-fit").code, 3);
  const fs::path bad = scratch("bad.json");
  std::ofstream(bad) << "{ not json";
  EXPECT_EQ(cli("verify --in " + bad.string()).code, 3);
  EXPECT_EQ(cli("verify --in " + scratch("missing.json").string()).code, 3);
}

TEST(Cli, IllegalExternalAlgorithmExitsTwo) {
  const fs::path script = scratch("zero.py");
  std::ofstream(script) << "import sys\nsys.stdin.readline()\nfor line in sys.stdin:\n"
                           "    print('{\"color\": 0}', flush=True)\n";
  EXPECT_EQ(cli("play --strategy hs-call --d 4 --algorithm 'external:python3 " + script.string() + "'").code, 2);
}

TEST(Cli, CorruptionIllegalColor) {
  const fs::path t = scratch("c1.json");
  ASSERT_EQ(cli("play --strategy hs-call --d 8 --out " + t.string()).code, 0);
  Json j = load(t);
  // Round 2 is adjacent to round 1 in every call.
  j["moves"][1]["algorithm_color"] = j["moves"][0]["algorithm_color"];
  save(t, j);
  const CliRun v = cli("verify --in " + t.string());
  EXPECT_EQ(v.code, 2);
  EXPECT_EQ(Json::parse(v.out)["illegal_round"].get<int>(), 2);
}

TEST(Cli, CorruptionEpsCollision) {
  const fs::path t = scratch("c2.json");
  ASSERT_EQ(cli("play --strategy unit --m 2 --d 4 --out " + t.string()).code, 0);
  Json j = load(t);
  for (auto& m : j["moves"]) {
    if (m.value("phase", "") == "sep") m["eps_index"] = 1;
  }
  for (auto& c : j["calls"]) {
    if (c["path"] == "sep") c["eps_index"] = 1;
  }
  save(t, j);
  const CliRun v = cli("verify --in " + t.string());
  EXPECT_EQ(v.code, 1);
  EXPECT_NE(v.out.find("SameEpsOverlap"), std::string::npos) << v.out;
}

TEST(Cli, CorruptionOverstatedSummary) {
  const fs::path t = scratch("c3.json");
  ASSERT_EQ(cli("play --strategy sm --m 2 --d 8 --out " + t.string()).code, 0);
  Json j = load(t);
  j["summary"]["algorithm_colors"] = j["summary"]["algorithm_colors"].get<int>() + 1;
  save(t, j);
  EXPECT_EQ(cli("verify --in " + t.string()).code, 1);
}

TEST(Cli, TableShape) {
  const CliRun r = cli("table --strategy sm --d 4,8,16 --m 1,2 --k inf --algorithms first-fit");
  ASSERT_EQ(r.code, 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line,
            "strategy,n,d,k,m,algorithm,colors_used,guarantee,paper_bound,witness_colors,"
            "paper_colorability_bound,ratio,status");
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    EXPECT_NE(line.find(",ok"), std::string::npos) << line;
  }
  EXPECT_EQ(rows, 6);
}

TEST(RunTable, RowsFollowInputOrderAndMeetGuarantees) {
  TableSpec spec;
  spec.strategy = "sm";
  spec.ds = {16, 4, 8};
  spec.ms = {2, 1};
  spec.ks = {4, std::nullopt};
  spec.algorithms = {"first-fit", "random"};
  spec.seed = 5;
  const auto rows = run_table(spec);
  ASSERT_EQ(rows.size(), 24u);
  EXPECT_EQ(rows.front().d, 16);
  EXPECT_EQ(rows.front().m, 2);
  EXPECT_EQ(rows.back().d, 8);
  EXPECT_EQ(rows.back().algorithm, "random");
  for (const TableRow& r : rows) {
    EXPECT_EQ(r.status, "ok");
    EXPECT_GE(r.colors_used, r.guarantee);
  }
}

TEST(Cli, OracleLimits) {
  const fs::path t = scratch("o.json");
  ASSERT_EQ(cli("play --strategy sm --m 2 --d 3 --out " + t.string()).code, 0);
  const CliRun ok = cli("oracle --in " + t.string() + " --max-n 12");
  EXPECT_EQ(ok.code, 0) << ok.out;
  EXPECT_EQ(Json::parse(ok.out)["prefixes"].size(), 12u);
  EXPECT_EQ(cli("oracle --in " + t.string() + " --max-n 17").code, 3);
}

TEST(Cli, DeterministicTranscripts) {
  const fs::path a = scratch("det_a.json");
  const fs::path b = scratch("det_b.json");
  for (const std::string& p : {std::string("--strategy unit --m 2 --d 8 --k inf --algorithm random --seed 7"),
                               std::string("--strategy sm --m 2 --d 8 --k 2 --algorithm random --seed 11"),
                               std::string("--strategy hs-graph --n 50 --k 3 --algorithm random --seed 2")}) {
    ASSERT_EQ(cli("play " + p + " --out " + a.string()).code, 0);
    ASSERT_EQ(cli("play " + p + " --out " + b.string()).code, 0);
    EXPECT_EQ(slurp(a), slurp(b)) << p;
  }
}
