#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "cli.hpp"

using namespace ellsurf;
using cli::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "ellsurf");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args) {
  Result r = run(std::move(args));
  EXPECT_EQ(r.code, 0) << r.err;
  return json::parse(r.out);
}

const std::string kCorpus = ELLSURF_CORPUS_DIR;
const std::string kLegendre = kCorpus + "/legendre.json";
const std::string kTx1 = R"({"a4": "t", "a6": "1"})";

class TempDir {
 public:
  TempDir() {
    path_ = std::filesystem::temp_directory_path() /
            ("ellsurf_cli_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
             ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace

TEST(Cli, AnalyzeLegendre) {
  json a = run_json({"analyze", kLegendre});
  EXPECT_EQ(a["chi"], 1);
  EXPECT_EQ(a["euler"], 12);
  EXPECT_EQ(a["t_weighted"], 3);
  EXPECT_EQ(a["T"], json::array({"(t - 1)", "(t)", "inf"}));
  std::vector<std::string> types;
  for (const auto& f : a["fibers"]) types.push_back(f["kodaira"]);
  EXPECT_EQ(types, (std::vector<std::string>{"I2", "I2", "I2*"}));

  // --curve and the positional form agree
  EXPECT_EQ(run({"analyze", "--curve", kLegendre}).out, run({"analyze", kLegendre}).out);
}

TEST(Cli, AnalyzeIsotrivial) {
  json a = run_json({"analyze", R"({"a4": "0", "a6": "t^2 + 1"})"});
  EXPECT_EQ(a["isotrivial"], true);
  EXPECT_TRUE(a["rank_bounds"].is_null());
}

TEST(Cli, Height) {
  json h = run_json({"height", "--curve", kTx1, "--point", R"(["0", "1"])"});
  EXPECT_EQ(h["hhat"], "1/4");
  EXPECT_EQ(h["norm"], "half");
  EXPECT_EQ(h["local_corrections"]["inf"], "3/2");
  EXPECT_EQ(h["components"]["inf"]["component"], "non-identity");

  EXPECT_EQ(run_json({"height", "--curve", kTx1, "--point", R"(["0","1"])", "--height-norm", "shioda"})["hhat"], "1/2");
  EXPECT_EQ(run_json({"height", "--curve", kTx1, "--point", R"(["0","1"])", "--height-norm", "paper"})["hhat"], "1/4");
  EXPECT_EQ(run_json({"height", "--curve", kTx1, "--point", R"("O")"})["hhat"], "0");
}

TEST(Cli, HeightOutputRoundTrips) {
  json h = run_json({"height", "--curve", kTx1, "--point", R"(["t^2/4", "-t^3/8 - 1"])"});
  EXPECT_EQ(h["hhat"], "1");
  json again = run_json({"height", "--curve", kTx1, "--point", h["point"].dump()});
  EXPECT_EQ(again, h);
}

TEST(Cli, IntegralRankOne) {
  json r = run_json({"integral", "--curve", kTx1, "--basis", R"([["0","1"]])", "--s", "(t)"});
  EXPECT_EQ(r["s_weighted"], 1);
  EXPECT_EQ(r["hs_height_bound"], "27");
  EXPECT_EQ(r["exhaustive"], true);
  EXPECT_EQ(r["count"], 6);
  EXPECT_EQ(r["hs_check"]["holds"], true);
  EXPECT_EQ(r["count_bound"]["asserted"], true);
  EXPECT_EQ(r["count_bound"]["holds"], true);
  EXPECT_EQ(r["count_bound"]["lattice_min"], "1/4");
  for (const auto& f : r["found"]) EXPECT_EQ(f["meeting_places"].size() <= 1, true);
}

TEST(Cli, IntegralTorsionOnly) {
  json r = run_json({"integral", "--curve", kLegendre, "--torsion", kLegendre});
  EXPECT_EQ(r["count"], 3);
  EXPECT_TRUE(r["count_bound"]["lattice_min"].is_null());
  EXPECT_EQ(r["count_bound"]["asserted"], false);
}

TEST(Cli, IntegralPointUnionDivisor) {
  json r = run_json({"integral", "--curve", kTx1, "--basis", R"([["0","1"]])", "--divisor", R"([["0","1"]])",
                     "--bound-override", "3"});
  EXPECT_EQ(r["divisor"]["kind"], "point_union");
  for (const auto& f : r["found"]) EXPECT_NE(f["point"], json::array({"0", "1"}));
}

TEST(Cli, IntegralDeterministicAcrossJobs) {
  std::vector<std::string> args{"integral", "--curve", kTx1, "--basis", R"([["0","1"]])", "--s", "(t),inf"};
  Result a = run(args), b = run(args);
  args.insert(args.begin(), {"--jobs", "3"});
  Result c = run(args);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, c.out);
}

TEST(Cli, Sunit) {
  json s = run_json({"sunit", "--places", "(t),(t-1),inf"});
  EXPECT_EQ(s["ordered_count"], 6);
  EXPECT_EQ(s["unordered_count"], 3);
  EXPECT_EQ(s["evertse_bound"], "235298");
  EXPECT_EQ(s["within_bound"], true);
  EXPECT_EQ(s["solutions"].size(), 6u);
  EXPECT_EQ(run({"sunit", "--places", "(t),(t-1),inf"}).out, run({"sunit", "--places", "inf,(t-1),(t)"}).out);
}

TEST(Cli, Bounds) {
  json b = run_json({"bounds", "parshin_genus", "--args", "d=1"});
  EXPECT_EQ(b["value"], "2");
  EXPECT_EQ(b["kind"], "integer");
  EXPECT_FALSE(b["anchor"].get<std::string>().empty());

  json k = run_json({"bounds", "kani_bound", "--args", "q=2,m=2"});
  EXPECT_EQ(k["kind"], "decimal");
  EXPECT_EQ(k["parts"]["integer_factor"], "549755813888");
  EXPECT_EQ(k["value"].get<std::string>().substr(0, 6), "4.5215");

  EXPECT_EQ(run_json({"bounds", "C", "--args", "q=2,g=0,s=3"})["kind"], "symbolic");
}

TEST(Cli, TableFormat) {
  Result r = run({"--format", "table", "analyze", kLegendre});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("I2*"), std::string::npos);
  EXPECT_NE(r.out.find("chi 1"), std::string::npos);
  EXPECT_EQ(run({"--format", "table", "sunit", "--places", "(t),(t-1),inf"}).code, 0);
}

TEST(Cli, InputErrorsExitTwo) {
  EXPECT_EQ(run({"analyze", "/nonexistent/curve.json"}).code, cli::InputError);
  EXPECT_EQ(run({"analyze", "{not json"}).code, cli::InputError);
  EXPECT_EQ(run({"analyze", R"({"a7": "t"})"}).code, cli::InputError);
  EXPECT_EQ(run({"analyze", R"({"a4": "0", "a6": "0"})"}).code, cli::InputError);  // singular
  EXPECT_EQ(run({"height", "--curve", kTx1, "--point", R"(["1","1"])"}).code, cli::InputError);
  EXPECT_EQ(run({"height", "--curve", kTx1}).code, cli::InputError);
  EXPECT_EQ(run({"bounds", "nope"}).code, cli::InputError);
  EXPECT_EQ(run({"bounds", "unit_cover_genus", "--args", "d=4"}).code, cli::InputError);
  EXPECT_EQ(run({"sunit", "--places", "t^2-1"}).code, cli::InputError);
  EXPECT_EQ(run({"--format", "xml", "sunit", "--places", "t"}).code, cli::InputError);
  EXPECT_EQ(run({}).code, cli::InputError);
  Result r = run({"integral", "--curve", kTx1, "--basis", R"([["0","1"],["t^2/4","-t^3/8 - 1"]])"});
  EXPECT_EQ(r.code, cli::InputError);
  EXPECT_NE(r.err.find("DependentBasis"), std::string::npos);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, VerifyCorpus) {
  Result r = run({"verify-corpus", kCorpus});
  EXPECT_EQ(r.code, 0) << r.out;
  json j = json::parse(r.out);
  EXPECT_EQ(j["entries"], 3);
  EXPECT_EQ(j["pass"], true);
  for (const auto& row : j["results"]) EXPECT_FALSE(row["provenance"].get<std::string>().empty()) << row.dump();
}

TEST(Cli, VerifyCorpusNegativeControl) {
  TempDir dir;
  json entry = json::parse(std::ifstream(kLegendre));
  entry["expect"]["chi"]["value"] = 2;
  std::ofstream(dir.path() / "legendre.json") << entry.dump(2);
  std::ofstream(dir.path() / "broken.json") << "{ nope";

  Result r = run({"verify-corpus", dir.path().string()});
  EXPECT_EQ(r.code, cli::VerifyFailure);
  json j = json::parse(r.out);
  int failed = 0;
  for (const auto& row : j["results"])
    if (!row["pass"]) {
      ++failed;
      EXPECT_TRUE(row["check"] == "chi" || row["entry"] == "broken") << row.dump();
    }
  EXPECT_EQ(failed, 2);
  // the other checks of the perturbed entry still ran
  EXPECT_GT(j["checks"].get<int>(), 5);
}

TEST(Cli, VerifyCorpusEmptyAndMissing) {
  TempDir dir;
  Result r = run({"verify-corpus", dir.path().string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("warning"), std::string::npos);
  EXPECT_EQ(run({"verify-corpus", (dir.path() / "missing").string()}).code, cli::InputError);
}
