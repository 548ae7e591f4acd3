#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "schur_cli/commands.hpp"

namespace {

using namespace schur::cli;
namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::initializer_list<std::string> args) {
  std::vector<std::string> storage{"schur_gap"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  std::ostringstream out, err;
  const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("schur_gap_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string spec(const std::string& name, const std::string& body) {
    const auto p = dir_ / name;
    std::ofstream(p) << body;
    return p.string();
  }

  std::string read(const std::string& name) {
    std::ifstream in(dir_ / name, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  fs::path dir_;
};

TEST(ParseHelpers, Ranges) {
  EXPECT_EQ(parse_k_range("4..16"), (std::pair{4, 16}));
  EXPECT_EQ(parse_k_range("7"), (std::pair{7, 7}));
  EXPECT_THROW(parse_k_range("5..2"), UsageError);
  EXPECT_THROW(parse_k_range("0..2"), UsageError);
  EXPECT_THROW(parse_k_range("a..b"), UsageError);
}

TEST(ParseHelpers, ListsAndConstants) {
  EXPECT_EQ(parse_number_list("0.2, 0.1,0.05", "--eps"), (std::vector<double>{0.2, 0.1, 0.05}));
  EXPECT_THROW(parse_number_list("0.2,x", "--eps"), UsageError);
  EXPECT_EQ(parse_int_list("4,5", "--n"), (std::vector<int>{4, 5}));
  EXPECT_DOUBLE_EQ(parse_constant("25/9").resolve(5), 25.0 / 9.0);
  EXPECT_DOUBLE_EQ(parse_constant("sharp").resolve(3), 9.0);
  EXPECT_DOUBLE_EQ(parse_constant("sharp-0.05").resolve(4), 3.95);
  EXPECT_DOUBLE_EQ(parse_constant("8.9").resolve(3), 8.9);
  EXPECT_THROW(parse_constant("sharp*2"), UsageError);
  EXPECT_THROW(parse_constant("1/0"), UsageError);
}

TEST(ResolveNodes, Precedence) {
  RunConfig config;
  ::unsetenv("SCHUR_GAP_NODES");
  EXPECT_EQ(resolve_nodes(config, std::nullopt), 4096u);
  ::setenv("SCHUR_GAP_NODES", "1024", 1);
  EXPECT_EQ(resolve_nodes(config, std::nullopt), 1024u);
  EXPECT_EQ(resolve_nodes(config, 512u), 512u);
  config.nodes = 256;
  EXPECT_EQ(resolve_nodes(config, 512u), 256u);
  config.nodes.reset();
  ::setenv("SCHUR_GAP_NODES", "1000", 1);
  EXPECT_THROW(resolve_nodes(config, std::nullopt), UsageError);
  ::unsetenv("SCHUR_GAP_NODES");
}

TEST_F(CliTest, AuditRoundIsIndeterminate) {
  const auto in = spec("round.json", R"({"family":"round","n":5,"radius":1.0})");
  const auto r = run_cli({"audit", "--input", in, "--nodes", "512"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("\"ratio\": null"), std::string::npos);
  EXPECT_NE(r.out.find("\"ratio_indeterminate\": true"), std::string::npos);
}

TEST_F(CliTest, AuditNeckRecordsFailedHypothesis) {
  const auto in = spec("neck.json", R"({"family":"neck","n":5,"eps":0.05,"r1":1.0,"r2":2.0})");
  const auto r = run_cli({"audit", "--input", in, "--output", (dir_ / "neck_report.json").string()});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto report = read("neck_report.json");
  EXPECT_NE(report.find("\"hypothesis_failed\": true"), std::string::npos);
  EXPECT_NE(report.find("\"main_satisfied\": false"), std::string::npos);
}

TEST_F(CliTest, AuditCsvHasOneRow) {
  const auto in = spec("cz.json", R"({"family":"conformal_zonal","n":3,"k":4,"t":0.001})");
  const auto r = run_cli({"audit", "--input", in, "--format", "csv", "--nodes", "1024"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 2);
}

TEST_F(CliTest, InputErrorsExitOne) {
  const auto bad = spec("bad.json", R"({"family":"neck","n":5,"eps":0.5})");
  auto r = run_cli({"audit", "--input", bad});
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(r.err.empty());
  r = run_cli({"audit"});
  EXPECT_EQ(r.code, 1);
  r = run_cli({"audit", "--input", spec("ok.json", R"({"family":"round","n":3})"), "--nodes", "100"});
  EXPECT_EQ(r.code, 1);
  r = run_cli({"frobnicate"});
  EXPECT_EQ(r.code, 1);
  r = run_cli({"sweep-neck", "--n", "2"});
  EXPECT_EQ(r.code, 1);
}

TEST_F(CliTest, FailedRunLeavesNoOutputFile) {
  const auto bad = spec("bad.json", R"({"family":"conformal_zonal","n":3,"k":4,"t":5.0})");
  const auto r = run_cli({"audit", "--input", bad, "--output", (dir_ / "never.json").string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(fs::exists(dir_ / "never.json"));
}

TEST_F(CliTest, IdentitiesPassOnConformal) {
  const auto in = spec("cz.json", R"({"family":"conformal_zonal","n":4,"k":3,"t":0.01,"nodes":1024})");
  const auto r = run_cli({"identities", "--input", in, "--format", "csv"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 7);
  const auto strict = run_cli({"identities", "--input", in, "--tol", "1e-30"});
  EXPECT_EQ(strict.code, 2);
}

TEST_F(CliTest, SweepHarmonicColumns) {
  const auto r = run_cli({"sweep-harmonic", "--n", "3", "--k-range", "3..4", "--t", "1e-3,1e-4", "--constant",
                          "sharp", "--format", "csv", "--nodes", "1024"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("n,k,lambda,C,Fpp_analytic,Fpp_fd,leading_coeff,ratio_t=", 0), 0u);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 3);
}

TEST_F(CliTest, SweepHarmonicRecordsPositivityFailurePerRow) {
  const auto r = run_cli({"sweep-harmonic", "--n", "3", "--k-range", "4..4", "--t", "2,1e-3", "--format", "csv",
                          "--nodes", "512"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("conformal factor"), std::string::npos);
}

TEST_F(CliTest, SweepsAreIndependentOfJobs) {
  const auto a = (dir_ / "a.csv").string();
  const auto b = (dir_ / "b.csv").string();
  ASSERT_EQ(run_cli({"sweep-neck", "--n", "4,5", "--eps", "0.2,0.1", "--nodes", "1024", "--format", "csv", "--jobs",
                     "1", "--output", a}).code, 0);
  ASSERT_EQ(run_cli({"sweep-neck", "--n", "4,5", "--eps", "0.2,0.1", "--nodes", "1024", "--format", "csv", "--jobs",
                     "8", "--output", b}).code, 0);
  EXPECT_EQ(read("a.csv"), read("b.csv"));
}

TEST_F(CliTest, VariationReportsViolatingFrequency) {
  const auto r = run_cli({"variation", "--n", "3", "--k-range", "2..3", "--constant", "sharp-0.1", "--nodes", "1024"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("\"k\": 15"), std::string::npos);
  EXPECT_NE(r.out.find("\"passed\": true"), std::string::npos);
}

TEST_F(CliTest, HelpExitsZero) {
  const auto r = run_cli({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("sweep-neck"), std::string::npos);
}

}  // namespace
