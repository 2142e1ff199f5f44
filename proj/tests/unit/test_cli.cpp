#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "json.hpp"
#include "mosrank/cli.hpp"

using namespace mosrank;

namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int status = run_cli(args, out, err);
  return {status, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() / ("mosrank_cli_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir_);
    ::unsetenv(kFormatEnvVar);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const auto p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  std::filesystem::path dir_;
};

nlohmann::json parse_json(const std::string& s) { return nlohmann::json::parse(s); }

}  // namespace

TEST_F(CliTest, MaxEffectCsv) {
  const auto r = run({"max-effect", "--n", "10", "--m-max", "4", "--format", "csv"});
  ASSERT_EQ(r.status, kExitOk) << r.err;
  std::istringstream in(r.out);
  std::string line, last;
  int data_rows = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.starts_with("#")) continue;
    if (!header_seen) {
      EXPECT_EQ(line, "n,m,max_delta_rho");
      header_seen = true;
      continue;
    }
    ++data_rows;
    last = line;
  }
  EXPECT_EQ(data_rows, 5);
  ASSERT_TRUE(last.starts_with("10,4,"));
  EXPECT_NEAR(std::stod(last.substr(5)), 0.133333, 1e-6);
}

TEST_F(CliTest, SrccSameFileIsOne) {
  const auto f = write("a.csv", "condition,mos,ci95\nx,4.1,0.1\ny,3.2,0.1\nz,2.5,0.1\n");
  const auto r = run({"srcc", "--input-a", f, "--input-b", f, "--format", "json"});
  ASSERT_EQ(r.status, kExitOk) << r.err;
  EXPECT_EQ(parse_json(r.out)["summary"]["srcc_raw"].get<double>(), 1.0);
}

TEST_F(CliTest, SrccMatchesById) {
  const auto a = write("a.csv", "condition,mos,ci95\nx,4.1,0.1\ny,3.2,0.1\nz,2.5,0.1\n");
  const auto b = write("b.csv", "condition,mos,ci95\nz,1.0,0.1\nx,3.0,0.1\ny,2.0,0.1\n");
  const auto r = run({"srcc", "--input-a", a, "--input-b", b, "--transform", "--format", "json"});
  ASSERT_EQ(r.status, kExitOk) << r.err;
  const auto j = parse_json(r.out);
  EXPECT_EQ(j["summary"]["srcc_raw"].get<double>(), 1.0);
  EXPECT_EQ(j["summary"]["srcc_transformed"].get<double>(), 1.0);
}

TEST_F(CliTest, SrccUnmatchedIds) {
  const auto a = write("a.csv", "condition,mos,ci95\nx,4.1,0.1\ny,3.2,0.1\n");
  const auto b = write("b.csv", "condition,mos,ci95\nx,4.1,0.1\nw,3.2,0.1\n");
  const auto r = run({"srcc", "--input-a", a, "--input-b", b});
  EXPECT_EQ(r.status, kExitInputError);
  EXPECT_NE(r.err.find("y"), std::string::npos);
  EXPECT_NE(r.err.find("w"), std::string::npos);
}

TEST_F(CliTest, SrccDegenerateAfterTransformExitsTwo) {
  const auto a = write("a.csv", "condition,mos,ci95\nx,4.1,0.3\ny,4.0,0.3\nz,3.9,0.3\n");
  const auto r = run({"srcc", "--input-a", a, "--input-b", a, "--transform", "--format", "json"});
  EXPECT_EQ(r.status, kExitDegenerate);
  const auto j = parse_json(r.out);
  EXPECT_EQ(j["summary"]["srcc_raw"].get<double>(), 1.0);
  EXPECT_TRUE(j["summary"]["srcc_transformed"].is_null());
}

TEST_F(CliTest, TransformTwoTied) {
  const auto f = write("two_tied.csv", "condition,mos,ci95\nC1,4.5,0.2\nC2,4.4,0.05\n");
  const auto r = run({"transform", "--input", f, "--report-groups", "--format", "json"});
  ASSERT_EQ(r.status, kExitOk) << r.err;
  const auto j = parse_json(r.out);
  EXPECT_EQ(j["schema_version"], 1);
  EXPECT_EQ(j["operation"], "transform");
  EXPECT_EQ(j["config"]["input"], f);
  const auto& rows = j["tables"]["transformed"]["rows"];
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0][3].get<double>(), 4.45);
  EXPECT_EQ(rows[1][3].get<double>(), 4.45);
  EXPECT_EQ(j["tables"]["groups"]["rows"][0][4], "C1;C2");
}

TEST_F(CliTest, TransformFromVotes) {
  const auto f = write("votes.csv", "condition,vote\nc1,4\nc1,4\nc1,5\nc1,4\nc2,1\nc2,2\nc2,1\n");
  const auto r = run({"transform", "--input", f, "--format", "csv"});
  ASSERT_EQ(r.status, kExitOk) << r.err;
  EXPECT_NE(r.out.find("c1,4.25,"), std::string::npos);
}

TEST_F(CliTest, GapsFraction) {
  const auto f = write("g.csv", "condition,mos,ci95\nA,4.0,0.1\nB,3.95,0.02\nC,3.0,0.1\n");
  const auto r = run({"gaps", "--input", f, "--format", "json"});
  ASSERT_EQ(r.status, kExitOk) << r.err;
  EXPECT_EQ(parse_json(r.out)["summary"]["fraction_within_ci"].get<double>(), 0.5);
}

TEST_F(CliTest, SimulateIsReproducibleAcrossThreadCounts) {
  const auto f = write("s.csv", "condition,mos,ci95\na,4.5,0.2\nb,4.4,0.1\nc,4.1,0.2\nd,3.6,0.1\n");
  std::vector<std::string> args{"simulate", "--input", f, "--sigma-start", "0.01", "--sigma-stop", "0.1",
                                "--sigma-step", "0.03", "--runs", "50", "--seed", "3", "--format", "json"};
  const auto one = run(args);
  ASSERT_EQ(one.status, kExitOk) << one.err;
  args.insert(args.end(), {"--threads", "3"});
  EXPECT_EQ(run(args).out, one.out);
  const auto j = parse_json(one.out);
  const auto& rows = j["tables"]["noise_study"]["rows"];
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[3][0].get<double>(), 0.1);
}

TEST_F(CliTest, OutputFileAndEnvironmentFormat) {
  const auto path = (dir_ / "out.json").string();
  ::setenv(kFormatEnvVar, "json", 1);
  const auto r = run({"max-effect", "--n", "5", "--m-max", "2", "--output", path});
  ::unsetenv(kFormatEnvVar);
  ASSERT_EQ(r.status, kExitOk) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  const auto j = nlohmann::json::parse(in);
  EXPECT_EQ(j["tables"]["max_effect"]["rows"].size(), 3u);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run({}).status, kExitInputError);
  EXPECT_EQ(run({"bogus"}).status, kExitInputError);
  const auto unknown_flag = run({"max-effect", "--n", "5", "--m-max", "2", "--frobnicate"});
  EXPECT_EQ(unknown_flag.status, kExitInputError);
  EXPECT_NE(unknown_flag.err.find("Usage"), std::string::npos);
  EXPECT_EQ(run({"max-effect", "--n", "5", "--m-max", "5"}).status, kExitInputError);
  EXPECT_EQ(run({"max-effect", "--n", "5", "--m-max", "2", "--format", "xml"}).status, kExitInputError);
  EXPECT_EQ(run({"gaps", "--input", (dir_ / "missing.csv").string()}).status, kExitInputError);
  EXPECT_EQ(run({"--help"}).status, kExitOk);
}

TEST_F(CliTest, ParseErrorNamesLine) {
  const auto f = write("bad.csv", "condition,mos,ci95\nA,4.0,0.1\nB,x,0.1\n");
  const auto r = run({"transform", "--input", f});
  EXPECT_EQ(r.status, kExitInputError);
  EXPECT_NE(r.err.find("line 3"), std::string::npos);
}
