#include <json.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

using Json = nlohmann::json;

struct Result {
  int status = -1;
  std::string out;
};

// stdout only; stderr carries the summary line and diagnostics
Result ocg(const std::string& args, bool merge_stderr = false) {
  const std::string cmd = std::string(OCG_BINARY) + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("ocg_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string paper(const std::string& args, const std::string& name) {
    const Result r = ocg("paper " + args + " --out " + path(name));
    EXPECT_EQ(r.status, 0) << args;
    return path(name);
  }
  std::filesystem::path dir_;
};

}  // namespace

TEST_F(Cli, SimulateThreePlayerBound) {
  const std::string f = paper("--case thm-irrv3 --min 1 --max 5", "irrv3.json");
  const Result r = ocg("simulate --instance " + f + " --policy amc --order x,y,z");
  ASSERT_EQ(r.status, 0);
  const Json doc = Json::parse(r.out);
  EXPECT_EQ(doc.at("welfare"), "3");
  EXPECT_EQ(doc.at("final_structure").size(), 3u);
  EXPECT_EQ(doc.at("steps").size(), 3u);
}

TEST_F(Cli, SimulateTightInstanceWithThresholdH) {
  const std::string f = paper("--case thm-amchlb3-tight --min 1 --max 6 --eps 1/10", "tight.json");
  const Result r = ocg("simulate --instance " + f + " --policy amc-h --h paper");
  ASSERT_EQ(r.status, 0);
  const Json doc = Json::parse(r.out);
  EXPECT_EQ(doc.at("welfare"), "61/10");
  EXPECT_EQ(doc.at("policy").at("h"), "paper");
}

TEST_F(Cli, SimulateEnumerateListsBranches) {
  const std::string f = paper("--case thm-irrv3 --max 5", "irrv3.json");
  const Result r = ocg("simulate --instance " + f + " --order x,z,y --ties enumerate");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(Json::parse(r.out).at("branches").size(), 3u);
}

TEST_F(Cli, RatioReproducesKnownValues) {
  const std::string irrv3 = paper("--case thm-irrv3 --max 5", "irrv3.json");
  Result r = ocg("ratio --instance " + irrv3 + " --policy amc");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(Json::parse(r.out).at("ratio"), "3/5");
  r = ocg("ratio --instance " + irrv3 + " --policy oracle-pair");
  ASSERT_EQ(r.status, 0);
  // pairing oracle cannot reach the grand coalition either
  EXPECT_EQ(Json::parse(r.out).at("ratio"), "3/5");

  const std::string chain = paper("--case ex-amc-chain --delta 2 --m 1 --min 1 --max 5/2 --eps 1/100", "chain.json");
  r = ocg("ratio --instance " + chain + " --policy amc --order a1,a2,a3,a4");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(Json::parse(r.out).at("ratio"), "201/250");
}

TEST_F(Cli, RatioFamilyCsv) {
  const Result r = ocg("ratio --family grid --n 2 --min 1 --max 3 --grid-step 1 --policy amc --bound v3 --format csv");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "instance_hash,n,delta,ratio,bound,margin");
  EXPECT_GT(std::count(r.out.begin(), r.out.end(), '\n'), 2);
}

TEST_F(Cli, GenerateIsDeterministic) {
  const Result a = ocg("generate --n 4 --min 1 --max 3 --seed 9");
  const Result b = ocg("generate --n 4 --min 1 --max 3 --seed 9");
  const Result c = ocg("generate --n 4 --min 1 --max 3 --seed 10");
  ASSERT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, c.out);
  EXPECT_EQ(Json::parse(a.out).at("values").size(), 15u);
}

TEST_F(Cli, OptimalMethodsAgree) {
  const std::string f = paper("--case thm-nirrlb-worst --k 2 --max 10", "bank.json");
  const Result r = ocg("optimal --instance " + f + " --method both");
  ASSERT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("\"20\""), std::string::npos);
}

TEST_F(Cli, VerifySuites) {
  EXPECT_EQ(ocg("verify --suite prop4.2 --n 4 --trials 20").status, 0);
  EXPECT_EQ(ocg("verify --suite prop4.9 --h 1").status, 0);
}

TEST_F(Cli, InvalidGameExitsWithDiagnostics) {
  const std::string f = path("bad.json");
  std::ofstream(f) << R"({"n": 2, "min": "1", "max": "3", "values": {"a0": "2", "a1": "1", "a0,a1": "1"}})";
  const Result r = ocg("simulate --instance " + f, true);
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.out.find("NotMonotone"), std::string::npos) << r.out;
}

TEST_F(Cli, InputErrorsExitTwo) {
  EXPECT_EQ(ocg("simulate --instance " + path("missing.json")).status, 2);
  EXPECT_EQ(ocg("ratio --family grid --policy nonsense").status, 2);
  EXPECT_EQ(ocg("paper --case thm-irrv3 --max 2").status, 2);
  EXPECT_EQ(ocg("verify --suite nope").status, 2);
  EXPECT_EQ(ocg("").status, 2);
}

TEST_F(Cli, ResourceLimitsExitThree) {
  const std::string f = path("nine.json");
  const Result g = ocg("generate --n 9 --min 1 --max 2 --seed 1 --out " + f);
  ASSERT_EQ(g.status, 0);
  EXPECT_EQ(ocg("ratio --instance " + f + " --policy amc").status, 3);
}
