#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "harness/cli.hpp"

namespace bils::harness {
namespace {

namespace fs = std::filesystem;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("bils_cli_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  void write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
  }
  std::string read(const std::string& name) const {
    std::ifstream in(path(name));
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  fs::path dir_;
};

TEST_F(CliTest, GenerateIsDeterministic) {
  const auto a = cli({"generate", "--n", "4", "--m", "6", "--seed", "3"});
  const auto b = cli({"generate", "--n", "4", "--m", "6", "--seed", "3"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.rfind("{\"m\":6,\"n\":4,", 0), 0u);
  EXPECT_EQ(cli({"generate", "--n", "4", "--m", "6", "--seed", "3", "--out", path("p.json")}).code,
            0);
  EXPECT_EQ(read("p.json"), a.out);
}

TEST_F(CliTest, SolveFromFile) {
  ASSERT_EQ(cli({"generate", "--n", "5", "--seed", "8", "--out", path("p.json")}).code, 0);
  const auto r = cli({"solve", "--file", path("p.json"), "--alg", "new"});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* key : {"\"x\":", "\"residual\":", "\"nodes\":", "\"alg\":\"new\""}) {
    EXPECT_NE(r.out.find(key), std::string::npos) << key;
  }
}

TEST_F(CliTest, NaturalAndChResidualsAgree) {
  ASSERT_EQ(cli({"generate", "--n", "6", "--seed", "2", "--out", path("p.json")}).code, 0);
  auto residual = [](const std::string& json) {
    const auto at = json.find("\"residual\":") + 11;
    return json.substr(at, json.find(',', at) - at);
  };
  const auto nat = cli({"solve", "--file", path("p.json"), "--alg", "natural"});
  const auto ch = cli({"solve", "--file", path("p.json"), "--alg", "ch"});
  EXPECT_EQ(residual(nat.out), residual(ch.out));
}

TEST_F(CliTest, SolveFromSpecFlags) {
  const auto r = cli({"solve", "--n", "3", "--sigma", "0", "--seed", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("\"residual\":0,"), std::string::npos) << r.out;
}

TEST_F(CliTest, MalformedFileIsUsageError) {
  write("bad.json", "{\"m\": 2, \"n\": ");
  const auto r = cli({"solve", "--file", path("bad.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(r.err.find("ParseError"), std::string::npos);
  EXPECT_EQ(cli({"solve", "--file", path("missing.json")}).code, 2);
}

TEST_F(CliTest, RankDeficientIsAlgorithmicError) {
  write("rank.json", R"({"m":3,"n":2,"H":[1,2,2,4,3,6],"y":[1,2,3],"l":[0,0],"u":[1,1]})");
  for (const char* alg : {"natural", "ch", "sw", "new"}) {
    const auto r = cli({"solve", "--file", path("rank.json"), "--alg", alg});
    EXPECT_EQ(r.code, 1) << alg;
    EXPECT_NE(r.err.find("RankDeficient"), std::string::npos);
  }
}

TEST_F(CliTest, TinyRadiusIsAlgorithmicError) {
  const auto r = cli({"solve", "--n", "4", "--snr", "5", "--radius", "1e-12"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("RadiusTooSmall"), std::string::npos);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(cli({}).code, 2);
  EXPECT_EQ(cli({"frobnicate"}).code, 2);
  EXPECT_EQ(cli({"solve", "--alg", "vblast", "--n", "3"}).code, 2);
  EXPECT_EQ(cli({"generate"}).code, 2);
  EXPECT_EQ(cli({"generate", "--n", "3", "--snr", "10", "--sigma", "1"}).code, 2);
  EXPECT_EQ(cli({"generate", "--n", "3", "--m", "2"}).code, 2);
  EXPECT_EQ(cli({"generate", "--n", "x"}).code, 2);
  EXPECT_EQ(cli({"bench"}).code, 2);
  EXPECT_EQ(cli({"bench", "--n", "4,5", "--m", "4"}).code, 2);
  EXPECT_EQ(cli({"--help"}).code, 0);
  EXPECT_EQ(cli({"solve", "--help"}).code, 0);
}

TEST_F(CliTest, EquivReport) {
  const auto empty = cli({"equiv", "--trials", "0"});
  EXPECT_EQ(empty.code, 0);
  EXPECT_EQ(empty.out, "{\"trials\":0,\"matches\":0,\"mismatches\":[]}\n");
  const auto a = cli({"equiv", "--trials", "30", "--seed", "11"});
  const auto b = cli({"equiv", "--trials", "30", "--seed", "11", "--out", path("e.json")});
  EXPECT_EQ(b.code, 0);
  EXPECT_TRUE(b.out.empty());
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(read("e.json"), a.out);
  EXPECT_EQ(a.out.rfind("{\"trials\":30,", 0), 0u);
}

TEST_F(CliTest, BenchCsv) {
  const auto r = cli({"bench", "--n", "4,6", "--trials", "2", "--no-timing", "--alg", "ch,new"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("seed,alg,n,m,reorder_us,reorder_flops,search_nodes,residual\n", 0), 0u);
  EXPECT_EQ(r.out, cli({"bench", "--n", "4,6", "--trials", "2", "--no-timing", "--alg",
                        "ch,new"}).out);
  EXPECT_EQ(r.out.find(",sw,"), std::string::npos);
  EXPECT_EQ(r.out.find(",natural,"), std::string::npos);
}

}  // namespace
}  // namespace bils::harness
