#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;

namespace {

const std::string cli = COPCLUST_CLI_PATH;
const std::string data_dir = COPCLUST_TEST_DATA;

struct CliFixture : ::testing::Test {
  fs::path dir;
  void SetUp() override {
    dir = fs::temp_directory_path() /
          ("copclust_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }

  int run(const std::string& args) {
    const std::string cmd = cli + " " + args + " >" + (dir / "stdout").string() + " 2>" +
                            (dir / "stderr").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }
  std::string read(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  std::string path(const std::string& name) { return (dir / name).string(); }
};

}  // namespace

TEST_F(CliFixture, SampleRequiresSeed) {
  EXPECT_EQ(run("sample --copula clayton:0.5"), 2);
  EXPECT_EQ(run("simulate --design A100"), 2);
}

TEST_F(CliFixture, SampleClusterDeterministic) {
  ASSERT_EQ(run("sample --copula clayton:0.8 --copula clayton:0.8 --copula gumbel:0.8 -n 300 --seed 11 -o " +
                path("d.csv")),
            0);
  ASSERT_EQ(run("cluster -i " + path("d.csv") + " --seed 1 -o " + path("a.json") + " --dot " + path("a.dot")), 0);
  ASSERT_EQ(run("cluster -i " + path("d.csv") + " --seed 1 -o " + path("b.json") + " --dot " + path("b.dot")), 0);
  EXPECT_EQ(read(path("a.json")), read(path("b.json")));
  EXPECT_EQ(read(path("a.dot")), read(path("b.dot")));
  const auto j = nlohmann::json::parse(read(path("a.json")));
  EXPECT_TRUE(j.contains("clusters"));
  EXPECT_TRUE(j.contains("merge_log"));
  EXPECT_EQ(j.at("config").at("alpha_factor").get<double>(), 1.0);
  EXPECT_NE(read(path("a.dot")).find("\"root\" -> \"C1\""), std::string::npos);

  ASSERT_EQ(run("cluster -i " + path("d.csv") + " --emit csv"), 0);
  EXPECT_EQ(read(path("stdout")).rfind("label,1,2,3\n", 0), 0u);
}

TEST_F(CliFixture, TestPairAndTune) {
  ASSERT_EQ(run("sample --copula frank:0.5 --copula frank:0.5 -n 200 --seed 3 -o " + path("d.csv")), 0);
  ASSERT_EQ(run("test-pair -i " + path("d.csv") + " --a 1 --b 2"), 0);
  const auto pair = nlohmann::json::parse(read(path("stdout")));
  EXPECT_GE(pair.at("p_value").get<double>(), 0.0);
  ASSERT_EQ(run("tune-alpha -i " + path("d.csv") + " --seed 4 --reps 5"), 0);
  const auto tune = nlohmann::json::parse(read(path("stdout")));
  EXPECT_LE(tune.at("alpha_hat").get<double>(), 8.0);
  ASSERT_EQ(run("cluster -i " + path("d.csv") + " --alpha auto --seed 4"), 0);
  EXPECT_TRUE(nlohmann::json::parse(read(path("stdout"))).contains("tuning"));
  EXPECT_EQ(run("test-pair -i " + path("d.csv") + " --a 1 --b 9"), 2);
}

TEST_F(CliFixture, SimulateBuiltinAndFile) {
  ASSERT_EQ(run("simulate --design B100 --replicates 3 --seed 2"), 0);
  const auto j = nlohmann::json::parse(read(path("stdout")));
  EXPECT_EQ(j.at("replicates").get<int>(), 3);
  std::ofstream(path("design.json"))
      << R"({"name":"x","n":50,"p":2,"populations":[{"family":"joe","tau":0.3},{"family":"joe","tau":0.3}]})";
  ASSERT_EQ(run("simulate --design " + path("design.json") + " --replicates 2 --seed 2 --emit csv"), 0);
  EXPECT_EQ(read(path("stdout")).rfind("label,1,2\n", 0), 0u);
  EXPECT_EQ(run("simulate --design Z9 --seed 1"), 2);
}

TEST_F(CliFixture, InputErrorsExitTwo) {
  EXPECT_EQ(run("cluster -i " + data_dir + "/ragged.csv"), 2);
  EXPECT_NE(read(path("stderr")).find("ragged dimension"), std::string::npos);
  EXPECT_EQ(run("cluster -i " + data_dir + "/paired_missing.csv --pairing paired"), 2);
  EXPECT_EQ(run("cluster -i " + data_dir + "/two_pops.csv --alpha nope"), 2);
  EXPECT_EQ(run("cluster -i " + data_dir + "/two_pops.csv --calibration permutation --permutations 10"), 2);
  EXPECT_EQ(run("cluster -i " + data_dir + "/prices.csv --transform log_return -o /nonexistent/dir/x.json"), 2);
}

TEST_F(CliFixture, LogReturnTransform) {
  ASSERT_EQ(run("cluster -i " + data_dir + "/two_pops.csv --emit dot"), 0);
  ASSERT_EQ(run("cluster -i " + data_dir + "/prices.csv --transform log_return"), 0);
}

TEST_F(CliFixture, ThreadCountDoesNotChangeOutput) {
  ASSERT_EQ(run("simulate --design A100 --replicates 8 --seed 5 -o " + path("one.json")), 0);
  const std::string saved = cli;
  const std::string cmd = "COPCLUST_THREADS=3 " + cli + " simulate --design A100 --replicates 8 --seed 5 -o " +
                          path("three.json");
  ASSERT_EQ(std::system(cmd.c_str()), 0);
  auto a = nlohmann::json::parse(read(path("one.json")));
  auto b = nlohmann::json::parse(read(path("three.json")));
  a.erase("seconds");
  b.erase("seconds");
  EXPECT_EQ(a, b);
}
