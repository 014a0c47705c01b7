#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "unicluster_cli/cli.hpp"
#include "unicluster_cli/csv.hpp"

namespace unicluster::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("unicluster_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                        "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

TEST_F(CliTest, GenerateIsDeterministic) {
  ASSERT_EQ(run_cli({"generate", "--preset", "circles", "--seed", "7", "--out", path("a.csv")}).code, 0);
  ASSERT_EQ(run_cli({"generate", "--preset", "circles", "--seed", "7", "--out", path("b.csv")}).code, 0);
  EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
}

TEST_F(CliTest, GenerateFig5RowCount) {
  ASSERT_EQ(run_cli({"generate", "--preset", "fig5", "--seed", "1", "--out", path("f.csv")}).code, 0);
  std::ifstream in(path("f.csv"));
  std::string header, line;
  std::getline(in, header);
  EXPECT_EQ(header, "x0,x1,label");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 1500);
}

TEST_F(CliTest, GenerateErrors) {
  EXPECT_EQ(run_cli({"generate", "--preset", "fig5"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"generate", "--preset", "nope", "--out", path("x.csv")}).code, kExitUsage);
  EXPECT_EQ(run_cli({"generate", "--preset", "fig5", "--out", path("missing/dir/x.csv")}).code, kExitIo);
  EXPECT_EQ(run_cli({}).code, kExitUsage);
}

TEST_F(CliTest, CsvRoundTrip) {
  ASSERT_EQ(run_cli({"generate", "--preset", "ellipses", "--seed", "2", "--out", path("e.csv")}).code, 0);
  const auto data = read_csv_file(path("e.csv"));
  std::ostringstream again;
  write_csv(again, data);
  EXPECT_EQ(again.str(), slurp(path("e.csv")));
}

TEST_F(CliTest, CsvRejectsMalformedInput) {
  std::ofstream(path("bad.csv")) << "x0,x1\n1,2\n3\n";
  EXPECT_EQ(run_cli({"fit", "--algo", "kmeans", "--k", "1", "--in", path("bad.csv")}).code, kExitIo);
  std::ofstream(path("text.csv")) << "x0\nabc\n";
  EXPECT_EQ(run_cli({"fit", "--algo", "kmeans", "--k", "1", "--in", path("text.csv")}).code, kExitIo);
  std::ofstream(path("nan.csv")) << "x0\nnan\n";
  EXPECT_EQ(run_cli({"fit", "--algo", "kmeans", "--k", "1", "--in", path("nan.csv")}).code, kExitIo);
}

TEST_F(CliTest, FitKmeansDeterministicAndComplete) {
  run_cli({"generate", "--preset", "fig5", "--seed", "1", "--out", path("f.csv")});
  const auto a = run_cli({"fit", "--algo", "kmeans", "--k", "3", "--seed", "5", "--in", path("f.csv")});
  const auto b = run_cli({"fit", "--algo", "kmeans", "--k", "3", "--seed", "5", "--in", path("f.csv")});
  ASSERT_EQ(a.code, 0) << a.err;
  const auto ja = json::parse(a.out), jb = json::parse(b.out);
  EXPECT_EQ(ja["labels"], jb["labels"]);
  for (const char* key : {"algorithm", "params", "seed", "labels", "centers", "objective_trace", "n_outliers",
                          "iterations", "wall_time_ms"})
    EXPECT_TRUE(ja.contains(key)) << key;
  EXPECT_EQ(ja["seed"], 5);
  EXPECT_EQ(ja["labels"].size(), 1500u);
}

TEST_F(CliTest, SeedFromEnvironment) {
  run_cli({"generate", "--preset", "blobs3", "--seed", "1", "--out", path("b.csv")});
  ::setenv("UNICLUSTER_SEED", "17", 1);
  const auto r = run_cli({"fit", "--algo", "kmeans", "--k", "3", "--in", path("b.csv")});
  ::unsetenv("UNICLUSTER_SEED");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out)["seed"], 17);
  EXPECT_EQ(json::parse(run_cli({"fit", "--algo", "kmeans", "--k", "3", "--in", path("b.csv")}).out)["seed"], 0);
}

TEST_F(CliTest, DbscanFormulationsAgree) {
  run_cli({"generate", "--preset", "blobs3", "--seed", "3", "--out", path("b.csv")});
  const auto g = run_cli({"fit", "--algo", "dbscan", "--eps", "0.3", "--min-pts", "5", "--in", path("b.csv")});
  const auto s = run_cli({"fit", "--algo", "dbscan-spectral", "--eps", "0.3", "--min-pts", "5", "--in", path("b.csv")});
  ASSERT_EQ(g.code, 0) << g.err;
  ASSERT_EQ(s.code, 0) << s.err;
  EXPECT_EQ(json::parse(g.out)["labels"], json::parse(s.out)["labels"]);
  EXPECT_TRUE(json::parse(s.out).contains("eigenvalues"));
}

TEST_F(CliTest, EveryAlgorithmRuns) {
  run_cli({"generate", "--preset", "blobs3", "--seed", "4", "--out", path("b.csv")});
  const std::vector<std::vector<std::string>> runs{
      {"--algo", "gmm", "--k", "3", "--restarts", "2"},
      {"--algo", "kmeans", "--k", "3"},
      {"--algo", "kkmeans", "--k", "3", "--sigma", "1.0"},
      {"--algo", "kkmeans", "--k", "3", "--kernel", "polynomial", "--degree", "2"},
      {"--algo", "sc", "--k", "3", "--sigma", "1.0"},
      {"--algo", "dbscan", "--eps", "0.5"},
      {"--algo", "dbscan-spectral", "--eps", "0.5"},
      {"--algo", "dbscan-climb", "--eps", "0.5"},
      {"--algo", "meanshift", "--eps", "1.5"},
  };
  for (auto args : runs) {
    const std::string algo = args[1];
    args.insert(args.begin(), "fit");
    args.insert(args.end(), {"--in", path("b.csv"), "--out", path(algo + ".json")});
    const auto r = run_cli(args);
    ASSERT_EQ(r.code, 0) << algo << ": " << r.err;
    const auto j = json::parse(slurp(path(algo + ".json")));
    EXPECT_EQ(j["algorithm"], algo);
    const auto s = run_cli({"score", "--pred", path(algo + ".json"), "--truth", path("b.csv")});
    ASSERT_EQ(s.code, 0) << s.err;
    if (algo != "kkmeans") {
      EXPECT_GE(json::parse(s.out)["ari"].get<double>(), 0.95) << algo;
    }
  }
  EXPECT_TRUE(json::parse(slurp(path("gmm.json"))).contains("mixture"));
  EXPECT_TRUE(json::parse(slurp(path("gmm.json"))).contains("loglik_trace"));
  EXPECT_TRUE(json::parse(slurp(path("meanshift.json"))).contains("centers"));
}

TEST_F(CliTest, FitErrors) {
  run_cli({"generate", "--preset", "circles", "--seed", "1", "--out", path("c.csv")});
  EXPECT_EQ(run_cli({"fit", "--algo", "sc", "--k", "2", "--in", path("c.csv")}).code, kExitUsage);
  EXPECT_EQ(run_cli({"fit", "--algo", "kmeans", "--in", path("c.csv")}).code, kExitUsage);
  EXPECT_EQ(run_cli({"fit", "--algo", "dbscan", "--in", path("c.csv")}).code, kExitUsage);
  EXPECT_EQ(run_cli({"fit", "--algo", "bogus", "--in", path("c.csv")}).code, kExitUsage);
  EXPECT_EQ(run_cli({"fit", "--algo", "kmeans", "--k", "0", "--in", path("c.csv")}).code, kExitUsage);
  EXPECT_EQ(run_cli({"fit", "--algo", "kmeans", "--k", "2", "--in", path("none.csv")}).code, kExitIo);
  EXPECT_EQ(run_cli({"fit", "--algo", "kmeans", "--k", "2", "--emit-edges", path("e.tsv"), "--in", path("c.csv")}).code,
            kExitUsage);
}

TEST_F(CliTest, AlgorithmFailureExitCode) {
  // Scatter overflows to infinity, so EM cannot build a valid covariance.
  std::ofstream(path("huge.csv")) << "x0\n0\n1e200\n1\n-1e200\n";
  const auto r = run_cli({"fit", "--algo", "gmm", "--k", "2", "--in", path("huge.csv")});
  EXPECT_EQ(r.code, kExitAlgorithm) << r.err;
  EXPECT_NE(r.err.find("error: "), std::string::npos);
}

TEST_F(CliTest, PlotDataAndEdges) {
  run_cli({"generate", "--preset", "blobs3", "--seed", "2", "--out", path("b.csv")});
  const auto r = run_cli({"fit", "--algo", "dbscan", "--eps", "0.4", "--in", path("b.csv"), "--emit-plot-data",
                          path("p.tsv"), "--emit-edges", path("e.tsv"), "--out", path("r.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream plot(path("p.tsv"));
  std::string line;
  std::getline(plot, line);
  EXPECT_EQ(line, "x\ty\tlabel");
  int rows = 0;
  while (std::getline(plot, line)) {
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), '\t'), 2);
  }
  EXPECT_EQ(rows, 600);
  std::ifstream edges(path("e.tsv"));
  ASSERT_TRUE(std::getline(edges, line));
  EXPECT_EQ(std::count(line.begin(), line.end(), '\t'), 2);
}

TEST_F(CliTest, Score) {
  run_cli({"generate", "--preset", "fig5", "--seed", "1", "--out", path("f.csv")});
  const auto same = run_cli({"score", "--pred", path("f.csv"), "--truth", path("f.csv")});
  ASSERT_EQ(same.code, 0);
  EXPECT_EQ(json::parse(same.out), json::parse(R"({"ami":1.0,"ari":1.0})"));

  std::ofstream(path("short.json")) << "[0,1,0]";
  EXPECT_EQ(run_cli({"score", "--pred", path("short.json"), "--truth", path("f.csv")}).code, kExitUsage);

  ASSERT_EQ(run_cli({"fit", "--algo", "gmm", "--k", "3", "--restarts", "5", "--seed", "1", "--in", path("f.csv"),
                     "--out", path("g.json")})
                .code,
            0);
  const auto s = json::parse(run_cli({"score", "--pred", path("g.json"), "--truth", path("f.csv")}).out);
  EXPECT_GE(s["ari"].get<double>(), 0.95);
  const double ari = s["ari"].get<double>();
  EXPECT_DOUBLE_EQ(ari, std::round(ari * 1e6) / 1e6);
}

TEST_F(CliTest, HelpExitsCleanly) { EXPECT_EQ(run_cli({"--help"}).code, 0); }

}  // namespace
}  // namespace unicluster::cli
