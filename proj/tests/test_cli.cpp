#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = hyperlag::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

double field(const std::string& text, const std::string& key) {
  auto pos = text.find(key + " = ");
  if (pos == std::string::npos) return std::nan("");
  return std::stod(text.substr(pos + key.size() + 3));
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("hyperlag_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir / name;
}

nlohmann::json without_time(nlohmann::json j) {
  j.erase("wall_time_s");
  return j;
}

}  // namespace

TEST(Cli, LambdaCompleteGraph) {
  auto r = cli({"lambda", "--family", "K:6:3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NEAR(field(r.out, "lambda"), 5.0 / 54, 1e-12);
  EXPECT_NE(r.out.find("kkt_residual"), std::string::npos);
  EXPECT_NE(r.out.find("weights"), std::string::npos);
}

TEST(Cli, LambdaB2) {
  auto r = cli({"lambda", "--family", "B2:28"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NEAR(field(r.out, "lambda"), 0.09372, 1e-4);
}

TEST(Cli, LambdaFileCertify) {
  auto path = scratch("h2.txt");
  {
    std::ofstream os(path);
    os << hyperlag::serialize(hyperlag::family(hyperlag::fam::H2{9, {}}));
  }
  auto r = cli({"lambda", "--file", path.string(), "--certify", "0.0963"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_NE(r.out.find("CERTIFIED"), std::string::npos);
  EXPECT_EQ(r.out.find("NOT CERTIFIED"), std::string::npos);
  // an impossible target fails with exit 1
  auto bad = cli({"lambda", "--family", "K:5:3", "--certify", "0.07", "--tol", "1e-4"});
  EXPECT_EQ(bad.code, 1);
}

TEST(Cli, LambdaGridOracle) {
  auto r = cli({"lambda", "--family", "K:4:3", "--mesh", "4"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NEAR(field(r.out, "grid_oracle(mesh 4)"), 1.0 / 16, 1e-15);
}

TEST(Cli, FreeExamples) {
  auto a = cli({"free", "--family", "B2:10", "--forbid", "K4e"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, "FREE\n");
  auto b = cli({"free", "--family", "X:4+edge", "--forbid", "K4e"});
  EXPECT_EQ(b.code, 0);
  EXPECT_NE(b.out.find("NOT FREE"), std::string::npos);
  EXPECT_NE(b.out.find("witness:"), std::string::npos);
  auto c = cli({"free", "--family", "K:5:3", "--forbid", "K5m"});
  EXPECT_NE(c.out.find("NOT FREE"), std::string::npos);
}

TEST(Cli, FreeWitnessIsValid) {
  auto r = cli({"free", "--family", "X:4+edge", "--forbid", "K4e", "--json"});
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  auto g = hyperlag::parse_family("X:4+edge");
  auto f = hyperlag::k4e();
  auto image = j["result"]["witness"]["image"].get<std::vector<int>>();
  ASSERT_EQ(image.size(), 7u);
  for (const auto& e : f.edges()) {
    hyperlag::Edge img;
    for (int v : e) img.push_back(image[static_cast<std::size_t>(v - 1)]);
    std::sort(img.begin(), img.end());
    EXPECT_TRUE(g.contains(img));
  }
}

TEST(Cli, VerifyColex) {
  auto r = cli({"verify", "--suite", "colex"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("[colex] PASS"), std::string::npos);
  auto j = nlohmann::json::parse(cli({"verify", "--suite", "colex", "--json"}).out);
  bool seen = false;
  for (const auto& c : j["result"]["suites"]["colex"]["data"]["cases"])
    if (c["t"] == 6 && c["m"] == 10) {
      seen = true;
      EXPECT_NEAR(c["value"].get<double>(), 2.0 / 25, 1e-9);
    }
  EXPECT_TRUE(seen);
}

TEST(Cli, VerifyMotzkinStraus) {
  auto r = cli({"verify", "--suite", "motzkin-straus", "--json"});
  EXPECT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["result"]["suites"]["motzkin-straus"]["data"]["graphs"], 200);
  EXPECT_LE(j["result"]["suites"]["motzkin-straus"]["data"]["max_discrepancy"].get<double>(), 1e-7);
}

TEST(Cli, VerifyBattery) {
  auto r = cli({"verify", "--suite", "battery"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("[battery] PASS"), std::string::npos);
}

TEST(Cli, EnumerateAndSweep) {
  auto path = scratch("free5.txt");
  auto r = cli({"enumerate", "5", "--forbid", "K4e", "--out", path.string()});
  EXPECT_EQ(r.code, 0);
  std::ifstream is(path);
  auto graphs = hyperlag::parse_stream(is);
  EXPECT_EQ(graphs.size(), 34u);
  auto sweep = cli({"lambda", "--file", path.string()});
  EXPECT_EQ(sweep.code, 0);
  EXPECT_LT(field(sweep.out, "max lambda"), std::sqrt(3.0) / 18);
}

TEST(Cli, DensifyAndExtend) {
  auto d = cli({"densify", "--family", "K4e"});
  EXPECT_EQ(d.code, 0);
  EXPECT_EQ(d.out, hyperlag::serialize(hyperlag::complete_hypergraph(4, 3)));
  auto e = cli({"extend", "--family", "K4e"});
  EXPECT_EQ(e.code, 0);
  EXPECT_EQ(hyperlag::parse(e.out).order(), 19);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli({"enumerate", "7"}).code, 3);
  EXPECT_EQ(cli({"lambda", "--family", "Q:3"}).code, 2);
  EXPECT_EQ(cli({"lambda"}).code, 2);
  EXPECT_EQ(cli({}).code, 2);
  EXPECT_EQ(cli({"bogus"}).code, 2);
  EXPECT_EQ(cli({"free", "--family", "K:4:3"}).code, 2);
  EXPECT_EQ(cli({"lambda", "--file", "/nonexistent/graph.txt"}).code, 2);
  auto path = scratch("bad.txt");
  {
    std::ofstream os(path);
    os << "3 3\n1 2\n";
  }
  auto r = cli({"lambda", "--file", path.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 2"), std::string::npos);
}

TEST(Cli, JsonIsDeterministic) {
  auto a = nlohmann::json::parse(cli({"lambda", "--family", "H1:8", "--seed", "9", "--json"}).out);
  auto b = nlohmann::json::parse(cli({"lambda", "--family", "H1:8", "--seed", "9", "--json"}).out);
  EXPECT_EQ(a["schema"], 1);
  EXPECT_EQ(without_time(a), without_time(b));
  EXPECT_EQ(a["config"]["seed"], 9);
  EXPECT_TRUE(a.contains("versions"));
}

TEST(Cli, CacheHitMatchesMiss) {
  auto dir = scratch("cache");
  fs::remove_all(dir);
  auto miss = nlohmann::json::parse(cli({"lambda", "--family", "Y:3", "--cache", dir.string(), "--json"}).out);
  EXPECT_FALSE(fs::is_empty(dir));
  auto hit = nlohmann::json::parse(cli({"lambda", "--family", "Y:3", "--cache", dir.string(), "--json"}).out);
  EXPECT_EQ(without_time(miss)["result"], without_time(hit)["result"]);
  auto plain = nlohmann::json::parse(cli({"lambda", "--family", "Y:3", "--json"}).out);
  EXPECT_NEAR(plain["result"]["max_value"].get<double>(), hit["result"]["max_value"].get<double>(), 1e-12);
}

TEST(Cli, ConfigFileFilledByFlags) {
  auto cfg = scratch("run.cfg");
  {
    std::ofstream os(cfg);
    os << "# defaults\nseed=5\nrestarts=8\n";
  }
  auto j = nlohmann::json::parse(cli({"lambda", "--family", "K:5:3", "--config", cfg.string(), "--seed", "7", "--json"}).out);
  EXPECT_EQ(j["config"]["seed"], 7);
  EXPECT_EQ(j["config"]["restarts"], 8);
  {
    std::ofstream os(cfg);
    os << "colour=blue\n";
  }
  EXPECT_EQ(cli({"lambda", "--family", "K:5:3", "--config", cfg.string()}).code, 2);
}

TEST(Cli, OutWritesPayload) {
  auto path = scratch("lambda.txt");
  auto r = cli({"lambda", "--family", "K:5:3", "--out", path.string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream is(path);
  std::stringstream ss;
  ss << is.rdbuf();
  EXPECT_NEAR(field(ss.str(), "lambda"), 0.08, 1e-12);
}
