#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "kgdelta/app/cli.hpp"

using kgdelta::app::run_cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("kgdelta_cli_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST(Cli, SpectrumText) {
  const auto r = run({"spectrum", "-w", "0", "-k", "1"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("verdict: unstable"), std::string::npos) << r.out;
}

TEST(Cli, SpectrumJson) {
  const auto r = run({"spectrum", "-w", "0.5", "-k", "0", "--format", "json", "-v"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["verdict"], "stable");
  EXPECT_EQ(j["point_spectrum"].size(), 3u);
  EXPECT_TRUE(j.contains("candidates"));
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({"spectrum", "-w", "1.0", "-k", "1"}).code, 2);
  EXPECT_EQ(run({"spectrum", "-w", "0.2"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"spectrum", "-w", "0.2", "-k", "1", "--format", "xml"}).code, 2);
  EXPECT_EQ(run({"simulate", "-w", "0.5", "-k", "1", "--nonlinearity", "x.json"}).code, 2);
  EXPECT_EQ(run({"scan", "--omega-min", "-1", "--omega-max", "1", "-o", "-"}).code, 2);
}

TEST(Cli, ScanToStdout) {
  const auto r = run({"scan", "--omega-min", "-0.5", "--omega-max", "0.5", "--omega-step", "0.25",
                      "--kappa-min", "0", "--kappa-max", "1", "--kappa-step", "0.5", "-o", "-"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "# schema=1");
  std::getline(in, line);
  EXPECT_EQ(line, "omega,kappa,region_code,lambda_re,lambda_im,Delta,K_omega,T_kappa,Omega_kappa");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 15);
}

TEST(Cli, ScanFileDeterministic) {
  const auto dir = temp_dir("scan");
  const auto a = dir / "a.csv", b = dir / "b.csv";
  const std::vector<std::string> base = {"scan", "--omega-step", "0.12", "--kappa-step", "0.25"};
  auto args = base;
  args.insert(args.end(), {"--threads", "1", "-o", a.string()});
  ASSERT_EQ(run(args).code, 0);
  args = base;
  args.insert(args.end(), {"--threads", "3", "-o", b.string()});
  ASSERT_EQ(run(args).code, 0);
  std::ifstream fa(a), fb(b);
  std::stringstream sa, sb;
  sa << fa.rdbuf();
  sb << fb.rdbuf();
  EXPECT_EQ(sa.str(), sb.str());
  EXPECT_FALSE(std::filesystem::exists(dir / "a.csv.tmp"));
}

TEST(Cli, ValidateExitCodes) {
  const auto ok = run({"validate", "--grid", "5"});
  EXPECT_EQ(ok.code, 0) << ok.out;
  const auto bad = run({"validate", "--grid", "5", "--perturb-q", "1e-3"});
  EXPECT_EQ(bad.code, 1) << bad.out;
  EXPECT_EQ(run({"validate", "--at", "1,0.3,1.5"}).code, 0);
}

TEST(Cli, SimulateWritesOutputs) {
  const auto dir = temp_dir("sim");
  const auto prefix = (dir / "run").string();
  const auto r = run({"simulate", "-w", "0.6", "-k", "0.1", "-g", "1", "--eps", "1e-3", "-T", "1",
                      "--spacing", "0.1", "-o", prefix});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(std::filesystem::exists(prefix + ".csv"));
  std::ifstream js(prefix + ".json");
  const auto j = nlohmann::json::parse(js);
  EXPECT_EQ(j["predicted_verdict"], "stable");
  EXPECT_NE(r.out.find("agreement:"), std::string::npos);
}

TEST(Cli, SimulateBlowUpExitCode) {
  const auto dir = temp_dir("blow");
  const auto r = run({"simulate", "-w", "0.6", "-k", "0.5", "-g", "1", "--eps", "1e-6", "-T", "60",
                      "--spacing", "0.05", "-o", (dir / "run").string()});
  EXPECT_EQ(r.code, 3) << r.out << r.err;
  EXPECT_NE(r.out.find("aborted"), std::string::npos);
}

TEST(Cli, SimulateTableNonlinearity) {
  const auto dir = temp_dir("table");
  nlohmann::json cfg = {{"type", "power"}, {"g", 1.0}, {"kappa", 0.1}};
  std::ofstream(dir / "nl.json") << cfg.dump();
  const auto r = run({"simulate", "-w", "0.6", "--nonlinearity", (dir / "nl.json").string(), "-T", "0.5",
                      "--spacing", "0.1", "-o", (dir / "run").string()});
  EXPECT_EQ(r.code, 0) << r.err;
}
