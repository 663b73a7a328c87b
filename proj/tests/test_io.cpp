#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "harvest/io.hpp"

using namespace harvest;
namespace fs = std::filesystem;

namespace {

const std::string configs = HARVEST_CONFIGS;

struct Run {
  int code;
  std::string out;
};

Run cli(const std::string& args) {
  const std::string cmd = std::string(HARVEST_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  const int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "harvest_io_test";
  fs::create_directories(dir);
  return dir / name;
}

void write_file(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

const char* minimal = R"({"dimension": 3, "switching": {"family": "TopHat"}, "smearing": {"family": "PointLike"}})";

}  // namespace

TEST(Config, MinimalDefaults) {
  const auto rc = io::parse_config_text(minimal);
  EXPECT_EQ(rc.pair.dim.n(), 3);
  EXPECT_EQ(rc.pair.gap, 0.0);
  EXPECT_FALSE(rc.sweep);
  EXPECT_FALSE(rc.output_path);
}

TEST(Config, RejectsUnknownKeys) {
  EXPECT_THROW(io::parse_config_text(
                   R"({"dimension": 3, "gapp": 1, "switching": {"family": "TopHat"}, "smearing": {"family": "PointLike"}})"),
               ConfigError);
  EXPECT_THROW(io::parse_config_text(
                   R"({"dimension": 3, "switching": {"family": "TopHat", "width": 1}, "smearing": {"family": "PointLike"}})"),
               ConfigError);
}

TEST(Config, RejectsMissingAndMalformed) {
  EXPECT_THROW(io::parse_config_text(R"({"dimension": 3, "switching": {"family": "TopHat"}})"), ConfigError);
  EXPECT_THROW(io::parse_config_text("{\"dimension\": 3,"), ConfigError);
  EXPECT_THROW(io::parse_config_text(
                   R"({"dimension": "three", "switching": {"family": "TopHat"}, "smearing": {"family": "PointLike"}})"),
               ConfigError);
  EXPECT_THROW(io::parse_config_text(
                   R"({"dimension": 3, "switching": {"family": "Boxcar"}, "smearing": {"family": "PointLike"}})"),
               ConfigError);
  EXPECT_THROW(io::load_config("/nonexistent/harvest.json"), ConfigError);
}

TEST(Config, SweepRangeExpands) {
  const auto rc = io::load_config(configs + "/separation_sweep.json");
  ASSERT_TRUE(rc.sweep);
  ASSERT_EQ(rc.sweep->grid.size(), 60u);
  EXPECT_DOUBLE_EQ(rc.sweep->grid.front(), 0.05);
  EXPECT_DOUBLE_EQ(rc.sweep->grid.back(), 3.0);
  EXPECT_EQ(*rc.output_path, "separation_sweep.csv");
}

TEST(Config, StoredConfigsParse) {
  for (const auto& e : fs::directory_iterator(configs)) {
    EXPECT_NO_THROW(io::load_config(e.path().string())) << e.path();
  }
}

TEST(Csv, RoundTripPreservesValues) {
  engine::SweepPoint a, b;
  a.axis_value = 0.1;
  HarvestResult r;
  r.L = 0.1234567890123456789;
  r.M = cplx(-0.2, 0.0123456789);
  r.N2 = std::max(0.0, std::abs(r.M) - r.L);
  r.causal = CausalClass::Spacelike;
  a.result = r;
  b.axis_value = 0.2;
  b.error = "did not converge";
  std::stringstream ss;
  io::write_csv(ss, {a, b}, {CausalClass::Spacelike, CausalClass::Mixed});
  const std::string text = ss.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), io::csv_header);
  const auto rows = io::read_csv(ss);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_NEAR(rows[0].N2, r.N2, 1e-12);
  EXPECT_EQ(rows[0].L, r.L);
  EXPECT_EQ(rows[0].ImM, r.M.imag());
  EXPECT_EQ(rows[0].status, "ok");
  EXPECT_TRUE(std::isnan(rows[1].N2));
  EXPECT_EQ(rows[1].status, "nonconverged");
  EXPECT_EQ(rows[1].causal, "mixed");
}

TEST(Csv, RejectsWrongHeader) {
  std::stringstream ss("a,b,c\n1,2,3\n");
  EXPECT_THROW(io::read_csv(ss), ConfigError);
}

TEST(Cli, ComputeGaplessSpacelikeIsZero) {
  const auto r = cli("compute --config " + configs + "/gapless_spacelike.json");
  ASSERT_EQ(r.code, 0);
  const auto j = io::json::parse(r.out);
  EXPECT_EQ(j.at("N2").get<double>(), 0.0);
  EXPECT_EQ(j.at("causal").get<std::string>(), "spacelike");
  EXPECT_GT(j.at("L").get<double>(), 0.0);
}

TEST(Cli, PositiveControlHarvests) {
  const auto r = cli("compute --format csv --config " + configs + "/positive_control.json");
  ASSERT_EQ(r.code, 0);
  std::stringstream ss(r.out);
  const auto rows = io::read_csv(ss);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_NEAR(rows[0].N2, 0.0063557424825857901, 1e-10);
}

TEST(Cli, MalformedConfigExitsTwo) {
  const auto bad = scratch("bad.json");
  write_file(bad, R"({"dimension": 3, "switching": {"family": "TopHat"}, "smearing": {"family": "PointLike"}, "x": 1})");
  const auto r = cli("compute --config " + bad.string());
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(cli("compute").code, 2);
  EXPECT_EQ(cli("verify NoSuchSuite").code, 2);
}

TEST(Cli, DivergentDeltaExitsThree) {
  EXPECT_EQ(cli("compute --config " + configs + "/delta_pointlike_2d.json").code, 3);
}

TEST(Cli, UnwritableOutputExitsFive) {
  EXPECT_EQ(cli("compute --config " + configs + "/positive_control.json --out /nonexistent/dir/out.json").code, 5);
}

TEST(Cli, SweepIsDeterministicAndThreadIndependent) {
  const auto base = io::json::parse(std::ifstream(configs + "/gap_sweep.json"));
  auto cfg = base;
  cfg["sweep"]["grid"] = {0.0, 2.0, 4.0};
  const auto path = scratch("gap3.json");
  write_file(path, cfg.dump());
  const auto a = cli("sweep --config " + path.string() + " --threads 1");
  const auto b = cli("sweep --config " + path.string() + " --threads 3");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  std::stringstream ss(a.out);
  const auto rows = io::read_csv(ss);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[2].axis_value, 4.0);
  EXPECT_NEAR(rows[2].N2, 0.0063557424825857901, 1e-10);
  for (const auto& row : rows) {
    EXPECT_EQ(row.N2, std::max(0.0, row.absM - row.L));
  }
}

TEST(Cli, SweepWritesConfiguredPath) {
  auto cfg = io::json::parse(std::ifstream(configs + "/gap_sweep.json"));
  const auto out = scratch("one_row.csv");
  fs::remove(out);
  cfg["sweep"]["grid"] = {1.0};
  cfg["output"] = {{"path", out.string()}, {"format", "csv"}};
  const auto path = scratch("one_row.json");
  write_file(path, cfg.dump());
  const auto r = cli("sweep --config " + path.string());
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(out);
  EXPECT_EQ(io::read_csv(in).size(), 1u);
}

TEST(Cli, SweepWithNonconvergedRowsExitsFour) {
  auto cfg = io::json::parse(std::ifstream(configs + "/delta_pointlike_2d.json"));
  cfg["sweep"] = {{"axis", "Gap"}, {"grid", {1.0, 2.0}}};
  const auto path = scratch("delta_sweep.json");
  write_file(path, cfg.dump());
  const auto r = cli("sweep --config " + path.string());
  EXPECT_EQ(r.code, 4);
  std::stringstream ss(r.out);
  for (const auto& row : io::read_csv(ss)) EXPECT_EQ(row.status, "nonconverged");
}

TEST(Cli, VerifyReportsFailingSuite) {
  const auto r = cli("verify Regularizations");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("FAIL 2/3"), std::string::npos) << r.out;
}
