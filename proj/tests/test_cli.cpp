#include "anyonrg/cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace anyonrg;
using namespace anyonrg::cli;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

int run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "anyonrg");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return cli::main(static_cast<int>(argv.size()), argv.data());
}

std::filesystem::path tmp(const std::string& name) { return std::filesystem::temp_directory_path() / name; }

}  // namespace

TEST(Config, JsonRoundTrip) {
  RunConfig c;
  c.command = "chirality";
  c.k = 3;
  c.scale_N = 1;
  c.depth_M = 4;
  c.separations = {-3, 2};
  c.attachment = majorana::Direction::left;
  c.braid = majorana::BraidSign::inverse;
  c.kauffman_A = -0.125;
  c.format = Format::json;
  c.out = "x.json";
  c.seed = 123456789012345ULL;
  c.delta = 1.5;
  const auto text = to_json(c).dump();
  EXPECT_EQ(config_from_json(nlohmann::json::parse(text)), c);
  RunConfig d;
  d.command = "gs";
  EXPECT_EQ(config_from_json(nlohmann::json::parse(to_json(d).dump())), d);
  auto bad = to_json(d);
  bad["attachment"] = "up";
  EXPECT_THROW(config_from_json(nlohmann::json::parse(bad.dump())), std::invalid_argument);
}

TEST(Config, Validation) {
  RunConfig c;
  c.command = "flow";
  EXPECT_NO_THROW(validate(c));
  c.separations = {0};
  EXPECT_THROW(validate(c), std::invalid_argument);
  c.separations = {16};
  EXPECT_THROW(validate(c), std::invalid_argument);
  c.separations = {15, -15};
  EXPECT_NO_THROW(validate(c));
  c.command = "chirality";
  EXPECT_THROW(validate(c), std::invalid_argument);
  c.command = "bogus";
  EXPECT_THROW(validate(c), std::invalid_argument);
}

TEST(Render, CsvHeaderAndRows) {
  RunConfig c;
  c.command = "flow";
  c.depth_M = 2;
  const auto t = run(c);
  const auto s = render(c, t);
  std::istringstream in(s);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "# schema-version: 1");
  std::getline(in, line);
  EXPECT_EQ(line, "# command: flow");
  std::getline(in, line);
  EXPECT_EQ(line.rfind("# config: {", 0), 0u);
  EXPECT_EQ(config_from_json(nlohmann::json::parse(line.substr(10))), c);
  while (std::getline(in, line) && line[0] == '#') {
  }
  EXPECT_EQ(line, "M,d,re,im,limit_im,rel_error");
  EXPECT_EQ(t.rows.size(), 9u);
}

TEST(Render, JsonMirrorsCsv) {
  RunConfig c;
  c.command = "gs";
  c.half_length = 1;
  c.format = Format::json;
  const auto t = run(c);
  const auto j = nlohmann::json::parse(render(c, t));
  EXPECT_EQ(j["schema_version"], 1);
  EXPECT_EQ(config_from_json(j["config"]), c);
  ASSERT_EQ(j["rows"].size(), t.rows.size());
  EXPECT_EQ(j["rows"][0]["a"], 0);
  EXPECT_EQ(j["rows"][0]["b"], 1);
  EXPECT_DOUBLE_EQ(j["rows"][0]["gamma_momentum"].get<double>(), std::get<double>(t.rows[0][2]));
}

TEST(Commands, FlowProperties) {
  RunConfig c;
  c.command = "flow";
  c.separations = {1, 2, 4, -2};
  const auto t = run(c);
  // rows: M outer, d inner
  const std::size_t nd = c.separations.size();
  for (std::size_t i = 0; i + nd < t.rows.size(); ++i) {
    EXPECT_LT(std::get<long>(t.rows[i][0]), std::get<long>(t.rows[i + nd][0]));
    const double e0 = std::get<double>(t.rows[i][5]), e1 = std::get<double>(t.rows[i + nd][5]);
    // strictly decreasing until the frozen normalization's own offset (~2e-7) dominates
    if (e0 > 1e-6) EXPECT_LT(e1, e0) << i;
  }
  for (std::size_t i = 0; i < t.rows.size(); i += nd)
    EXPECT_EQ(std::get<double>(t.rows[i + 1][3]), -std::get<double>(t.rows[i + 3][3]));
  EXPECT_LT(std::get<double>(t.rows[t.rows.size() - 2][5]), 1e-3);
}

TEST(Commands, ChiralitySwap) {
  RunConfig c;
  c.command = "chirality";
  c.separations = {2};
  const auto t = run(c);
  ASSERT_EQ(t.rows.size(), 44u);
  const auto& last = t.rows;
  // order per M: right/over, right/inverse, left/over, left/inverse
  const std::size_t base = last.size() - 4;
  for (int col = 4; col < 8; ++col) EXPECT_EQ(last[base + 2][col], last[base + 1][col]);
  EXPECT_LT(std::get<double>(last[base][8]), 0.05);
  const auto t_pp = std::get<double>(last[base][4]), t_mm = std::get<double>(last[base + 2][7]);
  EXPECT_EQ(t_pp, t_mm);
}

TEST(Exit, Codes) {
  const auto out = tmp("anyonrg_cli_flow.csv");
  EXPECT_EQ(run_cli({"flow", "--depth-M", "3", "--out", out.string()}), kExitOk);
  EXPECT_EQ(run_cli({"flow", "--separations", "0", "--out", out.string()}), kExitUsage);
  EXPECT_EQ(run_cli({"flow", "--attachment", "up"}), kExitUsage);
  EXPECT_EQ(run_cli({"nope"}), kExitUsage);
  EXPECT_EQ(run_cli({}), kExitUsage);
  EXPECT_EQ(run_cli({"flow", "--depth-M", "x"}), kExitUsage);
  EXPECT_EQ(run_cli({"gs", "--half-length", "0"}), kExitUsage);
  EXPECT_EQ(run_cli({"flow", "--out", "/nonexistent/dir/x.csv"}), kExitUsage);
}

TEST(Exit, VerifyNegativeControls) {
  const auto out = tmp("anyonrg_cli_verify.csv");
  std::filesystem::remove(out);
  EXPECT_EQ(run_cli({"verify", "--delta", "1.5", "--out", out.string()}), kExitCheckFailed);
  const auto report = slurp(out);
  EXPECT_NE(report.find("e_x^2 = delta e_x"), std::string::npos);
  EXPECT_NE(report.find(",no"), std::string::npos);
  EXPECT_EQ(run_cli({"verify", "--kauffman-A", "0.1", "--out", out.string()}), kExitCheckFailed);
  EXPECT_NE(slurp(out).find("tl_homomorphism"), std::string::npos);
}

TEST(Exit, VerifyGoldenChain) {
  const auto out = tmp("anyonrg_cli_verify3.csv");
  EXPECT_EQ(run_cli({"verify", "--k", "3", "--out", out.string()}), kExitOk);
  EXPECT_NE(slurp(out).find("fusion_k3"), std::string::npos);
}

TEST(Determinism, RepeatedRunsAreByteIdentical) {
  for (std::string cmd : {"flow", "chirality", "correlator", "gs"}) {
    for (std::string fmt : {"csv", "json"}) {
      const auto a = tmp("anyonrg_det_a." + fmt), b = tmp("anyonrg_det_b." + fmt);
      ASSERT_EQ(run_cli({cmd, "--depth-M", "4", "--format", fmt, "--out", a.string()}), kExitOk) << cmd;
      ASSERT_EQ(run_cli({cmd, "--depth-M", "4", "--format", fmt, "--out", b.string()}), kExitOk) << cmd;
      // the out path is part of the embedded config
      auto sa = slurp(a), sb = slurp(b);
      const auto pa = a.string(), pb = b.string();
      for (std::size_t pos; (pos = sb.find(pb)) != std::string::npos;) sb.replace(pos, pb.size(), pa);
      EXPECT_EQ(sa, sb) << cmd << " " << fmt;
    }
  }
}
