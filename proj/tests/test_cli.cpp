#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "app/config.hpp"
#include "app/results.hpp"
#include "app/runners.hpp"
#include "app/suites.hpp"
#include "xsbfem/error.hpp"

using namespace xsbfem;
using namespace xsbfem::app;

namespace {

std::string config_error(const std::string& text) {
  try {
    parse_config(text);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Config);
    return e.what();
  }
  ADD_FAILURE() << "accepted: " << text;
  return {};
}

const char* kPatch = "[analysis]\nname = patch\nproblem = patch\n[mesh]\nnx = 8\nny = 8\n[geometry]\nheight = 1\n"
                     "[materials]\ne_ratio = 1\n[sbfem]\nlayers = 1\n";

}  // namespace

TEST(Hash, Fnv1aReferenceValues) {
  EXPECT_EQ(fnv1a(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(hex_hash(0xabcULL), "0000000000000abc");
}

TEST(Config, Defaults) {
  const AnalysisConfig c = parse_config("[analysis]\nname = x\n");
  EXPECT_EQ(c.name, "x");
  EXPECT_EQ(c.problem, ProblemKind::EdgeCrack);
  EXPECT_EQ(c.layers, 3);
  EXPECT_FALSE(c.growth);
}

TEST(Config, ParsesSections) {
  const AnalysisConfig c = parse_config(
      "[analysis]\nproblem = deflected\n[geometry]\npsi = 30\n[materials]\nplane = stress\n"
      "[growth]\nmode = hoop\nincrement = 0.05\nsteps = 4\n[singularity]\ne2_ratios = 0.5, 2\n");
  EXPECT_EQ(c.problem, ProblemKind::Deflected);
  EXPECT_EQ(c.plane, PlaneState::PlaneStress);
  ASSERT_TRUE(c.growth);
  EXPECT_EQ(c.growth->mode, GrowthMode::MaxHoopStress);
  EXPECT_EQ(c.growth->max_steps, 4);
  EXPECT_DOUBLE_EQ(c.growth->increment, 0.05);
  EXPECT_NEAR(c.growth->initial_angle, std::numbers::pi / 6.0, 1e-15);
  EXPECT_EQ(c.singularity.e2_ratios, (std::vector<double>{0.5, 2.0}));
}

TEST(Config, Diagnostics) {
  EXPECT_NE(config_error("[mesh]\nnx = 1\n").find("[mesh] nx"), std::string::npos);
  EXPECT_NE(config_error("[mesh]\nny = two\n").find("[mesh] ny"), std::string::npos);
  EXPECT_NE(config_error("[mesh]\nnxx = 4\n").find("nxx"), std::string::npos);
  EXPECT_NE(config_error("[bogus]\nk = 1\n").find("bogus"), std::string::npos);
  EXPECT_NE(config_error("[mesh\nnx = 4\n").find("line 1"), std::string::npos);
  config_error("[analysis]\nproblem = dragon\n");
  config_error("[growth]\nsteps = 0\n");
  config_error("[growth]\nincrement = -1\n");
  config_error("[materials]\npoisson = 0.5\n");
  EXPECT_THROW(load_config("/nonexistent/path.ini"), Error);
}

TEST(Config, HashIgnoresOrderAndComments) {
  const auto a = parse_config("[mesh]\nnx = 4\nny = 6\n[sbfem]\nlayers = 2\n");
  const auto b = parse_config("; note\n[sbfem]\nlayers = 2\n\n[mesh]\nny = 6\nnx = 4\n");
  const auto c = parse_config("[mesh]\nnx = 4\nny = 7\n[sbfem]\nlayers = 2\n");
  EXPECT_EQ(a.hash, b.hash);
  EXPECT_NE(a.hash, c.hash);
}

TEST(Results, CsvLayout) {
  ResultTable t;
  t.config_hash = 1;
  t.add("c", "K_I", 0.5);
  t.rows.push_back({"c", "K_II", 1.5, 1.0, "fail"});
  const std::string csv = scalar_csv(t);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line.rfind("# xsbfem ", 0), 0u);
  EXPECT_NE(line.find("config-hash 0000000000000001"), std::string::npos);
  std::getline(in, line);
  EXPECT_EQ(line, "case,quantity,value,reference,rel_error,status");
  std::getline(in, line);
  EXPECT_EQ(line, "c,K_I,0.5,,,ok");
  std::getline(in, line);
  EXPECT_EQ(line, "c,K_II,1.5,1,0.5,fail");
  EXPECT_EQ(t.find("K_II")->value, 1.5);
  EXPECT_EQ(t.find("missing"), nullptr);
}

TEST(Results, NumberFormats) {
  EXPECT_EQ(std::stod(format_number(0.1)), 0.1);
  EXPECT_EQ(short_number(0.1), "0.1");
  EXPECT_NEAR(relative_error(1.1, 1.0), 0.1, 1e-15);
  EXPECT_DOUBLE_EQ(relative_error(0.25, 0.0), 0.25);
}

TEST(Results, AtomicWrite) {
  const auto dir = std::filesystem::temp_directory_path() / "xsbfem_cli_test";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "out.csv").string();
  write_file_atomic(path, "abc\n");
  std::ifstream in(path);
  std::string s;
  std::getline(in, s);
  EXPECT_EQ(s, "abc");
  EXPECT_FALSE(std::filesystem::exists(path + ".tmp"));
  EXPECT_THROW(write_file_atomic((dir / "no" / "such" / "x.csv").string(), "x"), std::exception);
  std::filesystem::remove_all(dir);
}

TEST(Runners, PatchReportsErrorsNotFactors) {
  const ResultTable t = run_analyze(parse_config(kPatch));
  ASSERT_NE(t.find("patch_stress_error"), nullptr);
  EXPECT_LT(t.find("patch_stress_error")->value, 1e-10);
  EXPECT_LT(t.find("patch_displacement_error")->value, 1e-10);
  EXPECT_EQ(t.find("K_I"), nullptr);
}

TEST(Runners, AnalyzeIsDeterministic) {
  const AnalysisConfig c = parse_config("[analysis]\nname = e\n[mesh]\nnx = 10\nny = 20\n[sbfem]\nlayers = 2\n");
  const ResultTable a = run_analyze(c);
  const ResultTable b = run_analyze(c);
  EXPECT_EQ(scalar_csv(a), scalar_csv(b));
  ASSERT_NE(a.find("K_I"), nullptr);
  EXPECT_GT(a.find("K_I")->value, 0.0);
  ASSERT_EQ(a.series.size(), 2u);
  EXPECT_EQ(a.series[1].rows.size(), 10u);
}

TEST(Runners, SingularityOfUncrackedCircle) {
  const ResultTable t = run_singularity(parse_config("[singularity]\ndomain = circle\ncracked = false\n"));
  EXPECT_EQ(t.find("singular_orders")->value, 0.0);
  const ResultTable u = run_singularity(parse_config("[singularity]\ndomain = circle\norder = 4\n"));
  EXPECT_EQ(u.find("singular_orders")->value, 2.0);
  EXPECT_NEAR(u.find("order_1_re")->value, 0.5, 1e-3);
}

TEST(Runners, PropagateNeedsGrowthSection) {
  EXPECT_THROW(run_propagate(parse_config("[analysis]\nname = e\n")), Error);
}

TEST(Suites, UnknownOrEmptyNameListsSuites) {
  for (const char* name : {"nope", ""}) {
    try {
      run_suite(name);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::Config);
      EXPECT_NE(std::string(e.what()).find("table1"), std::string::npos);
    }
  }
  EXPECT_GE(suite_names().size(), 9u);
}

TEST(Suites, CheckArithmetic) {
  Check c{1, "c", "q", 1.01, 1.0, 0.02};
  EXPECT_NEAR(c.error(), 0.01, 1e-12);
  EXPECT_TRUE(c.pass());
  c.tolerance = 0.005;
  EXPECT_FALSE(c.pass());
  c.absolute = true;
  c.reference = 0.0;
  c.value = -0.004;
  EXPECT_TRUE(c.pass());
}

TEST(Suites, PropertiesSuitePasses) {
  SuiteOptions o;
  o.threads = 2;
  const SuiteReport r = run_suite("properties", o);
  EXPECT_TRUE(r.errors.empty());
  EXPECT_TRUE(r.passed()) << r.text();
  EXPECT_FALSE(r.checks.empty());
}
