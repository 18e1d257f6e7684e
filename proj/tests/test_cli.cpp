#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "graphmass/commands.hpp"
#include "graphmass/errors.hpp"

using namespace graphmass;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string config_error_path(const std::string& text) {
  try {
    parse_config_text(text);
  } catch (const ConfigError& e) {
    return e.path();
  }
  return "<no error>";
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("graphmass_cli_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

fs::path write_config(const fs::path& dir, const std::string& text) {
  const fs::path p = dir / "config.json";
  std::ofstream(p, std::ios::binary) << text;
  return p;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(GRAPHMASS_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const char* kSchwarzschild = R"({"n": 3, "function": {"kind": "schwarzschild_radial", "mass": 1.0},
  "domain": {"shape": "ball", "radius": 3.0}, "radii": [100, 1000, 10000]})";

}  // namespace

TEST(Config, ErrorsCarryFieldPaths) {
  EXPECT_EQ(config_error_path(R"({"function": "x1"})"), "n");
  EXPECT_EQ(config_error_path(R"({"n": 3})"), "function");
  EXPECT_EQ(config_error_path(R"({"n": 3, "function": "x1", "colour": 1})"), "colour");
  EXPECT_EQ(config_error_path(R"({"n": 3, "function": [{"kind": "gaussian_bump"}, {"kind": "schwarzschild_radial", "mass": -1}]})"),
            "function[1].mass");
  EXPECT_EQ(config_error_path(R"({"n": 3, "function": {"components": ["x1", {"kind": "warp"}]}})"),
            "function.components[1].kind");
  EXPECT_EQ(config_error_path(R"({"n": 3, "function": "x1", "radii": [10, 5, 100]})"), "radii[1]");
  EXPECT_EQ(config_error_path(R"({"n": 3, "function": "x1", "quadrature": {"degree": 1}})"), "quadrature.degree");
  EXPECT_EQ(config_error_path(R"({"n": 3, "function": "x1", "domain": {"shape": "ellipsoid", "semi_axes": [1, 2]}})"),
            "domain.semi_axes");
  EXPECT_EQ(config_error_path(R"({"n": 3, "m": 2, "function": "x1"})"), "m");
  EXPECT_EQ(config_error_path(R"({"n": 3, "function": "x1 +"})"), "function");
}

TEST(Config, MalformedJsonReportsByteOffset) {
  try {
    parse_config_text("{\"n\": 3,, }");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("malformed JSON at byte 9"), std::string::npos) << e.what();
  }
}

TEST(Config, ResolvedConfigRoundTrips) {
  const RunConfig c = parse_config_text(kSchwarzschild);
  const RunConfig again = parse_config(c.resolved());
  EXPECT_EQ(c.resolved().dump(), again.resolved().dump());
  EXPECT_EQ(c.resolved()["quadrature"]["degree"], 8);
}

TEST(Fnv1a, KnownValues) {
  EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
  EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");
}

TEST(Csv, QuotingAndLineEnds) {
  const CsvTable t{"t.csv", {"a", "b,c"}, {{"1", "say \"hi\""}, {"x\ny", "plain"}}};
  EXPECT_EQ(format_csv(t), "a,\"b,c\"\r\n1,\"say \"\"hi\"\"\"\r\n\"x\ny\",plain\r\n");
}

TEST(Csv, DoublesRoundTrip) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23}) EXPECT_EQ(std::stod(format_double(v)), v);
  EXPECT_EQ(format_double(std::numeric_limits<double>::quiet_NaN()), "nan");
  EXPECT_EQ(format_double(-std::numeric_limits<double>::infinity()), "-inf");
}

TEST(Commands, ZeroFunctionMassIsZero) {
  const CommandOutput out = run_command("mass", parse_config_text(R"({"n": 3, "function": {"kind": "zero"}, "radii": [10, 100, 1000]})"));
  const json& r = out.report["result"];
  EXPECT_EQ(out.exit_code, kExitOk);
  EXPECT_EQ(r["bulk_mass"].get<double>(), 0.0);
  for (const json& v : r["surface_estimates"]) EXPECT_EQ(v.get<double>(), 0.0);
  EXPECT_EQ(out.report["tool"]["version"], kToolVersion);
  EXPECT_EQ(out.report["config_hash"], fnv1a_hex(out.report["config"].dump()));
}

TEST(Commands, SchwarzschildMass) {
  const CommandOutput out = run_command("mass", parse_config_text(kSchwarzschild));
  const json& r = out.report["result"];
  EXPECT_NEAR(r["extrapolated_surface_mass"].get<double>(), 1.0, 1e-3);
  EXPECT_NEAR(r["total_bulk_boundary"].get<double>(), 1.0, 1e-4);
  ASSERT_EQ(out.tables.size(), 1u);
  EXPECT_EQ(out.tables[0].rows.size(), 3u);
}

TEST(Commands, VerifyFlatAndCodimensionTwo) {
  const CommandOutput flat = run_command(
      "verify", parse_config_text(R"({"n": 3, "m": 2, "function": ["x1 + 2*x2", "x3"], "sample": {"count": 10}})"));
  EXPECT_LE(flat.report["result"]["algebraic_max"].get<double>(), 1e-15);
  EXPECT_LE(flat.report["result"]["differential_max"].get<double>(), 1e-12);

  const CommandOutput c2 = run_command("verify", parse_config_text(R"cfg({"n": 3, "function": [
      "sin(x1)*exp(-x2^2) + 0.2*x3^2", "x2*x3/(1 + x1^2 + x2^2 + x3^2)"], "sample": {"count": 30}})cfg"));
  const json& r = c2.report["result"];
  EXPECT_LE(r["algebraic_max"].get<double>(), 1e-12);
  EXPECT_LE(r["differential_max"].get<double>(), 1e-5);
  EXPECT_GE(r["residuals"]["divergence"]["order"].get<double>(), 1.8);
}

TEST(Commands, VerifyContinuesPastHorizonPoints) {
  const CommandOutput out = run_command("verify", parse_config_text(R"({"n": 3,
      "function": {"kind": "schwarzschild_radial", "mass": 1.0},
      "points": [[1.0, 0.0, 0.0], [4.0, 1.0, 0.0]], "sample": {"count": 0}})"));
  const json& pts = out.report["result"]["points"];
  ASSERT_EQ(pts.size(), 2u);
  EXPECT_TRUE(pts[0].contains("error"));
  EXPECT_TRUE(pts[1].contains("residuals"));
  EXPECT_EQ(out.report["result"]["points_failed"], 1);
}

TEST(Commands, PenroseVerdicts) {
  const CommandOutput horizon = run_command("penrose", parse_config_text(R"({"n": 3,
      "function": {"kind": "schwarzschild_radial", "mass": 1.0},
      "domain": {"shape": "ball", "radius": 2.000002}, "radii": [100, 1000, 10000]})"));
  EXPECT_NEAR(horizon.report["result"]["penrose"]["ratio"].get<double>(), 1.0, 1e-3);
  EXPECT_EQ(horizon.report["result"]["penrose"]["verdict"], "equality case");
  EXPECT_EQ(horizon.report["result"]["alexandrov_fenchel"]["verdict"], "sphere (equality)");

  const CommandOutput ell = run_command("penrose", parse_config_text(R"({"n": 3, "function": {"kind": "zero"},
      "domain": {"shape": "ellipsoid", "semi_axes": [1, 1, 1.5]}, "quadrature": {"degree": 24}})"));
  EXPECT_GT(ell.report["result"]["alexandrov_fenchel"]["gap"].get<double>(), 0.0);

  EXPECT_THROW(run_command("penrose", parse_config_text(R"({"n": 3, "function": {"kind": "zero"}})")), ConfigError);
}

TEST(Commands, DecayReport) {
  const CommandOutput out = run_command("decay", parse_config_text(R"({"n": 3,
      "function": {"kind": "schwarzschild_radial", "mass": 1.0}, "decay_radii": [10, 100, 1000, 10000]})"));
  EXPECT_TRUE(out.report["result"]["flat_verdict"].get<bool>());
  EXPECT_THROW(run_command("decay", parse_config_text(R"({"n": 3, "function": "x1", "radii": [10, 20]})")), ConfigError);
}

TEST(Commands, ReportsAreDeterministic) {
  const RunConfig c = parse_config_text(kSchwarzschild);
  EXPECT_EQ(run_command("mass", c).report.dump(2), run_command("mass", c).report.dump(2));
}

TEST(Binary, ExitCodesAndDeterminism) {
  const fs::path dir = scratch_dir("exit");
  const fs::path good = write_config(dir / ".", kSchwarzschild);
  EXPECT_EQ(run_cli("mass --config " + good.string() + " --out " + (dir / "a").string()), 0);
  EXPECT_EQ(run_cli("mass --config " + good.string() + " --out " + (dir / "b").string()), 0);
  for (const char* f : {"mass.json", "surface_mass.csv"}) {
    ASSERT_TRUE(fs::exists(dir / "a" / f)) << f;
    EXPECT_EQ(slurp(dir / "a" / f), slurp(dir / "b" / f)) << f;
  }
  EXPECT_EQ(run_cli("mass --config " + good.string() + " --out " + (dir / "c").string() + " --radii 200,2000,20000 --degree 10"), 0);
  const json c = json::parse(slurp(dir / "c" / "mass.json"));
  EXPECT_EQ(c["config"]["radii"][0], 200.0);
  EXPECT_EQ(c["config"]["quadrature"]["degree"], 10);

  fs::create_directories(dir / "bad");
  const fs::path malformed = write_config(dir / "bad", "{\"n\": 3,,}");
  EXPECT_EQ(run_cli("mass --config " + malformed.string() + " --out " + (dir / "d").string()), kExitConfig);
  EXPECT_EQ(run_cli("mass --config " + good.string() + " --out " + (dir / "d").string() + " --radii 30,20,10"), kExitConfig);
  EXPECT_EQ(run_cli("bogus --config " + good.string() + " --out " + (dir / "d").string()), kExitConfig);

  fs::create_directories(dir / "nc");
  const fs::path varying = write_config(dir / "nc", R"({"n": 3, "function": {"kind": "gaussian_bump", "center": [0.5, 0, 0]},
      "domain": {"shape": "ball", "radius": 1.0}, "radii": [10, 100, 1000]})");
  EXPECT_EQ(run_cli("mass --config " + varying.string() + " --out " + (dir / "e").string()), kExitPrecondition);

  fs::create_directories(dir / "slow");
  const fs::path strict = write_config(dir / "slow", R"({"n": 3, "function": {"kind": "radial_profile", "amplitude": 0.5},
      "radii": [100, 1000, 10000], "quadrature": {"radial_nodes": 2, "tolerance": 1e-15}})");
  EXPECT_EQ(run_cli("mass --config " + strict.string() + " --out " + (dir / "f").string()), kExitNonConvergence);
  const json f = json::parse(slurp(dir / "f" / "mass.json"));
  EXPECT_NE(f["flags"].dump().find("exterior_integral_not_converged"), std::string::npos);
  fs::remove_all(dir);
}
