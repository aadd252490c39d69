#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "support.hpp"
#include "ultradisc/cli.hpp"

namespace ultradisc::cli {
namespace {

using testing::S;

struct Ran {
  int code;
  std::string text;
  Json report;
};

Ran run_json(const Command& cmd) {
  std::ostringstream out;
  const int code = run(cmd, out);
  Ran r{code, out.str(), Json()};
  if (cmd.format == OutputFormat::kJson && !cmd.out_path) r.report = Json::parse(r.text);
  return r;
}

Command with_map(const std::string& name, const std::string& map) {
  Command c;
  c.name = name;
  c.map_text = map;
  return c;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("ultradisc_cli_test_" + name);
}

TEST(ParseMap, Examples) {
  const AnalyticMap f = parse_map("lambda = 1+T; a2 = 1; a4 = -1/2*T^-1");
  EXPECT_EQ(f.multiplier(), S("1+T"));
  EXPECT_EQ(f.coefficient(2), S("1"));
  EXPECT_TRUE(f.coefficient(3).is_exact_zero());
  EXPECT_EQ(f.coefficient(4), S("-1/2*T^-1"));
  EXPECT_TRUE(parse_map("lambda=2").is_linear());
}

TEST(ParseMap, ErrorColumnsPointIntoTheWholeString) {
  try {
    parse_map("lambda=1+T; a2=T^");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.column(), 17u);
  }
  EXPECT_THROW(parse_map("a2=1"), Error);
  EXPECT_THROW(parse_map("lambda=1+T; b2=1"), ParseError);
  EXPECT_THROW(parse_map("lambda=1+T; a1=2"), ParseError);
  EXPECT_THROW(parse_map("lambda=1+T; a2"), ParseError);
  EXPECT_THROW(parse_map("lambda=1+T; ax=1"), ParseError);
}

TEST(ParseMapJson, Examples) {
  const AnalyticMap f = parse_map_json(Json::parse(R"({"lambda": "-1+T", "coeffs": {"2": "1", "3": "T"}})"));
  EXPECT_EQ(f.multiplier(), S("-1+T"));
  EXPECT_EQ(f.coefficient(3), S("T"));
  EXPECT_THROW(parse_map_json(Json::parse(R"({"coeffs": {}})")), Error);
  EXPECT_THROW(parse_map_json(Json::parse(R"({"lambda": 3})")), Error);
}

TEST(ParsePolynomial, Examples) {
  const auto p = parse_polynomial("0 = T^3; 1 = -T - T^2; 2 = 1");
  ASSERT_EQ(p.size(), 3u);
  EXPECT_EQ(p[1].first, 1);
  EXPECT_EQ(p[1].second, S("-T-T^2"));
  EXPECT_EQ(parse_polynomial_json(Json::parse(R"({"coeffs": {"0": "T", "2": "1"}})")).size(), 2u);
}

TEST(Run, EstimateDiscCase2) {
  const Ran r = run_json(with_map("estimate-disc", "lambda=1+T; a2=1"));
  EXPECT_EQ(r.code, 0);
  const Json& res = r.report["results"];
  EXPECT_EQ(res["case"], "CASE2");
  EXPECT_EQ(res["lower"]["exponent"], "1");
  EXPECT_EQ(res["upper"]["exponent"], "0");
  EXPECT_EQ(res["witnesses"][0]["sphere_exponent"], "1");
  EXPECT_EQ(res["witnesses"][0]["point"], "-T");
  EXPECT_EQ(r.report["status"], "ok");
  EXPECT_EQ(r.report["schema_version"], "1");
  EXPECT_EQ(r.report["inputs"]["map"]["lambda"], "1+T");
}

TEST(Run, SolveBothMethods) {
  Command c = with_map("solve-conjugacy", "lambda=1+T; a2=1");
  c.K = 8;
  c.method = "both";
  const Ran r = run_json(c);
  EXPECT_EQ(r.code, 0);
  const Json& res = r.report["results"];
  EXPECT_EQ(res["methods_agree"], true);
  EXPECT_EQ(res["residual"]["composition"]["zero"], true);
  EXPECT_EQ(res["residual"]["partition"]["zero"], true);
  EXPECT_EQ(res["coefficients"]["composition"].size(), 8u);
  EXPECT_EQ(res["coefficients"]["composition"][1]["valuation"], "-1");
  EXPECT_EQ(res["coefficients"]["composition"][1]["slack"], "0");
}

TEST(Run, DistanceProfile) {
  Command c;
  c.name = "distance-profile";
  c.lambda_text = "2+T";
  c.N = 8;
  const Ran r = run_json(c);
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.report["results"]["vals"], Json(std::vector<int>(8, 0)));
  EXPECT_TRUE(r.report["results"]["m"].is_null());
  EXPECT_EQ(r.report["results"]["case"], "CASE1");
}

TEST(Run, CheckBounds) {
  Command c = with_map("check-bounds", "lambda=-1+T; a2=1; a3=T^-1");
  c.K = 10;
  const Ran r = run_json(c);
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.report["results"]["bounds_hold"], true);
  EXPECT_EQ(r.report["results"]["injective_on_lower_disc"]["holds"], true);
}

TEST(Run, NewtonPolygonAndWitness) {
  Command c;
  c.name = "newton-polygon";
  c.poly_text = "0=1; 1=1; 2=T^-1; 3=T^-1";  // (f^2(x) - x)/x up to a unit shift
  const Ran r = run_json(c);
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.report["results"]["root_valuations"][0]["valuation"], "1/2");
  EXPECT_EQ(r.report["results"]["root_valuations"][0]["multiplicity"], 2);

  const Ran w = run_json(with_map("witness", "lambda=-1+T; a2=1"));
  EXPECT_EQ(w.code, 0);
  EXPECT_EQ(w.report["results"]["witnesses"][1]["period"], 2);
  EXPECT_EQ(w.report["results"]["witnesses"][1]["sphere_exponent"], "1/2");
}

TEST(Run, InputErrorsExitOne) {
  const Ran parse = run_json(with_map("estimate-disc", "lambda=T^"));
  EXPECT_EQ(parse.code, 1);
  EXPECT_EQ(parse.report["error"]["code"], "ParseError");
  EXPECT_EQ(parse.report["error"]["column"], 9);
  EXPECT_EQ(parse.report["status"], "input_error");

  const Ran unity = run_json(with_map("estimate-disc", "lambda=-1; a2=1"));
  EXPECT_EQ(unity.code, 1);
  EXPECT_EQ(unity.report["error"]["code"], "RootOfUnity");

  Command bad = with_map("estimate-disc", "lambda=2");
  bad.K = 0;
  EXPECT_EQ(run_json(bad).code, 1);
  Command eps = with_map("estimate-disc", "lambda=2");
  eps.display_epsilon = Rational(3, 2);
  EXPECT_EQ(run_json(eps).code, 1);
  Command none;
  none.name = "estimate-disc";
  EXPECT_EQ(run_json(none).code, 1);
}

TEST(Run, FalsificationMapsToTwo) {
  EXPECT_EQ(exit_code_for(ErrorCode::kInvariantViolation), ExitCode::kFalsified);
  EXPECT_EQ(exit_code_for(ErrorCode::kWitnessNotFound), ExitCode::kFalsified);
  EXPECT_EQ(exit_code_for(ErrorCode::kPrecisionIndeterminate), ExitCode::kInputError);
  EXPECT_EQ(static_cast<int>(ExitCode::kFalsified), 2);
}

TEST(Run, Deterministic) {
  Command c = with_map("solve-conjugacy", "lambda=1/3+2*T; a2=T^-2; a5=3");
  c.method = "both";
  c.K = 10;
  const Ran a = run_json(c);
  const Ran b = run_json(c);
  EXPECT_EQ(a.text, b.text);
}

bool has_float(const Json& j) {
  if (j.is_number_float()) return true;
  if (j.is_structured())
    for (const auto& v : j) if (has_float(v)) return true;
  return false;
}

TEST(Run, NumbersAreExactOutsideDisplayBlock) {
  Ran r = run_json(with_map("estimate-disc", "lambda=-1+T; a2=T^-1"));
  ASSERT_TRUE(r.report["results"]["display_radii"]["lower"].is_number_float());
  r.report["results"].erase("display_radii");
  EXPECT_FALSE(has_float(r.report));
}

TEST(Run, JsonInputFileAndOutPath) {
  const auto in = temp_path("map.json");
  const auto out = temp_path("report.json");
  {
    std::ofstream f(in);
    f << R"({"lambda": "-1+T", "coeffs": {"2": "1"}})";
  }
  Command c;
  c.name = "estimate-disc";
  c.input_path = in.string();
  c.out_path = out.string();
  std::ostringstream sink;
  EXPECT_EQ(run(c, sink), 0);
  EXPECT_TRUE(sink.str().empty());
  std::ifstream f(out);
  const Json report = Json::parse(f);
  EXPECT_EQ(report["results"]["lower"]["exponent"], "1/2");
  EXPECT_EQ(report["results"]["lower"]["rational_in_K"], false);
  std::filesystem::remove(in);
  std::filesystem::remove(out);
}

TEST(Run, TextInputFile) {
  const auto in = temp_path("map.txt");
  {
    std::ofstream f(in);
    f << "lambda = 2+T; a2 = 1\n";
  }
  Command c;
  c.name = "estimate-disc";
  c.input_path = in.string();
  const Ran r = run_json(c);
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.report["results"]["exact"], true);
  std::filesystem::remove(in);
}

TEST(Run, TextFormat) {
  Command c;
  c.name = "distance-profile";
  c.lambda_text = "-1+T";
  c.N = 4;
  c.format = OutputFormat::kText;
  const Ran r = run_json(c);
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.text.find("results.vals = [0,1,0,1]\n"), std::string::npos) << r.text;
  EXPECT_NE(r.text.find("results.m = 2\n"), std::string::npos);
  EXPECT_NE(r.text.find("status = ok\n"), std::string::npos);
}

}  // namespace
}  // namespace ultradisc::cli
