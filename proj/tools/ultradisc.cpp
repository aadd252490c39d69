// ultradisc: linearization discs of power-series dynamics over Q((T)).

#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "ultradisc/cli.hpp"

namespace {

using ultradisc::cli::Command;

struct Flags {
  int N = 64;
  int K = 16;
  long t_precision = 32;
  std::string method = "composition";
  std::string display_epsilon = "1/2";
  std::string map, lambda, poly, input, out;
  std::string format = "json";
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--N", f.N, "profile length / root-of-unity check bound")->capture_default_str();
  sub->add_option("--display-epsilon", f.display_epsilon, "display-only |T|, a rational in (0,1)")
      ->capture_default_str();
  sub->add_option("--format", f.format, "json or text")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
  sub->add_option("--out", f.out, "write the report to this path instead of stdout");
  sub->add_option("--input", f.input, "read the map (or polynomial) from a file, text or JSON");
}

void add_map(CLI::App* sub, Flags& f) {
  sub->add_option("--map", f.map, "map as 'lambda = <series>; a2 = <series>; ...'");
}

void add_solver(CLI::App* sub, Flags& f) {
  sub->add_option("--K", f.K, "number of conjugacy coefficients")->capture_default_str();
  sub->add_option("--t-precision,--t_precision", f.t_precision, "relative T-precision of each division")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  Flags flags;
  if (const char* env = std::getenv("ULTRADISC_PRECISION")) {
    try {
      flags.t_precision = std::stol(env);
    } catch (const std::exception&) {
      std::cerr << "ignoring malformed ULTRADISC_PRECISION='" << env << "'\n";
    }
  }

  CLI::App app{"Linearization discs of power-series dynamics over Q((T))", "ultradisc"};
  app.require_subcommand(1);

  auto* estimate = app.add_subcommand("estimate-disc", "radius bounds for the linearization disc, with witnesses");
  add_common(estimate, flags);
  add_map(estimate, flags);
  add_solver(estimate, flags);

  auto* solve = app.add_subcommand("solve-conjugacy", "Schroeder coefficients b_k with residual and bound checks");
  add_common(solve, flags);
  add_map(solve, flags);
  add_solver(solve, flags);
  solve->add_option("--method", flags.method, "composition, partition or both")
      ->check(CLI::IsMember({"composition", "partition", "both"}))
      ->capture_default_str();

  auto* bounds = app.add_subcommand("check-bounds", "coefficient bound and injectivity on the lower disc");
  add_common(bounds, flags);
  add_map(bounds, flags);
  add_solver(bounds, flags);

  auto* profile = app.add_subcommand("distance-profile", "v(1 - lambda^n) for n = 1..N");
  add_common(profile, flags);
  add_map(profile, flags);
  profile->add_option("--lambda", flags.lambda, "multiplier as a series");

  auto* newton = app.add_subcommand("newton-polygon", "Newton polygon and root valuations of a polynomial over K");
  add_common(newton, flags);
  newton->add_option("--poly", flags.poly, "polynomial as '0 = <series>; 1 = <series>; ...'");

  auto* witness = app.add_subcommand("witness", "periodic points that bound the linearization disc");
  add_common(witness, flags);
  add_map(witness, flags);
  add_solver(witness, flags);

  CLI11_PARSE(app, argc, argv);

  Command cmd;
  cmd.name = app.get_subcommands().front()->get_name();
  cmd.N = flags.N;
  cmd.K = flags.K;
  cmd.t_precision = flags.t_precision;
  cmd.method = flags.method;
  cmd.format = flags.format == "text" ? ultradisc::cli::OutputFormat::kText : ultradisc::cli::OutputFormat::kJson;
  if (!flags.map.empty()) cmd.map_text = flags.map;
  if (!flags.lambda.empty()) cmd.lambda_text = flags.lambda;
  if (!flags.poly.empty()) cmd.poly_text = flags.poly;
  if (!flags.input.empty()) cmd.input_path = flags.input;
  if (!flags.out.empty()) cmd.out_path = flags.out;
  try {
    cmd.display_epsilon = ultradisc::Rational::from_string(flags.display_epsilon);
  } catch (const ultradisc::Error& e) {
    std::cerr << e.what() << '\n';
    return 1;
  }
  return ultradisc::cli::run(cmd, std::cout);
}
