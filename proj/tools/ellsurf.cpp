#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "ellsurf/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Elliptic surfaces y^2 = x^3 + a4(t) x + a6(t): fibres, good primes, sections mod p and double covers"};
  app.set_version_flag("--version", ellsurf::cli::kToolVersion);
  app.require_subcommand(1);

  ellsurf::cli::Options opt;
  std::uint64_t prime = 0;
  std::string x, out;
  int num_deg = 0, den_deg = 0, lambda_max = 0;
  std::uint64_t seed = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-i,--input", opt.input_path, "Surface file (key = value lines)")->required();
    sub->add_option("-o,--out", out, "Write the JSON report here instead of stdout");
    sub->add_option("--seed", seed, "Recorded in the report; every command is deterministic");
  };
  auto add_bounds = [&](CLI::App* sub) {
    sub->add_option("--num-deg", num_deg, "Numerator degree bound for x (default 2d + 2*den-deg)");
    sub->add_option("--den-deg", den_deg, "Denominator degree bound for the square root of x's denominator");
  };
  auto add_cover = [&](CLI::App* sub) {
    sub->add_option("--lambda-max", lambda_max, "Largest lambda tried by the lift scan");
    sub->add_flag("--force", opt.force, "Proceed at a prime that fails the good-reduction check");
  };

  auto* analyze = app.add_subcommand("analyze", "Singular fibres, Euler sum and bad primes");
  add_common(analyze);

  auto* sections = app.add_subcommand("sections", "Enumerate sections mod p within degree bounds");
  add_common(sections);
  sections->add_option("-p,--prime", prime, "Odd prime")->required();
  add_bounds(sections);

  auto* cover = app.add_subcommand("cover", "Build the double cover for a section x mod p");
  add_common(cover);
  cover->add_option("-p,--prime", prime, "Odd prime")->required();
  cover->add_option("-x,--x", x, "x-coordinate of the section, e.g. '2*t + 1' or 't/(t+1)'")->required();
  add_cover(cover);

  auto* verify = app.add_subcommand("verify", "Search sections and build covers over a list of good primes");
  add_common(verify);
  add_bounds(verify);
  add_cover(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  for (auto* sub : app.get_subcommands()) opt.command = sub->get_name();
  auto given = [&](const char* name) {
    for (auto* sub : app.get_subcommands())
      if (auto* o = sub->get_option_no_throw(name); o && o->count() > 0) return true;
    return false;
  };
  if (given("--prime")) opt.prime = prime;
  if (given("--x")) opt.x = x;
  if (given("--num-deg")) opt.num_deg = num_deg;
  if (given("--den-deg")) opt.den_deg = den_deg;
  if (given("--lambda-max")) opt.lambda_max = lambda_max;
  if (given("--seed")) opt.seed = seed;

  auto outcome = ellsurf::cli::run(opt);
  std::string text = ellsurf::cli::serialize(outcome.report);
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out);
    if (!f) {
      std::cerr << "ellsurf: cannot write '" << out << "'\n";
      return 2;
    }
    f << text;
  }
  if (outcome.exit_code != 0) std::cerr << "ellsurf: " << outcome.report["error"]["message"].get<std::string>() << "\n";
  return outcome.exit_code;
}
