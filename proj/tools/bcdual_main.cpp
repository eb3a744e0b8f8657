#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

using namespace bcdual::cli;

int main(int argc, char** argv) {
  CLI::App app{"bcdual: BC_n Sutherland / RSvD models and their action-angle duality"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "bcdual 0.1.0");

  std::string config;
  std::string out;
  std::string solver;
  std::string direction = "round-trip";
  int precision = 17;
  std::uint64_t seed = kDefaultVerifySeed;
  int n_max = 4;
  int samples = 0;
  int threads = 1;
  std::vector<std::string> bound_overrides;
  std::vector<std::string> only;

  auto* simulate = app.add_subcommand("simulate", "integrate a trajectory and write it as CSV");
  simulate->add_option("--config", config, "JSON run configuration")->required()->check(CLI::ExistingFile);
  simulate->add_option("--out", out, "output CSV path (overrides the config)");
  simulate->add_option("--solver", solver, "algebraic, ode or both")
      ->check(CLI::IsMember({"algebraic", "ode", "both"}));
  simulate->add_option("--precision", precision, "significant digits in the CSV")->check(CLI::Range(1, 17));
  simulate->add_option("--seed", seed, "seed for a sampled initial point");

  auto* dualize = app.add_subcommand("dualize", "map a phase point through the duality");
  dualize->add_option("--config", config, "JSON file with model, params and initial point")
      ->required()
      ->check(CLI::ExistingFile);
  dualize->add_option("--direction", direction, "s2r, r2s or round-trip")
      ->check(CLI::IsMember({"s2r", "r2s", "round-trip"}));

  auto* spectrum = app.add_subcommand("spectrum", "print the sorted Lax spectrum of a phase point");
  spectrum->add_option("--config", config, "JSON file with model, params and initial point")
      ->required()
      ->check(CLI::ExistingFile);

  auto* verify = app.add_subcommand("verify", "run the property verification suite");
  verify->add_option("--seed", seed, "base seed");
  verify->add_option("--n", n_max, "largest particle number sampled")->check(CLI::Range(1, 8));
  verify->add_option("--samples", samples, "override every check's sample count")->check(CLI::PositiveNumber);
  verify->add_option("--threads", threads, "worker threads")->check(CLI::Range(1, 256));
  verify->add_option("--out", out, "write the JSON report here instead of stdout");
  verify->add_option("--check", only, "run only the named check (repeatable)");
  // Harness hook: NAME=VALUE replaces a check's bound, e.g. to force a failure.
  verify->add_option("--override-bound", bound_overrides)->group("");

  CLI11_PARSE(app, argc, argv);

  const Streams io{std::cout, std::cerr};
  try {
    if (*simulate) {
      Overrides o;
      if (!out.empty()) o.out = out;
      if (!solver.empty()) o.solver = parse_solver(solver);
      if (simulate->count("--precision")) o.precision = precision;
      if (simulate->count("--seed")) o.seed = seed;
      return cmd_simulate(config, o, io);
    }
    if (*dualize) return cmd_dualize(config, parse_direction(direction), io);
    if (*spectrum) return cmd_spectrum(config, io);

    VerifyOptions options;
    options.seed = seed;
    options.n_max = n_max;
    if (samples > 0) options.samples = samples;
    options.threads = threads;
    options.only = only;
    for (const auto& item : bound_overrides) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw ConfigError("--override-bound expects NAME=VALUE, got '" + item + "'");
      options.bound_overrides[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
    }
    std::optional<std::filesystem::path> out_path;
    if (!out.empty()) out_path = out;
    return cmd_verify(options, out_path, io);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  }
}
