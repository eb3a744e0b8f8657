#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "config.hpp"
#include "verify.hpp"

namespace bcdual::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kConfigError = 2, kNumericalFailure = 3 };

enum class Direction { s2r, r2s, round_trip };
Direction parse_direction(const std::string& name);

/// Command-line overrides applied on top of the config file.
struct Overrides {
  std::optional<std::filesystem::path> out;
  std::optional<SolverKind> solver;
  std::optional<int> precision;
  std::optional<std::uint64_t> seed;
};

struct Streams {
  std::ostream& out;
  std::ostream& err;
};

int cmd_simulate(const std::filesystem::path& config, const Overrides& overrides, Streams io);
int cmd_dualize(const std::filesystem::path& config, Direction direction, Streams io);
int cmd_spectrum(const std::filesystem::path& config, Streams io);
/// Writes the report to `out_path` when given, otherwise to io.out.
int cmd_verify(const VerifyOptions& options, const std::optional<std::filesystem::path>& out_path, Streams io);

/// Sibling path with the extension replaced: traj.csv + ".ode.csv".
std::filesystem::path with_suffix(const std::filesystem::path& path, const std::string& suffix);

}  // namespace bcdual::cli
