#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "bcdual/model.hpp"

namespace bcdual::cli {

enum class ModelKind { sutherland, rsvd };
enum class SolverKind { algebraic, ode, both };

/// Raised for anything wrong with user input; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using PhasePoint = std::variant<PhasePointS, PhasePointR>;

struct RunConfig {
  ModelKind model = ModelKind::sutherland;
  ModelParams params;
  std::optional<SutherlandCouplings> couplings;  // set when the file gave couplings
  PhasePoint initial;
  std::vector<double> times;  // empty when the file has no "time" section
  SolverKind solver = SolverKind::algebraic;
  std::uint64_t seed = 0;
  std::filesystem::path output = "trajectory.csv";
  int precision = 17;
};

ModelKind parse_model(const std::string& name);
SolverKind parse_solver(const std::string& name);
std::string to_string(ModelKind kind);
std::string to_string(SolverKind kind);

/// Builds a RunConfig from the JSON document. Conversions between coupling
/// parametrizations are reported on `log`. When "initial" is absent a point
/// is drawn with sample_point(seed, n, model), which needs an explicit n.
RunConfig parse_config(const nlohmann::json& doc, std::ostream& log);
nlohmann::json load_json(const std::filesystem::path& path);
RunConfig load_config(const std::filesystem::path& path, std::ostream& log);

/// Grid of `steps` equal intervals, i.e. steps + 1 points including both ends.
std::vector<double> uniform_grid(double start, double end, int steps);

nlohmann::json to_json(const ModelParams& params);
nlohmann::json to_json(const PhasePointS& pt);
nlohmann::json to_json(const PhasePointR& pt);

}  // namespace bcdual::cli
