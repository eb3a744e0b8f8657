#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace bcdual::cli {

enum class Comparison {
  at_most,     // pass iff worst residual <= bound
  greater_than // pass iff smallest margin > bound
};

struct CheckResult {
  std::string name;
  std::string description;
  int samples = 0;
  double worst = 0.0;  // largest residual, or smallest margin for greater_than checks
  double bound = 0.0;
  Comparison comparison = Comparison::at_most;
  bool pass = false;
  std::string failure;  // first exception raised by a sample, if any
};

struct VerifyReport {
  std::uint64_t seed = 0;
  int n_max = 4;
  std::vector<CheckResult> checks;
  bool pass = false;

  const CheckResult* find(const std::string& name) const;
};

inline constexpr std::uint64_t kDefaultVerifySeed = 20240917;

struct VerifyOptions {
  std::uint64_t seed = kDefaultVerifySeed;
  int n_max = 4;
  std::optional<int> samples;  // overrides every check's default sample count
  int threads = 1;
  std::map<std::string, double> bound_overrides;  // harness hook
  std::vector<std::string> only;                  // empty = all checks
};

struct CheckInfo {
  std::string name;
  std::string description;
  int default_samples;
  double bound;
  Comparison comparison;
};

/// Every registered property check, in canonical order.
std::vector<CheckInfo> list_checks();

/// Runs the requested checks. Deterministic for a given seed, n_max and
/// sample count; the thread count does not affect the result.
VerifyReport run_verify(const VerifyOptions& options);

nlohmann::json to_json(const VerifyReport& report);

}  // namespace bcdual::cli
