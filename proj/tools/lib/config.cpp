#include "config.hpp"

#include <cmath>
#include <fstream>
#include <ostream>

#include "bcdual/errors.hpp"
#include "sampling.hpp"

namespace bcdual::cli {

namespace {

using nlohmann::json;

double number(const json& obj, const char* key) {
  if (!obj.contains(key)) throw ConfigError(std::string("missing key '") + key + "'");
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(std::string("'") + key + "' must be a number");
  return v.get<double>();
}

RVector vector_of(const json& obj, const char* key) {
  if (!obj.contains(key)) throw ConfigError(std::string("missing key 'initial.") + key + "'");
  const json& v = obj.at(key);
  if (!v.is_array() || v.empty()) throw ConfigError(std::string("'initial.") + key + "' must be a non-empty array");
  RVector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) throw ConfigError(std::string("'initial.") + key + "' must hold numbers");
    out(static_cast<Eigen::Index>(i)) = v[i].get<double>();
  }
  return out;
}

std::vector<double> parse_times(const json& doc) {
  const json& t = doc.at("time");
  std::vector<double> times;
  if (t.is_array()) {
    for (const auto& v : t) {
      if (!v.is_number()) throw ConfigError("'time' list must hold numbers");
      times.push_back(v.get<double>());
    }
  } else if (t.is_object()) {
    const double start = number(t, "start");
    const double end = number(t, "end");
    if (!t.contains("steps") || !t.at("steps").is_number_integer()) {
      throw ConfigError("'time.steps' must be an integer");
    }
    const int steps = t.at("steps").get<int>();
    if (steps < 1) throw ConfigError("'time.steps' must be at least 1");
    times = uniform_grid(start, end, steps);
  } else {
    throw ConfigError("'time' must be an object {start, end, steps} or a list");
  }
  if (times.empty()) throw ConfigError("time grid is empty");
  for (const double x : times) {
    if (!std::isfinite(x)) throw ConfigError("time values must be finite");
  }
  return times;
}

}  // namespace

ModelKind parse_model(const std::string& name) {
  if (name == "sutherland") return ModelKind::sutherland;
  if (name == "rsvd") return ModelKind::rsvd;
  throw ConfigError("unknown model '" + name + "' (expected sutherland or rsvd)");
}

SolverKind parse_solver(const std::string& name) {
  if (name == "algebraic") return SolverKind::algebraic;
  if (name == "ode") return SolverKind::ode;
  if (name == "both") return SolverKind::both;
  throw ConfigError("unknown solver '" + name + "' (expected algebraic, ode or both)");
}

std::string to_string(ModelKind kind) { return kind == ModelKind::sutherland ? "sutherland" : "rsvd"; }

std::string to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::algebraic: return "algebraic";
    case SolverKind::ode: return "ode";
    case SolverKind::both: return "both";
  }
  return "?";
}

std::vector<double> uniform_grid(double start, double end, int steps) {
  std::vector<double> out(steps + 1);
  for (int k = 0; k <= steps; ++k) out[k] = start + (end - start) * k / steps;
  out.back() = end;
  return out;
}

RunConfig parse_config(const json& doc, std::ostream& log) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  RunConfig cfg;

  if (!doc.contains("model") || !doc.at("model").is_string()) throw ConfigError("'model' must be a string");
  cfg.model = parse_model(doc.at("model").get<std::string>());

  if (doc.contains("solver")) {
    if (!doc.at("solver").is_string()) throw ConfigError("'solver' must be a string");
    cfg.solver = parse_solver(doc.at("solver").get<std::string>());
  }
  if (doc.contains("seed")) {
    const json& seed = doc.at("seed");
    if (!seed.is_number_integer() || (!seed.is_number_unsigned() && seed.get<std::int64_t>() < 0)) {
      throw ConfigError("'seed' must be a non-negative integer");
    }
    cfg.seed = doc.at("seed").get<std::uint64_t>();
  }
  if (doc.contains("output")) {
    if (!doc.at("output").is_string()) throw ConfigError("'output' must be a string");
    cfg.output = doc.at("output").get<std::string>();
  }
  if (doc.contains("precision")) {
    if (!doc.at("precision").is_number_integer()) throw ConfigError("'precision' must be an integer");
    cfg.precision = doc.at("precision").get<int>();
    if (cfg.precision < 1 || cfg.precision > 17) throw ConfigError("'precision' must lie in [1, 17]");
  }

  std::optional<int> declared_n;
  if (doc.contains("n")) {
    if (!doc.at("n").is_number_integer()) throw ConfigError("'n' must be an integer");
    declared_n = doc.at("n").get<int>();
  }

  const bool has_params = doc.contains("params");
  const bool has_couplings = doc.contains("couplings");
  if (has_params == has_couplings) throw ConfigError("give exactly one of 'params' or 'couplings'");
  if (has_params) {
    const json& p = doc.at("params");
    if (!p.is_object()) throw ConfigError("'params' must be an object");
    cfg.params.mu = number(p, "mu");
    cfg.params.nu = number(p, "nu");
    cfg.params.kappa = number(p, "kappa");
    if (p.contains("n")) {
      if (!p.at("n").is_number_integer()) throw ConfigError("'params.n' must be an integer");
      const int n = p.at("n").get<int>();
      if (declared_n && *declared_n != n) throw ConfigError("'n' and 'params.n' disagree");
      declared_n = n;
    }
  } else {
    const json& c = doc.at("couplings");
    if (!c.is_object()) throw ConfigError("'couplings' must be an object");
    cfg.couplings = SutherlandCouplings{number(c, "g_sq"), number(c, "g1_sq"), number(c, "g2_sq")};
  }

  if (doc.contains("initial")) {
    const json& init = doc.at("initial");
    if (!init.is_object()) throw ConfigError("'initial' must be an object");
    if (cfg.model == ModelKind::sutherland) {
      PhasePointS pt{vector_of(init, "q"), vector_of(init, "p")};
      if (pt.q.size() != pt.p.size()) throw ConfigError("'initial.q' and 'initial.p' lengths differ");
      cfg.initial = pt;
    } else {
      PhasePointR pt{vector_of(init, "lambda"), vector_of(init, "theta")};
      if (pt.lambda.size() != pt.theta.size()) throw ConfigError("'initial.lambda' and 'initial.theta' lengths differ");
      cfg.initial = pt;
    }
    const int n = std::visit([](const auto& pt) { return pt.n(); }, cfg.initial);
    if (declared_n && *declared_n != n) {
      throw ConfigError("n = " + std::to_string(*declared_n) + " does not match the initial point (n = " +
                        std::to_string(n) + ")");
    }
    declared_n = n;
  } else {
    if (!declared_n) throw ConfigError("without 'initial' the particle number 'n' is required");
    if (*declared_n < 1) throw ConfigError("'n' must be at least 1");
    cfg.initial = sample_point(cfg.seed, *declared_n, cfg.model);
    log << "initial point drawn from seed " << cfg.seed << "\n";
  }
  cfg.params.n = *declared_n;

  try {
    if (cfg.couplings) {
      cfg.params = model::params_from_couplings(*cfg.couplings, cfg.params.n);
      log << "couplings (g^2, g1^2, g2^2) = (" << cfg.couplings->g_sq << ", " << cfg.couplings->g1_sq << ", "
          << cfg.couplings->g2_sq << ") -> (mu, nu, kappa) = (" << cfg.params.mu << ", " << cfg.params.nu << ", "
          << cfg.params.kappa << ")\n";
    } else {
      model::validate(cfg.params);
      const SutherlandCouplings c = model::couplings_from_params(cfg.params);
      log << "(mu, nu, kappa) = (" << cfg.params.mu << ", " << cfg.params.nu << ", " << cfg.params.kappa
          << ") -> couplings (g^2, g1^2, g2^2) = (" << c.g_sq << ", " << c.g1_sq << ", " << c.g2_sq << ")\n";
    }
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }

  if (doc.contains("time")) cfg.times = parse_times(doc);
  return cfg;
}

nlohmann::json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
  }
  return doc;
}

RunConfig load_config(const std::filesystem::path& path, std::ostream& log) { return parse_config(load_json(path), log); }

nlohmann::json to_json(const ModelParams& params) {
  return {{"mu", params.mu}, {"nu", params.nu}, {"kappa", params.kappa}, {"n", params.n}};
}

namespace {
std::vector<double> as_vec(const RVector& v) { return {v.data(), v.data() + v.size()}; }
}  // namespace

nlohmann::json to_json(const PhasePointS& pt) { return {{"q", as_vec(pt.q)}, {"p", as_vec(pt.p)}}; }
nlohmann::json to_json(const PhasePointR& pt) { return {{"lambda", as_vec(pt.lambda)}, {"theta", as_vec(pt.theta)}}; }

}  // namespace bcdual::cli
