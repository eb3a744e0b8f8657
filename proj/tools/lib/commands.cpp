#include "commands.hpp"

#include <fstream>
#include <ostream>

#include "bcdual/duality.hpp"
#include "bcdual/errors.hpp"
#include "bcdual/rsvd.hpp"
#include "bcdual/sutherland.hpp"
#include "csv.hpp"

namespace bcdual::cli {

namespace {

using nlohmann::json;

json diagnostics_json(const std::vector<double>& times, const std::vector<FlowDiagnostics>& diags) {
  json rows = json::array();
  json worst = {{"spectral_drift", 0.0}, {"frame_residual", 0.0}, {"imag_residual", 0.0}, {"gauge_residual", 0.0}};
  int flagged = 0;
  for (std::size_t k = 0; k < diags.size(); ++k) {
    const auto& d = diags[k];
    rows.push_back({{"t", times[k]},
                    {"spectral_drift", d.spectral_drift},
                    {"frame_residual", d.frame_residual},
                    {"imag_residual", d.imag_residual},
                    {"gauge_residual", d.gauge_residual},
                    {"flagged", d.flagged}});
    worst["spectral_drift"] = std::max(worst["spectral_drift"].get<double>(), d.spectral_drift);
    worst["frame_residual"] = std::max(worst["frame_residual"].get<double>(), d.frame_residual);
    worst["imag_residual"] = std::max(worst["imag_residual"].get<double>(), d.imag_residual);
    worst["gauge_residual"] = std::max(worst["gauge_residual"].get<double>(), d.gauge_residual);
    flagged += d.flagged ? 1 : 0;
  }
  return {{"max", worst}, {"flagged_samples", flagged}, {"samples", rows}};
}

template <typename Point>
double max_deviation(const Trajectory<Point>& a, const Trajectory<Point>& b) {
  double worst = 0.0;
  for (std::size_t k = 0; k < a.states.size(); ++k) {
    worst = std::max(worst, duality::sup_distance(a.states[k], b.states[k]));
  }
  return worst;
}

void write_json(const std::filesystem::path& path, const json& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << doc.dump(2) << '\n';
}

struct RunOutput {
  std::optional<Table> algebraic;
  std::optional<Table> ode;
  json diagnostics;
  std::optional<double> agreement;
};

template <typename Point, typename AlgFn, typename OdeFn>
RunOutput run_solvers(const RunConfig& cfg, const Point& pt, AlgFn alg, OdeFn ode) {
  RunOutput out;
  std::optional<Trajectory<Point>> a, o;
  if (cfg.solver != SolverKind::ode) {
    try {
      a = alg(cfg.params, pt, cfg.times);
    } catch (const Error& e) {
      throw e.with_context("(algebraic solver)");
    }
    out.algebraic = to_table(*a);
  }
  if (cfg.solver != SolverKind::algebraic) {
    try {
      o = ode(cfg.params, pt, cfg.times);
    } catch (const Error& e) {
      throw e.with_context("(ODE solver)");
    }
    out.ode = to_table(*o);
  }
  out.diagnostics = {{"model", to_string(cfg.model)},
                     {"solver", to_string(cfg.solver)},
                     {"params", to_json(cfg.params)},
                     {"initial", to_json(pt)}};
  if (a) out.diagnostics["algebraic"] = diagnostics_json(a->times, a->diagnostics);
  if (a && o) {
    out.agreement = max_deviation(*a, *o);
    out.diagnostics["agreement_max_deviation"] = *out.agreement;
  }
  return out;
}

}  // namespace

Direction parse_direction(const std::string& name) {
  if (name == "s2r") return Direction::s2r;
  if (name == "r2s") return Direction::r2s;
  if (name == "round-trip") return Direction::round_trip;
  throw ConfigError("unknown direction '" + name + "' (expected s2r, r2s or round-trip)");
}

std::filesystem::path with_suffix(const std::filesystem::path& path, const std::string& suffix) {
  std::filesystem::path out = path;
  out.replace_extension();
  out += suffix;
  return out;
}

int cmd_simulate(const std::filesystem::path& config, const Overrides& overrides, Streams io) {
  RunConfig cfg;
  try {
    nlohmann::json doc = load_json(config);
    if (overrides.seed) doc["seed"] = *overrides.seed;
    cfg = parse_config(doc, io.err);
    if (overrides.out) cfg.output = *overrides.out;
    if (overrides.solver) cfg.solver = *overrides.solver;
    if (overrides.precision) {
      if (*overrides.precision < 1 || *overrides.precision > 17) throw ConfigError("precision must lie in [1, 17]");
      cfg.precision = *overrides.precision;
    }
    if (cfg.times.empty()) throw ConfigError("simulate needs a 'time' section");
  } catch (const ConfigError& e) {
    io.err << "config error: " << e.what() << '\n';
    return kConfigError;
  }

  RunOutput run;
  try {
    if (cfg.model == ModelKind::sutherland) {
      run = run_solvers(
          cfg, std::get<PhasePointS>(cfg.initial),
          [](const auto& p, const auto& pt, const auto& ts) { return sutherland::solve_algebraic(p, pt, ts); },
          [](const auto& p, const auto& pt, const auto& ts) { return sutherland::solve_ode(p, pt, ts); });
    } else {
      run = run_solvers(
          cfg, std::get<PhasePointR>(cfg.initial),
          [](const auto& p, const auto& pt, const auto& ts) { return rsvd::solve_algebraic(p, pt, ts); },
          [](const auto& p, const auto& pt, const auto& ts) { return rsvd::solve_ode(p, pt, ts); });
    }
  } catch (const Error& e) {
    io.err << "simulate failed: " << e.what() << '\n';
    return kNumericalFailure;
  }

  try {
    if (cfg.solver == SolverKind::both) {
      const auto alg_path = with_suffix(cfg.output, ".algebraic.csv");
      const auto ode_path = with_suffix(cfg.output, ".ode.csv");
      write_csv(alg_path, *run.algebraic, cfg.precision);
      write_csv(ode_path, *run.ode, cfg.precision);
      io.out << "wrote " << alg_path.string() << " and " << ode_path.string() << '\n';
      io.out << "agreement: max deviation " << format_number(*run.agreement, 6) << '\n';
    } else {
      write_csv(cfg.output, run.algebraic ? *run.algebraic : *run.ode, cfg.precision);
      io.out << "wrote " << cfg.output.string() << '\n';
    }
    write_json(with_suffix(cfg.output, ".diagnostics.json"), run.diagnostics);
  } catch (const std::runtime_error& e) {
    io.err << "output error: " << e.what() << '\n';
    return kConfigError;
  }
  return kOk;
}

int cmd_dualize(const std::filesystem::path& config, Direction direction, Streams io) {
  RunConfig cfg;
  try {
    cfg = load_config(config, io.err);
    const bool s_point = cfg.model == ModelKind::sutherland;
    if (direction == Direction::s2r && !s_point) throw ConfigError("s2r needs a Sutherland point (model sutherland)");
    if (direction == Direction::r2s && s_point) throw ConfigError("r2s needs an RSvD point (model rsvd)");
  } catch (const ConfigError& e) {
    io.err << "config error: " << e.what() << '\n';
    return kConfigError;
  }

  const auto residuals_json = [](const duality::DualityResiduals& r) {
    return json{{"gauge", r.gauge}, {"imag", r.imag}, {"frame", r.frame}};
  };
  json doc = {{"params", to_json(cfg.params)}};
  try {
    if (direction == Direction::s2r) {
      const auto& pt = std::get<PhasePointS>(cfg.initial);
      const auto res = duality::s_to_r_detailed(cfg.params, pt);
      doc["direction"] = "s2r";
      doc["input"] = to_json(pt);
      doc["output"] = to_json(res.point);
      doc["residuals"] = residuals_json(res.residuals);
    } else if (direction == Direction::r2s) {
      const auto& pt = std::get<PhasePointR>(cfg.initial);
      const auto res = duality::r_to_s_detailed(cfg.params, pt);
      doc["direction"] = "r2s";
      doc["input"] = to_json(pt);
      doc["output"] = to_json(res.point);
      doc["residuals"] = residuals_json(res.residuals);
    } else {
      const duality::DualPair pair = cfg.model == ModelKind::sutherland
                                         ? duality::round_trip(cfg.params, std::get<PhasePointS>(cfg.initial))
                                         : duality::reverse_round_trip(cfg.params, std::get<PhasePointR>(cfg.initial));
      doc["direction"] = "round-trip";
      doc["sutherland"] = to_json(pair.s_point);
      doc["rsvd"] = to_json(pair.r_point);
      doc["residuals"] = {{"round_trip", pair.residuals.round_trip},
                          {"forward", residuals_json(pair.residuals.forward)},
                          {"inverse", residuals_json(pair.residuals.inverse)}};
    }
  } catch (const Error& e) {
    io.err << "dualize failed: " << e.what() << '\n';
    return kNumericalFailure;
  }
  io.out << doc.dump(2) << '\n';
  return kOk;
}

int cmd_spectrum(const std::filesystem::path& config, Streams io) {
  RunConfig cfg;
  try {
    cfg = load_config(config, io.err);
  } catch (const ConfigError& e) {
    io.err << "config error: " << e.what() << '\n';
    return kConfigError;
  }
  const auto as_vec = [](const RVector& v) { return std::vector<double>(v.data(), v.data() + v.size()); };
  json doc = {{"model", to_string(cfg.model)}, {"params", to_json(cfg.params)}};
  try {
    if (cfg.model == ModelKind::sutherland) {
      const auto& pt = std::get<PhasePointS>(cfg.initial);
      model::require_point(cfg.params, pt);
      doc["point"] = to_json(pt);
      doc["lax_eigenvalues"] = as_vec(sutherland::lax_spectrum_direct(cfg.params, pt));
      doc["lambda_hat"] = as_vec(sutherland::spectral_data(cfg.params, pt).lambda_hat);
    } else {
      const auto& pt = std::get<PhasePointR>(cfg.initial);
      model::require_point(cfg.params, pt);
      const RVector ev = matkit::hermitian_eig_desc(rsvd::lax_bc_matrix(cfg.params, pt)).values;
      doc["point"] = to_json(pt);
      doc["abc_eigenvalues"] = as_vec(ev);
      doc["half_log_eigenvalues"] = as_vec(0.5 * ev.array().log().matrix());
    }
  } catch (const Error& e) {
    io.err << "spectrum failed: " << e.what() << '\n';
    return kNumericalFailure;
  }
  io.out << doc.dump(2) << '\n';
  return kOk;
}

int cmd_verify(const VerifyOptions& options, const std::optional<std::filesystem::path>& out_path, Streams io) {
  VerifyReport report;
  try {
    report = run_verify(options);
  } catch (const ConfigError& e) {
    io.err << "config error: " << e.what() << '\n';
    return kConfigError;
  }
  const std::string text = to_json(report).dump(2) + "\n";
  if (out_path) {
    std::ofstream out(*out_path, std::ios::binary);
    if (!out) {
      io.err << "cannot open " << out_path->string() << " for writing\n";
      return kConfigError;
    }
    out << text;
  } else {
    io.out << text;
  }
  for (const auto& c : report.checks) {
    if (!c.pass) {
      io.err << "FAIL " << c.name << ": worst " << c.worst << (c.comparison == Comparison::at_most ? " > " : " <= ")
             << c.bound << (c.failure.empty() ? "" : " (" + c.failure + ")") << '\n';
    }
  }
  return report.pass ? kOk : kVerifyFailed;
}

}  // namespace bcdual::cli
