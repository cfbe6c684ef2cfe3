#include "enttime/cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "enttime/fit.hpp"
#include "enttime/timescale.hpp"

namespace enttime::cli {
namespace {

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

std::vector<int> sorted_orders(const std::vector<int>& alphas, int minimum) {
  if (alphas.empty()) throw UsageError("--alphas: at least one order is required");
  for (const int a : alphas) {
    if (a < minimum) {
      throw UsageError("--alphas: order " + std::to_string(a) + " is below " +
                       std::to_string(minimum));
    }
  }
  const std::set<int> unique(alphas.begin(), alphas.end());
  return {unique.begin(), unique.end()};
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

std::string fmt_short(double v, int precision = 6) {
  std::ostringstream os;
  os << std::setprecision(precision) << v;
  return os.str();
}

}  // namespace

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const SchemaError*>(&e) || dynamic_cast<const UsageError*>(&e)) {
    return kExitSchema;
  }
  if (dynamic_cast<const NumericalError*>(&e)) return kExitNumeric;
  if (dynamic_cast<const ModelError*>(&e) || dynamic_cast<const StateError*>(&e) ||
      dynamic_cast<const DimensionError*>(&e) || dynamic_cast<const DomainError*>(&e)) {
    return kExitModel;
  }
  return kExitFailed;
}

RunReport cmd_timescale(const TimescaleOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<int> alphas = sorted_orders(options.alphas, 2);
  const ResolvedModel model = load_model_spec(options.spec_path);
  RunReport report;
  report.version = ENTTIME_VERSION;
  report.spec = model.resolved;
  report.timescale = entanglement_timescale(model.model.hamiltonian, model.model.state);
  for (const int a : alphas) report.predictions.push_back(predicted_curvature(report.timescale, a));
  report.rate_name = model.rate_name;
  report.natural_rate = model.natural_rate;
  report.generated_at = utc_timestamp();
  report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (options.output_path) {
    write_file_atomic(*options.output_path, to_json(report, options.hashable).dump(2) + "\n");
  }
  return report;
}

std::string cmd_evolve(const EvolveOptions& options) {
  const std::vector<int> alphas = sorted_orders(options.alphas, 1);
  if (options.n_points < 2) throw UsageError("--points must be >= 2");
  if (options.t_max && !(*options.t_max > 0.0 && std::isfinite(*options.t_max))) {
    throw UsageError("--t-max must be positive");
  }
  const ResolvedModel model = load_model_spec(options.spec_path);
  const auto& h = model.model.hamiltonian;
  if (options.spectrum && std::min(h.dim_a(), h.dim_b()) != 2) {
    throw UsageError("--spectrum needs a qubit subsystem (min(dim_a, dim_b) = 2)");
  }
  const double t_max = options.t_max.value_or(3.0 / model.natural_rate);
  std::vector<double> grid(static_cast<std::size_t>(options.n_points));
  for (std::size_t k = 0; k < grid.size(); ++k) {
    grid[k] = t_max * static_cast<double>(k) / static_cast<double>(grid.size() - 1);
  }
  const auto series = entropy_series(h, model.model.state, alphas, grid, options.spectrum);
  const double unit = options.ln2_units ? std::numbers::ln2 : 1.0;

  std::ostringstream csv;
  csv << "t,alpha,entropy" << (options.spectrum ? ",p1,p2" : "") << '\n';
  for (const auto& s : series) {
    for (std::size_t k = 0; k < s.times.size(); ++k) {
      csv << fmt(s.times[k]) << ',' << s.alpha << ',' << fmt(s.values[k] / unit + 0.0);
      if (options.spectrum) csv << ',' << fmt(s.spectra[k][0]) << ',' << fmt(s.spectra[k][1]);
      csv << '\n';
    }
  }
  std::string text = csv.str();
  if (options.output_path) write_file_atomic(*options.output_path, text);
  return text;
}

bool VerifyResult::passed() const {
  for (const auto& c : curvature) {
    if (!c.passed) return false;
  }
  return !slope || slope->passed;
}

VerifyResult verify_model(const ResolvedModel& model, const std::vector<int>& requested,
                          double tolerance_rel) {
  if (!(tolerance_rel > 0.0)) throw UsageError("--tol must be positive");
  const std::vector<int> alphas = sorted_orders(requested, 1);
  const auto& h = model.model.hamiltonian;
  const auto& s = model.model.state;
  const double rate = model.natural_rate;

  VerifyResult result;
  result.timescale = entanglement_timescale(h, s);
  result.rate_name = model.rate_name;
  result.natural_rate = rate;
  result.tolerance_rel = tolerance_rel;
  const EntropyEvolution evolution(h, s);
  const double step = characteristic_time(result.timescale) / 50.0;

  for (const int a : alphas) {
    const double dt = 1e-4 / rate;
    const double slope =
        (evolution.entropy(a, dt) - evolution.entropy(a, -dt)) / (2.0 * dt);
    result.first_derivatives.push_back({a, slope / rate});
    if (a == kVonNeumann) continue;
    CurvatureCheck check;
    check.alpha = a;
    check.predicted = predicted_curvature(result.timescale, a).curvature;
    check.measured = stencil_curvature(evolution, a, step);
    if (!std::isfinite(check.measured)) {
      throw NumericalError("curvature stencil for alpha=" + std::to_string(a) + " with step " +
                           fmt_short(step) + " produced a non-finite value");
    }
    if (result.timescale.degenerate) {
      check.absolute = true;
      check.error = std::abs(check.measured) / result.timescale.scale;
    } else {
      check.error = std::abs(check.measured - check.predicted) / std::abs(check.predicted);
    }
    check.passed = check.error <= tolerance_rel;
    result.curvature.push_back(check);
  }

  if (result.timescale.degenerate) {
    std::vector<double> log_t;
    std::vector<double> log_s;
    constexpr int kPoints = 21;
    for (int k = 0; k < kPoints; ++k) {
      const double tau = std::pow(10.0, -3.0 + 2.0 * k / (kPoints - 1));
      const double s2 = evolution.entropy(2, tau / rate);
      if (!(s2 > 0.0) || !std::isfinite(s2)) {
        throw NumericalError("sixth-order slope fit: S_2 = " + fmt_short(s2) + " at rate*t = " +
                             fmt_short(tau) + " is not positive; cannot take its logarithm");
      }
      log_t.push_back(std::log(tau));
      log_s.push_back(std::log(s2));
    }
    const LineFit fit = fit_line(log_t, log_s);
    SlopeCheck check;
    check.slope = fit.slope;
    check.intercept = fit.intercept;
    check.r_squared = fit.r_squared;
    check.passed = std::abs(fit.slope - check.expected) <= check.tolerance;
    result.slope = check;
  }

  if (alphas.front() == kVonNeumann) {
    const std::vector<double> taus{1e-2, 1e-3, 1e-4, 1e-5};
    std::vector<double> times;
    for (const double tau : taus) times.push_back(tau / rate);
    DivergenceCheck check;
    check.samples = von_neumann_curvature_probe(h, s, times);
    std::vector<double> x;
    std::vector<double> y;
    for (std::size_t k = 0; k < taus.size(); ++k) {
      x.push_back(std::log(taus[k]));
      y.push_back(check.samples[k].curvature);
    }
    const LineFit fit = fit_line(x, y);
    check.intercept = fit.intercept;
    check.log_coefficient = fit.slope;
    check.r_squared = fit.r_squared;
    if (!result.timescale.degenerate) {
      check.expected_log_coefficient = -4.0 * result.timescale.t_ent_inv_sq;
    }
    result.divergence = check;
  }
  return result;
}

VerifyResult cmd_verify(const VerifyOptions& options) {
  const ResolvedModel model = load_model_spec(options.spec_path);
  VerifyResult result = verify_model(model, options.alphas, options.tolerance_rel);
  if (options.output_path) {
    write_file_atomic(*options.output_path, to_json(result).dump(2) + "\n");
  }
  return result;
}

std::string format_verify_table(const VerifyResult& r) {
  std::ostringstream os;
  const auto& ts = r.timescale;
  os << "T_ent^-2 = " << fmt_short(ts.t_ent_inv_sq, 10);
  if (ts.t_ent) {
    os << "   T_ent = " << fmt_short(*ts.t_ent, 10);
    if (!r.rate_name.empty()) {
      os << "   (" << r.rate_name << " * T_ent = " << fmt_short(*ts.t_ent * r.natural_rate, 10)
         << ")";
    }
  } else {
    os << "   DEGENERATE (T_ent^-1 = 0)";
  }
  os << "\n\n";
  if (!r.curvature.empty()) {
    os << std::left << std::setw(7) << "alpha" << std::setw(18) << "predicted" << std::setw(18)
       << "measured" << std::setw(14) << (ts.degenerate ? "|meas|/scale" : "rel_error")
       << "result\n";
    for (const auto& c : r.curvature) {
      os << std::left << std::setw(7) << c.alpha << std::setw(18) << fmt_short(c.predicted, 10)
         << std::setw(18) << fmt_short(c.measured, 10) << std::setw(14) << fmt_short(c.error, 4)
         << (c.passed ? "PASS" : "FAIL") << '\n';
    }
    os << "tolerance " << fmt_short(r.tolerance_rel) << "\n";
  }
  if (r.slope) {
    os << "\nsixth-order onset: log-log slope of S_2 over rate*t in [1e-3, 1e-1] = "
       << fmt_short(r.slope->slope, 6) << " (expected " << r.slope->expected << " +/- "
       << r.slope->tolerance << ", R^2 " << fmt_short(r.slope->r_squared, 6) << ") "
       << (r.slope->passed ? "PASS" : "FAIL") << '\n';
  }
  if (r.divergence) {
    const auto& d = *r.divergence;
    os << "\nvon Neumann curvature probe (alpha = 1):\n";
    for (const auto& sample : d.samples) {
      os << "  rate*t = " << std::setw(10) << fmt_short(sample.t * r.natural_rate, 3)
         << "  d2S/dt2 = " << fmt_short(sample.curvature, 10) << '\n';
    }
    os << "  fit a + b ln(rate*t): a = " << fmt_short(d.intercept, 8)
       << ", b = " << fmt_short(d.log_coefficient, 8) << ", R^2 = " << fmt_short(d.r_squared, 8);
    if (d.expected_log_coefficient) {
      os << " (expected b = -4 T_ent^-2 = " << fmt_short(*d.expected_log_coefficient, 8) << ")";
    }
    os << '\n';
  }
  os << "\nfirst derivative dS/d(rate*t) at t = 0:";
  for (const auto& d : r.first_derivatives) {
    os << "  alpha=" << d.alpha << ": " << fmt_short(d.value, 3);
  }
  os << "\n\n" << (r.passed() ? "ALL PASS" : "FAILED") << '\n';
  return os.str();
}

nlohmann::json to_json(const VerifyResult& r) {
  using nlohmann::json;
  json rows = json::array();
  for (const auto& c : r.curvature) {
    rows.push_back({{"alpha", c.alpha},
                    {"predicted", c.predicted},
                    {"measured", c.measured},
                    {"error", c.error},
                    {"absolute", c.absolute},
                    {"passed", c.passed}});
  }
  json derivs = json::array();
  for (const auto& d : r.first_derivatives) derivs.push_back({{"alpha", d.alpha}, {"value", d.value}});
  json out = {{"t_ent_inv_sq", r.timescale.t_ent_inv_sq},
              {"degenerate", r.timescale.degenerate},
              {"t_ent", r.timescale.t_ent ? json(*r.timescale.t_ent) : json(nullptr)},
              {"rate_name", r.rate_name},
              {"natural_rate", r.natural_rate},
              {"tolerance_rel", r.tolerance_rel},
              {"curvature", rows},
              {"first_derivatives", derivs},
              {"passed", r.passed()}};
  if (r.slope) {
    out["sixth_order_slope"] = {{"slope", r.slope->slope},
                                {"intercept", r.slope->intercept},
                                {"r_squared", r.slope->r_squared},
                                {"expected", r.slope->expected},
                                {"tolerance", r.slope->tolerance},
                                {"passed", r.slope->passed}};
  }
  if (r.divergence) {
    json samples = json::array();
    for (const auto& s : r.divergence->samples) {
      samples.push_back({{"t", s.t}, {"curvature", s.curvature}});
    }
    out["von_neumann_probe"] = {
        {"samples", samples},
        {"intercept", r.divergence->intercept},
        {"log_coefficient", r.divergence->log_coefficient},
        {"r_squared", r.divergence->r_squared},
        {"expected_log_coefficient", r.divergence->expected_log_coefficient
                                         ? json(*r.divergence->expected_log_coefficient)
                                         : json(nullptr)}};
  }
  return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entanglement timescale of bipartite product-state quenches"};
  app.set_version_flag("--version", std::string(ENTTIME_VERSION));
  app.require_subcommand(1);

  std::string spec_path;
  std::vector<int> alphas;
  std::string output_path;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--spec", spec_path, "Model spec JSON file")->required();
    sub->add_option("--alphas", alphas, "Entropy orders, comma separated")->delimiter(',');
    sub->add_option("--out", output_path, "Output file (written atomically)");
  };

  TimescaleOptions ts_opts;
  auto* ts_cmd = app.add_subcommand("timescale", "Compute T_ent and predicted curvatures");
  add_common(ts_cmd);
  ts_cmd->add_flag("--hashable", ts_opts.hashable, "Omit wall time and timestamp");

  EvolveOptions ev_opts;
  double t_max = 0.0;
  auto* ev_cmd = app.add_subcommand("evolve", "Entropy time series as CSV");
  add_common(ev_cmd);
  auto* t_max_opt = ev_cmd->add_option("--t-max", t_max, "Final time (default 3 / rate)");
  ev_cmd->add_option("--points", ev_opts.n_points, "Number of grid points");
  ev_cmd->add_flag("--ln2-units", ev_opts.ln2_units, "Report entropies in units of ln 2");
  ev_cmd->add_flag("--spectrum", ev_opts.spectrum, "Append p1,p2 for a qubit subsystem");

  VerifyOptions vf_opts;
  auto* vf_cmd = app.add_subcommand("verify", "Check predicted curvatures against evolution");
  add_common(vf_cmd);
  vf_cmd->add_option("--tol", vf_opts.tolerance_rel, "Relative tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    out << ENTTIME_VERSION << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "enttime: " << e.what() << '\n';
    return kExitSchema;
  }

  std::optional<std::string> out_path;
  if (!output_path.empty()) out_path = output_path;
  try {
    if (*ts_cmd) {
      ts_opts.spec_path = spec_path;
      if (!alphas.empty()) ts_opts.alphas = alphas;
      ts_opts.output_path = out_path;
      const RunReport report = cmd_timescale(ts_opts);
      if (report.timescale.degenerate) {
        err << "enttime: DEGENERATE timescale: T_ent^-2 = 0 to within tolerance; entanglement "
               "onset is slower than quadratic\n";
      }
      if (!out_path) out << to_json(report, ts_opts.hashable).dump(2) << '\n';
      return kExitOk;
    }
    if (*ev_cmd) {
      ev_opts.spec_path = spec_path;
      if (!alphas.empty()) ev_opts.alphas = alphas;
      if (t_max_opt->count() > 0) ev_opts.t_max = t_max;
      ev_opts.output_path = out_path;
      const std::string csv = cmd_evolve(ev_opts);
      if (!out_path) out << csv;
      return kExitOk;
    }
    vf_opts.spec_path = spec_path;
    if (!alphas.empty()) vf_opts.alphas = alphas;
    vf_opts.output_path = out_path;
    const VerifyResult result = cmd_verify(vf_opts);
    out << format_verify_table(result);
    return result.passed() ? kExitOk : kExitFailed;
  } catch (const std::exception& e) {
    err << "enttime: error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

}  // namespace enttime::cli
