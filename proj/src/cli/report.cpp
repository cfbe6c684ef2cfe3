#include "enttime/cli/report.hpp"

#include <filesystem>
#include <fstream>
#include <system_error>

#include "enttime/errors.hpp"

namespace enttime::cli {

using nlohmann::json;

json complex_matrix_to_json(const ComplexMatrix& m) {
  json re = json::array();
  json im = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json re_row = json::array();
    json im_row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      re_row.push_back(m(i, j).real());
      im_row.push_back(m(i, j).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  return {{"re", re}, {"im", im}};
}

ComplexMatrix complex_matrix_from_json(const json& j) {
  const json& re = j.at("re");
  const json& im = j.at("im");
  const std::size_t rows = re.size();
  const std::size_t cols = rows == 0 ? 0 : re.at(0).size();
  std::vector<Complex> entries;
  entries.reserve(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      entries.emplace_back(re.at(r).at(c).get<double>(), im.at(r).at(c).get<double>());
    }
  }
  return ComplexMatrix(rows, cols, entries);
}

json to_json(const RunReport& report, bool hashable) {
  const TimescaleReport& ts = report.timescale;
  json predictions = json::array();
  for (const auto& p : report.predictions) {
    predictions.push_back(
        {{"alpha", p.alpha}, {"coefficient", p.coefficient}, {"curvature", p.curvature}});
  }
  json timescale = {
      {"t_ent_inv_sq", ts.t_ent_inv_sq},
      {"raw_inv_sq", ts.raw_inv_sq},
      {"imag_residual", ts.imag_residual},
      {"scale", ts.scale},
      {"degenerate", ts.degenerate},
      {"t_ent", ts.t_ent ? json(*ts.t_ent) : json(nullptr)},
      {"cov_a", complex_matrix_to_json(ts.cov_a)},
      {"cov_b", complex_matrix_to_json(ts.cov_b)},
  };
  json natural = {{"rate_name", report.rate_name}, {"rate", report.natural_rate}};
  natural["t_ent_times_rate"] = ts.t_ent ? json(*ts.t_ent * report.natural_rate) : json(nullptr);
  json out = {
      {"tool", report.tool},
      {"version", report.version},
      {"degenerate", ts.degenerate},
      {"spec", report.spec},
      {"timescale", timescale},
      {"natural_units", natural},
      {"predictions", predictions},
  };
  if (!hashable) {
    out["wall_time_s"] = report.wall_time_s;
    out["generated_at"] = report.generated_at;
  }
  return out;
}

RunReport run_report_from_json(const json& j) {
  RunReport report;
  report.tool = j.at("tool").get<std::string>();
  report.version = j.at("version").get<std::string>();
  report.spec = j.at("spec");
  const json& ts = j.at("timescale");
  report.timescale.t_ent_inv_sq = ts.at("t_ent_inv_sq").get<double>();
  report.timescale.raw_inv_sq = ts.at("raw_inv_sq").get<double>();
  report.timescale.imag_residual = ts.at("imag_residual").get<double>();
  report.timescale.scale = ts.at("scale").get<double>();
  report.timescale.degenerate = ts.at("degenerate").get<bool>();
  if (!ts.at("t_ent").is_null()) report.timescale.t_ent = ts.at("t_ent").get<double>();
  report.timescale.cov_a = complex_matrix_from_json(ts.at("cov_a"));
  report.timescale.cov_b = complex_matrix_from_json(ts.at("cov_b"));
  for (const auto& p : j.at("predictions")) {
    report.predictions.push_back({p.at("alpha").get<int>(), p.at("coefficient").get<double>(),
                                  p.at("curvature").get<double>()});
  }
  const json& natural = j.at("natural_units");
  report.rate_name = natural.at("rate_name").get<std::string>();
  report.natural_rate = natural.at("rate").get<double>();
  if (j.contains("wall_time_s")) report.wall_time_s = j["wall_time_s"].get<double>();
  if (j.contains("generated_at")) report.generated_at = j["generated_at"].get<std::string>();
  return report;
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + tmp.string() + "' for writing");
    out << contents;
    out.flush();
    if (!out) throw Error("failed writing '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error("cannot move output into place at '" + path + "'");
  }
}

}  // namespace enttime::cli
