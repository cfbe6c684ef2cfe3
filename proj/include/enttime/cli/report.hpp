#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "enttime/timescale.hpp"

namespace enttime::cli {

struct RunReport {
  std::string tool = "enttime";
  std::string version;
  nlohmann::json spec;  // resolved model spec
  TimescaleReport timescale;
  std::vector<CurvaturePrediction> predictions;
  std::string rate_name;  // "lambda", "J" or empty for custom models
  double natural_rate = 1.0;
  double wall_time_s = 0.0;
  std::string generated_at;  // ISO-8601 UTC
};

nlohmann::json complex_matrix_to_json(const ComplexMatrix& m);
ComplexMatrix complex_matrix_from_json(const nlohmann::json& j);

// hashable = true drops wall_time_s and generated_at so identical runs
// serialize to identical bytes.
nlohmann::json to_json(const RunReport& report, bool hashable = false);
RunReport run_report_from_json(const nlohmann::json& j);

// Writes via a temporary sibling file and a rename, so readers never see a
// partial file.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace enttime::cli
