#pragma once

// Model-spec JSON documents. Every level rejects unknown fields. Complex
// numbers are written as a bare number or a [re, im] pair; matrices and
// vectors as {"re": ..., "im": ...} with "im" optional. Rates are angular
// (rad per time unit); a "*_hz" field is multiplied by 2 pi instead.

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "enttime/models.hpp"

namespace enttime::cli {

struct ResolvedModel {
  std::string kind;  // "jcm", "bose_hubbard" or "custom"
  BipartiteModel model;
  // Rate that defines dimensionless time (lambda for jcm, J for
  // bose_hubbard, 1 / characteristic time for custom models).
  double natural_rate = 1.0;
  std::string rate_name;
  nlohmann::json resolved;  // echo of the spec with defaults filled in
  std::optional<JcmSpec> jcm;
};

ResolvedModel parse_model_spec(const nlohmann::json& doc);

// Reads and parses a file; malformed JSON raises SchemaError.
ResolvedModel load_model_spec(const std::filesystem::path& path);

}  // namespace enttime::cli
