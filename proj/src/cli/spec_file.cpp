#include "enttime/cli/spec_file.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <numbers>
#include <set>
#include <sstream>

#include "enttime/errors.hpp"
#include "enttime/timescale.hpp"

namespace enttime::cli {
namespace {

using nlohmann::json;

std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string child(const std::string& path, std::size_t index) {
  return path + "/" + std::to_string(index);
}

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected an object");
}

void reject_unknown(const json& j, const std::string& path,
                    std::initializer_list<const char*> allowed) {
  const std::set<std::string> known(allowed.begin(), allowed.end());
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) throw SchemaError(child(path, key), "unknown field");
  }
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) throw SchemaError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw SchemaError(path, "expected a finite number");
  return v;
}

int integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw SchemaError(path, "expected an integer");
  return j.get<int>();
}

Complex complex_value(const json& j, const std::string& path) {
  if (j.is_number()) return {number(j, path), 0.0};
  if (j.is_array() && j.size() == 2) {
    return {number(j[0], child(path, 0)), number(j[1], child(path, 1))};
  }
  throw SchemaError(path, "expected a number or a [re, im] pair");
}

std::vector<double> real_array(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw SchemaError(path, "expected a non-empty array");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(number(j[k], child(path, k)));
  return out;
}

ComplexVector complex_vector(const json& j, const std::string& path, std::size_t dim) {
  require_object(j, path);
  reject_unknown(j, path, {"re", "im"});
  if (!j.contains("re")) throw SchemaError(child(path, "re"), "missing required field");
  const auto re = real_array(j["re"], child(path, "re"));
  std::vector<double> im(re.size(), 0.0);
  if (j.contains("im")) im = real_array(j["im"], child(path, "im"));
  if (re.size() != dim) {
    throw SchemaError(child(path, "re"), "expected " + std::to_string(dim) + " entries");
  }
  if (im.size() != dim) {
    throw SchemaError(child(path, "im"), "expected " + std::to_string(dim) + " entries");
  }
  ComplexVector v(static_cast<Eigen::Index>(dim));
  for (std::size_t k = 0; k < dim; ++k) v(static_cast<Eigen::Index>(k)) = {re[k], im[k]};
  return v;
}

std::vector<std::vector<double>> real_rows(const json& j, const std::string& path,
                                           std::size_t dim) {
  if (!j.is_array() || j.size() != dim) {
    throw SchemaError(path, "expected " + std::to_string(dim) + " rows");
  }
  std::vector<std::vector<double>> rows;
  for (std::size_t r = 0; r < dim; ++r) {
    auto row = real_array(j[r], child(path, r));
    if (row.size() != dim) {
      throw SchemaError(child(path, r), "expected " + std::to_string(dim) + " columns");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix complex_matrix(const json& j, const std::string& path, std::size_t dim) {
  require_object(j, path);
  reject_unknown(j, path, {"re", "im"});
  if (!j.contains("re")) throw SchemaError(child(path, "re"), "missing required field");
  const auto re = real_rows(j["re"], child(path, "re"), dim);
  std::vector<std::vector<double>> im(dim, std::vector<double>(dim, 0.0));
  if (j.contains("im")) im = real_rows(j["im"], child(path, "im"), dim);
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = {re[r][c], im[r][c]};
    }
  }
  return ComplexMatrix(std::move(m));
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

// Reads `name` (angular) or `name_hz` (cycles, times 2 pi); exactly one may
// be present. Returns nullopt when neither is.
std::optional<double> rate(const json& j, const std::string& path, const std::string& name) {
  const std::string hz = name + "_hz";
  const bool has_angular = j.contains(name);
  const bool has_hz = j.contains(hz);
  if (has_angular && has_hz) {
    throw SchemaError(child(path, hz), "give either '" + name + "' or '" + hz + "', not both");
  }
  if (has_angular) return number(j[name], child(path, name));
  if (has_hz) return 2.0 * std::numbers::pi * number(j[hz], child(path, hz));
  return std::nullopt;
}

ResolvedModel parse_jcm(const json& j, const std::string& path) {
  require_object(j, path);
  reject_unknown(j, path, {"lambda", "lambda_hz", "omega", "omega_hz", "n_max", "atom", "field"});
  JcmSpec spec;
  const auto lambda = rate(j, path, "lambda");
  if (!lambda) throw SchemaError(child(path, "lambda"), "missing required field");
  spec.lambda = *lambda;
  spec.omega = rate(j, path, "omega").value_or(1.0);

  if (!j.contains("atom")) throw SchemaError(child(path, "atom"), "missing required field");
  const std::string atom_path = child(path, "atom");
  require_object(j["atom"], atom_path);
  reject_unknown(j["atom"], atom_path, {"c_e", "c_g"});
  spec.c_e = j["atom"].contains("c_e") ? complex_value(j["atom"]["c_e"], child(atom_path, "c_e"))
                                       : Complex{0.0, 0.0};
  spec.c_g = j["atom"].contains("c_g") ? complex_value(j["atom"]["c_g"], child(atom_path, "c_g"))
                                       : Complex{0.0, 0.0};

  if (!j.contains("field")) throw SchemaError(child(path, "field"), "missing required field");
  const std::string field_path = child(path, "field");
  const json& field = j["field"];
  require_object(field, field_path);
  if (!field.contains("type") || !field["type"].is_string()) {
    throw SchemaError(child(field_path, "type"), "expected \"fock\" or \"coherent\"");
  }
  const std::string type = field["type"].get<std::string>();
  int default_n_max = 0;
  if (type == "fock") {
    reject_unknown(field, field_path, {"type", "n"});
    if (!field.contains("n")) throw SchemaError(child(field_path, "n"), "missing required field");
    const int n = integer(field["n"], child(field_path, "n"));
    spec.field = FockField{n};
    default_n_max = n + 10;
  } else if (type == "coherent") {
    reject_unknown(field, field_path, {"type", "nu"});
    if (!field.contains("nu")) throw SchemaError(child(field_path, "nu"), "missing required field");
    const Complex nu = complex_value(field["nu"], child(field_path, "nu"));
    spec.field = CoherentField{nu};
    default_n_max = suggested_n_max(nu);
  } else {
    throw SchemaError(child(field_path, "type"), "expected \"fock\" or \"coherent\"");
  }
  spec.n_max = j.contains("n_max") ? integer(j["n_max"], child(path, "n_max")) : default_n_max;

  ResolvedModel out{"jcm", build_jcm(spec), spec.lambda, "lambda", json::object(), spec};
  json field_echo = {{"type", type}};
  if (const auto* fock = std::get_if<FockField>(&spec.field)) {
    field_echo["n"] = fock->n;
  } else {
    field_echo["nu"] = complex_json(std::get<CoherentField>(spec.field).nu);
  }
  out.resolved = {{"model", "jcm"},
                  {"jcm",
                   {{"lambda", spec.lambda},
                    {"omega", spec.omega},
                    {"n_max", spec.n_max},
                    {"atom", {{"c_e", complex_json(spec.c_e)}, {"c_g", complex_json(spec.c_g)}}},
                    {"field", field_echo}}}};
  return out;
}

ResolvedModel parse_bose_hubbard(const json& j, const std::string& path) {
  require_object(j, path);
  reject_unknown(j, path, {"j", "j_hz", "u", "u_hz", "n_per_site_max", "occupancy"});
  BoseHubbardBoundarySpec spec;
  const auto j_rate = rate(j, path, "j");
  if (!j_rate) throw SchemaError(child(path, "j"), "missing required field");
  spec.j_rate = *j_rate;
  spec.u = rate(j, path, "u").value_or(0.0);
  if (j.contains("n_per_site_max")) {
    spec.n_per_site_max = integer(j["n_per_site_max"], child(path, "n_per_site_max"));
  }
  if (j.contains("occupancy")) {
    const std::string occ_path = child(path, "occupancy");
    const json& occ = j["occupancy"];
    if (!occ.is_array() || occ.size() != 2) {
      throw SchemaError(occ_path, "expected [left, right] occupations");
    }
    spec.occupancy_left = integer(occ[0], child(occ_path, 0));
    spec.occupancy_right = integer(occ[1], child(occ_path, 1));
  }
  ResolvedModel out{"bose_hubbard", build_bose_hubbard_boundary(spec), std::abs(spec.j_rate), "J",
                    json::object(), std::nullopt};
  out.resolved = {{"model", "bose_hubbard"},
                  {"bose_hubbard",
                   {{"j", spec.j_rate},
                    {"u", spec.u},
                    {"n_per_site_max", spec.n_per_site_max},
                    {"occupancy", {spec.occupancy_left, spec.occupancy_right}}}}};
  return out;
}

ResolvedModel parse_custom(const json& j, const std::string& path) {
  require_object(j, path);
  reject_unknown(j, path, {"dim_a", "dim_b", "terms", "state"});
  for (const char* key : {"dim_a", "dim_b", "terms", "state"}) {
    if (!j.contains(key)) throw SchemaError(child(path, key), "missing required field");
  }
  const int dim_a = integer(j["dim_a"], child(path, "dim_a"));
  const int dim_b = integer(j["dim_b"], child(path, "dim_b"));
  if (dim_a < 1) throw SchemaError(child(path, "dim_a"), "must be >= 1");
  if (dim_b < 1) throw SchemaError(child(path, "dim_b"), "must be >= 1");
  const auto na = static_cast<std::size_t>(dim_a);
  const auto nb = static_cast<std::size_t>(dim_b);

  const std::string terms_path = child(path, "terms");
  const json& terms_json = j["terms"];
  if (!terms_json.is_array() || terms_json.empty()) {
    throw SchemaError(terms_path, "expected a non-empty array of {a, b} terms");
  }
  std::vector<OperatorPair> terms;
  for (std::size_t k = 0; k < terms_json.size(); ++k) {
    const std::string term_path = child(terms_path, k);
    require_object(terms_json[k], term_path);
    reject_unknown(terms_json[k], term_path, {"a", "b"});
    for (const char* key : {"a", "b"}) {
      if (!terms_json[k].contains(key)) {
        throw SchemaError(child(term_path, key), "missing required field");
      }
    }
    terms.push_back({complex_matrix(terms_json[k]["a"], child(term_path, "a"), na),
                     complex_matrix(terms_json[k]["b"], child(term_path, "b"), nb)});
  }

  const std::string state_path = child(path, "state");
  const json& state = j["state"];
  require_object(state, state_path);
  reject_unknown(state, state_path, {"psi_a", "psi_b"});
  for (const char* key : {"psi_a", "psi_b"}) {
    if (!state.contains(key)) throw SchemaError(child(state_path, key), "missing required field");
  }
  ComplexVector psi_a = complex_vector(state["psi_a"], child(state_path, "psi_a"), na);
  ComplexVector psi_b = complex_vector(state["psi_b"], child(state_path, "psi_b"), nb);

  BipartiteModel model{ProductHamiltonian(na, nb, std::move(terms)),
                       ProductState(std::move(psi_a), std::move(psi_b))};
  assemble(model.hamiltonian);  // hermiticity is a model error, surface it now
  const double rate_value =
      1.0 / characteristic_time(entanglement_timescale(model.hamiltonian, model.state));
  json echo = j;
  return {"custom", std::move(model), rate_value, "", {{"model", "custom"}, {"custom", echo}},
          std::nullopt};
}

}  // namespace

ResolvedModel parse_model_spec(const json& doc) {
  require_object(doc, "");
  reject_unknown(doc, "", {"model", "description", "jcm", "bose_hubbard", "custom"});
  if (!doc.contains("model") || !doc["model"].is_string()) {
    throw SchemaError("/model", "expected one of \"jcm\", \"bose_hubbard\", \"custom\"");
  }
  const std::string kind = doc["model"].get<std::string>();
  for (const char* block : {"jcm", "bose_hubbard", "custom"}) {
    if (kind != block && doc.contains(block)) {
      throw SchemaError(std::string("/") + block, "parameter block does not match model \"" +
                                                      kind + "\"");
    }
  }
  if (kind != "jcm" && kind != "bose_hubbard" && kind != "custom") {
    throw SchemaError("/model", "expected one of \"jcm\", \"bose_hubbard\", \"custom\"");
  }
  if (!doc.contains(kind)) throw SchemaError("/" + kind, "missing parameter block");
  ResolvedModel out = kind == "jcm"            ? parse_jcm(doc[kind], "/jcm")
                      : kind == "bose_hubbard" ? parse_bose_hubbard(doc[kind], "/bose_hubbard")
                                               : parse_custom(doc[kind], "/custom");
  if (doc.contains("description")) {
    if (!doc["description"].is_string()) throw SchemaError("/description", "expected a string");
    out.resolved["description"] = doc["description"];
  }
  return out;
}

ResolvedModel load_model_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("", "cannot open model spec '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError("", std::string("malformed JSON: ") + e.what());
  }
  return parse_model_spec(doc);
}

}  // namespace enttime::cli
