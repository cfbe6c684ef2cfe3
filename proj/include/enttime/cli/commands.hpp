#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "enttime/cli/report.hpp"
#include "enttime/cli/spec_file.hpp"
#include "enttime/entropy.hpp"
#include "enttime/errors.hpp"

namespace enttime::cli {

// Exit codes of the enttime tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailed = 1,   // a verification check failed, or an I/O error
  kExitSchema = 2,   // malformed spec or command-line usage
  kExitModel = 3,    // invalid model or state
  kExitNumeric = 4,  // numerical failure (decomposition, unstable fit)
};

class UsageError : public Error {
 public:
  using Error::Error;
};

int exit_code_for(const std::exception& e);

struct TimescaleOptions {
  std::string spec_path;
  std::vector<int> alphas{2, 3, 4};
  std::optional<std::string> output_path;
  bool hashable = false;
};

RunReport cmd_timescale(const TimescaleOptions& options);

struct EvolveOptions {
  std::string spec_path;
  std::vector<int> alphas{2};  // 1 selects the von Neumann entropy
  std::optional<double> t_max;  // default: 3 natural time units
  int n_points = 201;
  bool ln2_units = false;
  bool spectrum = false;  // append p1,p2 (qubit subsystems only)
  std::optional<std::string> output_path;
};

// CSV text with header "t,alpha,entropy" (plus ",p1,p2"), rows ordered by
// (alpha, t); also written atomically to output_path when given.
std::string cmd_evolve(const EvolveOptions& options);

struct CurvatureCheck {
  int alpha = 2;
  double predicted = 0.0;
  double measured = 0.0;
  double error = 0.0;     // relative, or absolute / scale when degenerate
  bool absolute = false;  // degenerate model: compared against zero
  bool passed = false;
};

struct SlopeCheck {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double expected = 6.0;
  double tolerance = 0.1;
  bool passed = false;
};

struct DivergenceCheck {
  std::vector<CurvatureSample> samples;
  double intercept = 0.0;
  double log_coefficient = 0.0;  // slope against ln(rate t)
  double r_squared = 0.0;
  std::optional<double> expected_log_coefficient;  // -4 T_ent^-2
};

struct DerivativeCheck {
  int alpha = 2;
  double value = 0.0;  // dS/d(rate t) at t = 0
};

struct VerifyOptions {
  std::string spec_path;
  std::vector<int> alphas{2, 3, 4};
  double tolerance_rel = 0.01;
  std::optional<std::string> output_path;
};

struct VerifyResult {
  TimescaleReport timescale;
  std::string rate_name;
  double natural_rate = 1.0;
  double tolerance_rel = 0.01;
  std::vector<CurvatureCheck> curvature;
  std::optional<SlopeCheck> slope;
  std::optional<DivergenceCheck> divergence;
  std::vector<DerivativeCheck> first_derivatives;

  bool passed() const;
};

VerifyResult verify_model(const ResolvedModel& model, const std::vector<int>& alphas,
                          double tolerance_rel);
VerifyResult cmd_verify(const VerifyOptions& options);

std::string format_verify_table(const VerifyResult& result);
nlohmann::json to_json(const VerifyResult& result);

// Full command-line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace enttime::cli
