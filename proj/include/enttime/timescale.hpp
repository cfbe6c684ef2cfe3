#pragma once

#include <optional>

#include "enttime/entropy.hpp"
#include "enttime/hamiltonian.hpp"
#include "enttime/linalg.hpp"

namespace enttime {

Complex expectation(const ComplexMatrix& op, const ComplexVector& psi);

struct TimescaleReport {
  double t_ent_inv_sq = 0.0;  // clipped to >= 0, units 1/time^2
  double raw_inv_sq = 0.0;    // real part of the covariance sum before clipping
  double imag_residual = 0.0;
  // sum_nm |<A_n A_m>| |<B_n B_m>|; sets the relative degeneracy threshold.
  double scale = 0.0;
  ComplexMatrix cov_a = ComplexMatrix::zero(1, 1);  // <A_n A_m> - <A_n><A_m>
  ComplexMatrix cov_b = ComplexMatrix::zero(1, 1);
  bool degenerate = false;
  std::optional<double> t_ent;  // empty when degenerate
};

// T_ent^-2 = sum_nm cov_a(n,m) cov_b(n,m) in the initial product state.
TimescaleReport entanglement_timescale(const ProductHamiltonian& h, const ProductState& s);

// Time unit for finite-difference stencils: T_ent, or 1/sqrt(scale) when
// the report is degenerate.
double characteristic_time(const TimescaleReport& report);

struct CurvaturePrediction {
  int alpha = 2;
  double coefficient = 0.0;  // 2 alpha / (alpha - 1)
  double curvature = 0.0;    // coefficient * T_ent^-2
};

double curvature_coefficient(int alpha);
CurvaturePrediction predicted_curvature(const TimescaleReport& report, int alpha);

// Centred difference (S(dt) - S(-dt)) / (2 dt). alpha == kVonNeumann is
// accepted as well.
double first_derivative_check(const ProductHamiltonian& h, const ProductState& s, int alpha,
                              double dt);

// Five-point second derivative of S_alpha(t) at `center` with width `step`.
double stencil_curvature(const EntropyEvolution& evolution, int alpha, double step,
                         double center = 0.0);

// d^2 S_alpha / dt^2 at t = 0 with step characteristic_time(report) / 50.
double measured_curvature(const ProductHamiltonian& h, const ProductState& s, int alpha);

}  // namespace enttime
