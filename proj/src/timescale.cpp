#include "enttime/timescale.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "enttime/errors.hpp"
#include "enttime/tolerances.hpp"

namespace enttime {
namespace {

// Pairwise (cascade) summation; error grows with log2(n) instead of n.
Complex pairwise_sum(std::span<const Complex> v) {
  if (v.size() <= 8) {
    Complex s{0.0, 0.0};
    for (const Complex& z : v) s += z;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

struct Moments {
  Eigen::MatrixXcd second;  // <X_n X_m>
  ComplexVector first;      // <X_n>
};

// <X_n X_m> = (X_n^dagger psi)^dagger (X_m psi).
template <class Select>
Moments moments(const std::vector<OperatorPair>& terms, const ComplexVector& psi,
                Select select) {
  const auto n = static_cast<Eigen::Index>(terms.size());
  Eigen::MatrixXcd applied(psi.size(), n);
  Eigen::MatrixXcd applied_adj(psi.size(), n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto& op = select(terms[static_cast<std::size_t>(k)]).matrix();
    applied.col(k) = op * psi;
    applied_adj.col(k) = op.adjoint() * psi;
  }
  return {applied_adj.adjoint() * applied, (applied.adjoint() * psi).conjugate()};
}

}  // namespace

Complex expectation(const ComplexMatrix& op, const ComplexVector& psi) {
  if (!op.is_square() || op.rows() != static_cast<std::size_t>(psi.size())) {
    throw DimensionError("expectation: operator is " + std::to_string(op.rows()) + "x" +
                         std::to_string(op.cols()) + ", state has " +
                         std::to_string(psi.size()) + " amplitudes");
  }
  if (std::abs(psi.norm() - 1.0) > kNormTol) throw StateError("expectation: state not normalized");
  return psi.dot(op.matrix() * psi);
}

TimescaleReport entanglement_timescale(const ProductHamiltonian& h, const ProductState& s) {
  if (h.dim_a() != s.dim_a() || h.dim_b() != s.dim_b()) {
    throw DimensionError("entanglement_timescale: Hamiltonian is " + std::to_string(h.dim_a()) +
                         "x" + std::to_string(h.dim_b()) + " but the state is " +
                         std::to_string(s.dim_a()) + "x" + std::to_string(s.dim_b()));
  }
  const auto& terms = h.terms();
  const Moments ma = moments(terms, s.psi_a(),
                             [](const OperatorPair& p) -> const ComplexMatrix& { return p.a; });
  const Moments mb = moments(terms, s.psi_b(),
                             [](const OperatorPair& p) -> const ComplexMatrix& { return p.b; });
  const ComplexVector& mean_a = ma.first;
  const ComplexVector& mean_b = mb.first;

  const auto n = static_cast<Eigen::Index>(terms.size());
  Eigen::MatrixXcd cov_a = ma.second - mean_a * mean_a.transpose();
  Eigen::MatrixXcd cov_b = mb.second - mean_b * mean_b.transpose();

  std::vector<Complex> products;
  products.reserve(static_cast<std::size_t>(n * n));
  double scale = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      products.push_back(cov_a(i, j) * cov_b(i, j));
      scale += std::abs(ma.second(i, j)) * std::abs(mb.second(i, j));
    }
  }
  const Complex sum = pairwise_sum(products);

  TimescaleReport report;
  report.raw_inv_sq = sum.real();
  report.imag_residual = std::abs(sum.imag());
  report.scale = scale;
  report.cov_a = ComplexMatrix(std::move(cov_a));
  report.cov_b = ComplexMatrix(std::move(cov_b));

  if (report.imag_residual > kImagResidualTol * scale) {
    throw NumericalError("covariance sum has imaginary residual " +
                         std::to_string(report.imag_residual) + " (scale " +
                         std::to_string(scale) + "); the assembled Hamiltonian is not Hermitian");
  }
  if (report.raw_inv_sq < -std::max(1e-12, kDegenTol * scale)) {
    throw NumericalError("covariance sum is negative: " + std::to_string(report.raw_inv_sq));
  }
  report.t_ent_inv_sq = std::max(report.raw_inv_sq, 0.0);
  report.degenerate = !(report.t_ent_inv_sq > kDegenTol * scale);
  if (!report.degenerate) report.t_ent = 1.0 / std::sqrt(report.t_ent_inv_sq);
  return report;
}

double characteristic_time(const TimescaleReport& report) {
  if (report.t_ent) return *report.t_ent;
  if (!(report.scale > 0.0)) {
    throw NumericalError("no characteristic time: every second moment of the interaction "
                         "terms vanishes in this state");
  }
  return 1.0 / std::sqrt(report.scale);
}

double curvature_coefficient(int alpha) {
  if (alpha < 2) {
    throw DomainError("the universal curvature holds for integer alpha >= 2; for alpha = 1 "
                      "use von_neumann_curvature_probe (the coefficient diverges)");
  }
  const double a = static_cast<double>(alpha);
  return 2.0 * a / (a - 1.0);
}

CurvaturePrediction predicted_curvature(const TimescaleReport& report, int alpha) {
  const double c = curvature_coefficient(alpha);
  return {alpha, c, c * report.t_ent_inv_sq};
}

double first_derivative_check(const ProductHamiltonian& h, const ProductState& s, int alpha,
                              double dt) {
  if (!(dt > 0.0)) throw DomainError("first_derivative_check: dt must be positive");
  const EntropyEvolution evolution(h, s);
  return (evolution.entropy(alpha, dt) - evolution.entropy(alpha, -dt)) / (2.0 * dt);
}

double stencil_curvature(const EntropyEvolution& evolution, int alpha, double step,
                         double center) {
  if (!(step > 0.0)) throw DomainError("stencil step must be positive");
  constexpr double kWeights[5] = {-1.0 / 12.0, 4.0 / 3.0, -5.0 / 2.0, 4.0 / 3.0, -1.0 / 12.0};
  double acc = 0.0;
  for (int k = -2; k <= 2; ++k) {
    acc += kWeights[k + 2] * evolution.entropy(alpha, center + k * step);
  }
  return acc / (step * step);
}

double measured_curvature(const ProductHamiltonian& h, const ProductState& s, int alpha) {
  const double step = characteristic_time(entanglement_timescale(h, s)) / 50.0;
  const EntropyEvolution evolution(h, s);
  return stencil_curvature(evolution, alpha, step);
}

}  // namespace enttime
