#include "enttime/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "enttime/diagnostics.hpp"
#include "enttime/errors.hpp"
#include "enttime/parallel.hpp"
#include "enttime/timescale.hpp"
#include "enttime/tolerances.hpp"

namespace enttime {
namespace {

// Builds a spectrum from non-negative weights that sum to `total`.
ReducedSpectrum from_weights(std::vector<double> w, double total) {
  std::sort(w.begin(), w.end(), std::greater<>());
  ReducedSpectrum out;
  out.subleading.reserve(w.size() - 1);
  double rest = 0.0;
  for (std::size_t k = 1; k < w.size(); ++k) {
    out.subleading.push_back(w[k] / total);
    rest += w[k];
  }
  out.deficit = rest / total;
  return out;
}

void require_order(int alpha, int minimum) {
  if (alpha < minimum) {
    throw DomainError("entropy order " + std::to_string(alpha) + " is below " +
                      std::to_string(minimum));
  }
}

}  // namespace

std::vector<double> ReducedSpectrum::weights(std::size_t size) const {
  std::vector<double> w;
  w.reserve(std::max(size, subleading.size() + 1));
  w.push_back(1.0 - deficit);
  w.insert(w.end(), subleading.begin(), subleading.end());
  if (w.size() < size) w.resize(size, 0.0);
  return w;
}

ReducedSpectrum spectrum_of_density(const ComplexMatrix& rho) {
  if (!rho.is_square()) throw DimensionError("density matrix is not square");
  const Complex tr = rho.trace();
  if (std::abs(tr - 1.0) > kTraceTol) {
    throw StateError("density matrix trace (" + std::to_string(tr.real()) + ", " +
                     std::to_string(tr.imag()) + ") deviates from 1");
  }
  if (!is_hermitian(rho)) throw StateError("density matrix is not Hermitian");
  const HermitianSpectrum eig = eig_hermitian(rho);
  std::vector<double> w;
  w.reserve(static_cast<std::size_t>(eig.eigenvalues.size()));
  double clipped = 0.0;
  for (const double lam : eig.eigenvalues) {
    if (lam < 0.0) clipped += lam;
    w.push_back(std::max(lam, 0.0));
  }
  if (clipped < -kTraceTol) {
    throw StateError("density matrix is not positive semidefinite (negative mass " +
                     std::to_string(clipped) + ")");
  }
  if (clipped < -kClipWarnMass) {
    warn("clipped negative eigenvalue mass " + std::to_string(clipped) +
         " from a density matrix");
  }
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  ReducedSpectrum out = from_weights(std::move(w), total);
  out.clipped_mass = clipped;
  return out;
}

ReducedSpectrum schmidt_spectrum(const BipartitePureState& psi) {
  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(psi.coefficient_matrix());
  const RealVector& sv = svd.singularValues();
  std::vector<double> w(static_cast<std::size_t>(sv.size()));
  double total = 0.0;
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    w[static_cast<std::size_t>(k)] = sv(k) * sv(k);
    total += sv(k) * sv(k);
  }
  return from_weights(std::move(w), total);
}

double log_alpha_purity(const ReducedSpectrum& spectrum, int alpha) {
  require_order(alpha, 1);
  // ln[(1-d)^a + sum q^a] = a ln(1-d) + ln(1 + sum q^a / (1-d)^a)
  const double log_leading = static_cast<double>(alpha) * std::log1p(-spectrum.deficit);
  double rest = 0.0;
  for (const double q : spectrum.subleading) rest += std::pow(q, alpha);
  return log_leading + std::log1p(rest * std::exp(-log_leading));
}

double renyi_from_spectrum(const ReducedSpectrum& spectrum, int alpha) {
  require_order(alpha, 2);
  return log_alpha_purity(spectrum, alpha) / (1.0 - static_cast<double>(alpha));
}

double von_neumann_from_spectrum(const ReducedSpectrum& spectrum) {
  double s = -(1.0 - spectrum.deficit) * std::log1p(-spectrum.deficit);
  for (const double q : spectrum.subleading) {
    if (q > 0.0) s -= q * std::log(q);
  }
  return s;
}

double entropy_from_spectrum(const ReducedSpectrum& spectrum, int order) {
  if (order == kVonNeumann) return von_neumann_from_spectrum(spectrum);
  return renyi_from_spectrum(spectrum, order);
}

double alpha_purity(const ComplexMatrix& rho_a, int alpha) {
  require_order(alpha, 1);
  return std::exp(log_alpha_purity(spectrum_of_density(rho_a), alpha));
}

double renyi_entropy(const ComplexMatrix& rho_a, int alpha) {
  if (alpha < 2) {
    throw DomainError("renyi_entropy needs an integer order >= 2; use von_neumann_entropy "
                      "for the alpha -> 1 limit");
  }
  return renyi_from_spectrum(spectrum_of_density(rho_a), alpha);
}

double von_neumann_entropy(const ComplexMatrix& rho_a) {
  return von_neumann_from_spectrum(spectrum_of_density(rho_a));
}

EntropyEvolution::EntropyEvolution(const ProductHamiltonian& h, const ProductState& s)
    : propagator_(assemble(h)), psi0_(product_state_vector(s)) {
  if (h.dim_a() != s.dim_a() || h.dim_b() != s.dim_b()) {
    throw DimensionError("Hamiltonian is " + std::to_string(h.dim_a()) + "x" +
                         std::to_string(h.dim_b()) + " but the state is " +
                         std::to_string(s.dim_a()) + "x" + std::to_string(s.dim_b()));
  }
}

std::vector<EntropySeries> entropy_series(const ProductHamiltonian& h, const ProductState& s,
                                          std::span<const int> alphas,
                                          std::span<const double> t_grid,
                                          bool capture_spectra) {
  if (t_grid.empty()) throw DomainError("entropy_series: empty time grid");
  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    if (!std::isfinite(t_grid[k]) || t_grid[k] < 0.0) {
      throw DomainError("entropy_series: times must be finite and >= 0");
    }
    if (k > 0 && !(t_grid[k] > t_grid[k - 1])) {
      throw DomainError("entropy_series: times must be strictly ascending");
    }
  }
  if (alphas.empty()) throw DomainError("entropy_series: no entropy orders requested");
  for (const int a : alphas) require_order(a, 1);

  const EntropyEvolution evolution(h, s);
  std::vector<ReducedSpectrum> spectra(t_grid.size());
  parallel_for(t_grid.size(), [&](std::size_t k) { spectra[k] = evolution.spectrum(t_grid[k]); });

  std::vector<EntropySeries> out;
  out.reserve(alphas.size());
  for (const int a : alphas) {
    EntropySeries series;
    series.alpha = a;
    series.times.assign(t_grid.begin(), t_grid.end());
    series.values.reserve(t_grid.size());
    for (const auto& sp : spectra) {
      series.values.push_back(entropy_from_spectrum(sp, a));
      if (capture_spectra) series.spectra.push_back(sp.weights(h.dim_a()));
    }
    out.push_back(std::move(series));
  }
  return out;
}

std::vector<CurvatureSample> von_neumann_curvature_probe(const ProductHamiltonian& h,
                                                         const ProductState& s,
                                                         std::span<const double> t_list) {
  for (std::size_t k = 0; k < t_list.size(); ++k) {
    if (!(t_list[k] > 0.0) || !std::isfinite(t_list[k])) {
      throw DomainError("curvature probe: times must be positive and finite");
    }
    if (k > 0 && !(t_list[k] < t_list[k - 1])) {
      throw DomainError("curvature probe: times must be strictly decreasing");
    }
  }
  const double t_char = characteristic_time(entanglement_timescale(h, s));
  const EntropyEvolution evolution(h, s);
  std::vector<CurvatureSample> out;
  out.reserve(t_list.size());
  for (const double t : t_list) {
    const double step = t / 20.0;
    if (step < 1e-7 * t_char) {
      throw NumericalError("curvature probe: stencil width " + std::to_string(step) +
                           " at t = " + std::to_string(t) + " is below 1e-7 of the "
                           "characteristic time " + std::to_string(t_char));
    }
    out.push_back({t, stencil_curvature(evolution, kVonNeumann, step, t)});
  }
  return out;
}

}  // namespace enttime
