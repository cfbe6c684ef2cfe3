#pragma once

#include <span>
#include <vector>

#include "enttime/hamiltonian.hpp"
#include "enttime/linalg.hpp"

namespace enttime {

// Order value standing for the von Neumann entropy (the alpha -> 1 limit).
inline constexpr int kVonNeumann = 1;

// Spectrum of a reduced density matrix, stored so that the leading weight
// 1 - deficit keeps full relative precision on deficit. This matters near a
// product state, where the entanglement lives entirely in the tiny weights.
struct ReducedSpectrum {
  double deficit = 0.0;            // 1 - largest weight
  std::vector<double> subleading;  // remaining weights, descending, >= 0
  double clipped_mass = 0.0;       // sum of negative eigenvalues removed (<= 0)

  // All weights, descending, padded with zeros to `size` entries if larger.
  std::vector<double> weights(std::size_t size = 0) const;
};

// Eigenvalues of rho via eig_hermitian; validates trace 1 (StateError),
// clips negatives and warns when the clipped mass is below -kClipWarnMass.
ReducedSpectrum spectrum_of_density(const ComplexMatrix& rho);

// Schmidt weights of a pure bipartite state (squared singular values of its
// coefficient matrix); identical for both subsystems.
ReducedSpectrum schmidt_spectrum(const BipartitePureState& psi);

double log_alpha_purity(const ReducedSpectrum& spectrum, int alpha);
double renyi_from_spectrum(const ReducedSpectrum& spectrum, int alpha);
double von_neumann_from_spectrum(const ReducedSpectrum& spectrum);
// order == kVonNeumann selects the von Neumann entropy, otherwise Renyi.
double entropy_from_spectrum(const ReducedSpectrum& spectrum, int order);

// tr rho^alpha for alpha >= 1.
double alpha_purity(const ComplexMatrix& rho_a, int alpha);
// (1/(1-alpha)) ln tr rho^alpha for integer alpha >= 2, in nats.
double renyi_entropy(const ComplexMatrix& rho_a, int alpha);
double von_neumann_entropy(const ComplexMatrix& rho_a);

// Exact evolution of a product initial state with per-time entanglement
// queries. Holds one eigendecomposition of H; const members are thread-safe.
class EntropyEvolution {
 public:
  EntropyEvolution(const ProductHamiltonian& h, const ProductState& s);

  BipartitePureState state(double t) const { return propagator_.evolve(psi0_, t); }
  ReducedSpectrum spectrum(double t) const { return schmidt_spectrum(state(t)); }
  double entropy(int order, double t) const {
    return entropy_from_spectrum(spectrum(t), order);
  }
  std::size_t dim_a() const noexcept { return psi0_.dim_a(); }

 private:
  Propagator propagator_;
  BipartitePureState psi0_;
};

struct EntropySeries {
  int alpha = 2;  // kVonNeumann for the von Neumann entropy
  std::vector<double> times;
  std::vector<double> values;                // nats
  std::vector<std::vector<double>> spectra;  // rho_A weights per time, if captured
};

// One series per requested order, all on the same ascending, non-negative
// grid. Time points are evaluated in parallel (see thread_budget()).
std::vector<EntropySeries> entropy_series(const ProductHamiltonian& h, const ProductState& s,
                                          std::span<const int> alphas,
                                          std::span<const double> t_grid,
                                          bool capture_spectra = false);

struct CurvatureSample {
  double t = 0.0;
  double curvature = 0.0;
};

// Five-point d^2 S/dt^2 of the von Neumann entropy centred at each t with
// stencil width t/20. Throws NumericalError when the width drops below
// 1e-7 of the characteristic time.
std::vector<CurvatureSample> von_neumann_curvature_probe(const ProductHamiltonian& h,
                                                         const ProductState& s,
                                                         std::span<const double> t_list);

}  // namespace enttime
