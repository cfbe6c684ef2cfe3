#include "enttime/models.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "enttime/errors.hpp"
#include "enttime/timescale.hpp"

namespace enttime {
namespace {

using Index = Eigen::Index;

Index field_dim(int n_max) { return static_cast<Index>(n_max) + 1; }

ComplexVector basis_vector(Index dim, Index k) {
  ComplexVector v = ComplexVector::Zero(dim);
  v(k) = 1.0;
  return v;
}

bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// ln of the Poisson weight |nu|^{2n} e^{-|nu|^2} / n!.
double log_poisson(double mean, int n) {
  if (mean == 0.0) return n == 0 ? 0.0 : -INFINITY;
  return -mean + n * std::log(mean) - std::lgamma(n + 1.0);
}

}  // namespace

ComplexMatrix annihilation(int n_max) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(field_dim(n_max), field_dim(n_max));
  for (Index n = 1; n <= n_max; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return ComplexMatrix(std::move(a));
}

ComplexMatrix creation(int n_max) { return annihilation(n_max).adjoint(); }

ComplexMatrix number_operator(int n_max) {
  Eigen::MatrixXcd n = Eigen::MatrixXcd::Zero(field_dim(n_max), field_dim(n_max));
  for (Index k = 0; k <= n_max; ++k) n(k, k) = static_cast<double>(k);
  return ComplexMatrix(std::move(n));
}

ComplexMatrix sigma_z() { return ComplexMatrix{{1.0, 0.0}, {0.0, -1.0}}; }
ComplexMatrix sigma_minus() { return ComplexMatrix{{0.0, 0.0}, {1.0, 0.0}}; }
ComplexMatrix sigma_plus() { return ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}; }

double coherent_tail_mass(Complex nu, int n_max) {
  const double mean = std::norm(nu);
  if (mean == 0.0) return 0.0;
  double tail = 0.0;
  for (int n = n_max + 1;; ++n) {
    const double p = std::exp(log_poisson(mean, n));
    tail += p;
    if (n > mean && p < 1e-20 * tail) break;
    if (p == 0.0 && n > mean) break;
  }
  return tail;
}

int minimal_n_max(Complex nu, double tail_tol) {
  int n = 0;
  while (coherent_tail_mass(nu, n) > tail_tol) ++n;
  return n;
}

int suggested_n_max(Complex nu) {
  const double r = std::abs(nu);
  return static_cast<int>(std::ceil(r * r + 10.0 * r + 20.0));
}

void validate(const JcmSpec& spec) {
  if (!std::isfinite(spec.lambda) || !std::isfinite(spec.omega)) {
    throw ModelError("jcm: lambda and omega must be finite");
  }
  if (spec.n_max < 1) throw ModelError("jcm: n_max must be >= 1");
  if (2 * static_cast<std::size_t>(field_dim(spec.n_max)) > kMaxDim) {
    throw DimensionError("jcm: n_max " + std::to_string(spec.n_max) +
                         " exceeds the maximum dimension");
  }
  if (!is_finite(spec.c_g) || !is_finite(spec.c_e)) {
    throw ModelError("jcm: atomic amplitudes must be finite");
  }
  const double atom_norm = std::norm(spec.c_g) + std::norm(spec.c_e);
  if (std::abs(atom_norm - 1.0) > kNormTol) {
    throw ModelError("jcm: |C_g|^2 + |C_e|^2 = " + std::to_string(atom_norm) + ", expected 1");
  }
  if (const auto* fock = std::get_if<FockField>(&spec.field)) {
    if (fock->n < 0) throw ModelError("jcm: Fock occupation must be >= 0");
    const int needed = spec.c_e != Complex{0.0, 0.0} ? fock->n + 1 : fock->n;
    if (spec.n_max < needed) {
      throw ModelError("jcm: field cutoff n_max=" + std::to_string(spec.n_max) +
                       " is below the " + std::to_string(needed) +
                       " levels this Fock state reaches");
    }
  } else {
    const Complex nu = std::get<CoherentField>(spec.field).nu;
    if (!is_finite(nu)) throw ModelError("jcm: coherent amplitude must be finite");
    const double tail = coherent_tail_mass(nu, spec.n_max);
    if (tail > kTailTol) {
      const int hint = std::max(suggested_n_max(nu), minimal_n_max(nu));
      throw TruncationError("jcm: coherent state |nu|=" + std::to_string(std::abs(nu)) +
                                " leaves tail mass " + std::to_string(tail) +
                                " above n_max=" + std::to_string(spec.n_max) +
                                "; use n_max >= " + std::to_string(hint),
                            hint);
    }
  }
}

ComplexVector field_amplitudes(const JcmSpec& spec) {
  validate(spec);
  const Index dim = field_dim(spec.n_max);
  if (const auto* fock = std::get_if<FockField>(&spec.field)) return basis_vector(dim, fock->n);
  const Complex nu = std::get<CoherentField>(spec.field).nu;
  const double mean = std::norm(nu);
  const double phase = std::arg(nu);
  ComplexVector c(dim);
  for (Index n = 0; n < dim; ++n) {
    const double magnitude = std::exp(0.5 * log_poisson(mean, static_cast<int>(n)));
    c(n) = std::polar(magnitude, static_cast<double>(n) * phase);
  }
  return c / c.norm();
}

BipartiteModel build_jcm(const JcmSpec& spec) {
  const ComplexVector field = field_amplitudes(spec);
  const int n_max = spec.n_max;
  const ComplexMatrix id_a = ComplexMatrix::identity(2);
  const ComplexMatrix id_f = ComplexMatrix::identity(static_cast<std::size_t>(field_dim(n_max)));
  std::vector<OperatorPair> terms{
      {Complex(spec.omega / 2.0) * sigma_z(), id_f},
      {id_a, Complex(spec.omega) * number_operator(n_max)},
      {Complex(spec.lambda) * sigma_minus(), creation(n_max)},
      {Complex(spec.lambda) * sigma_plus(), annihilation(n_max)},
  };
  ComplexVector atom(2);
  atom << spec.c_e, spec.c_g;
  return {ProductHamiltonian(2, static_cast<std::size_t>(field_dim(n_max)), std::move(terms)),
          ProductState(std::move(atom), field)};
}

BipartitePureState jcm_analytic_state(const JcmSpec& spec, double t) {
  const ComplexVector c = field_amplitudes(spec);
  const Index dim = c.size();
  const Index n_max = dim - 1;
  const double lt = spec.lambda * t;
  ComplexVector amps(2 * dim);
  const Complex i{0.0, 1.0};
  for (Index n = 0; n < dim; ++n) {
    const double nd = static_cast<double>(n);
    // |e, n> pairs with |g, n+1>; the edge level |e, n_max> has no partner.
    Complex excited = spec.c_e * c(n);
    if (n < n_max) {
      const double theta = lt * std::sqrt(nd + 1.0);
      excited = spec.c_e * c(n) * std::cos(theta) - i * spec.c_g * c(n + 1) * std::sin(theta);
    }
    Complex ground = spec.c_g * c(n);
    if (n > 0) {
      const double theta = lt * std::sqrt(nd);
      ground = -i * spec.c_e * c(n - 1) * std::sin(theta) + spec.c_g * c(n) * std::cos(theta);
    }
    amps(n) = excited * std::polar(1.0, -spec.omega * (nd + 0.5) * t);
    amps(dim + n) = ground * std::polar(1.0, -spec.omega * (nd - 0.5) * t);
  }
  return BipartitePureState(2, static_cast<std::size_t>(dim), amps / amps.norm());
}

double jcm_timescale_closed_form(const JcmSpec& spec) {
  const bool excited = spec.c_g == Complex{0.0, 0.0};
  const bool ground = spec.c_e == Complex{0.0, 0.0};
  if (!excited && !ground) {
    const BipartiteModel model = build_jcm(spec);
    return entanglement_timescale(model.hamiltonian, model.state).t_ent_inv_sq;
  }
  const ComplexVector c = field_amplitudes(spec);
  const Index n_max = c.size() - 1;
  double occupation = 0.0;  // sum (n+1)|C_n|^2 below the edge, or sum n|C_n|^2
  Complex mean_a{0.0, 0.0};  // <a> = sum sqrt(n+1) C_n^* C_{n+1}
  for (Index n = 0; n <= n_max; ++n) {
    const double nd = static_cast<double>(n);
    if (excited) {
      if (n < n_max) occupation += (nd + 1.0) * std::norm(c(n));
    } else {
      occupation += nd * std::norm(c(n));
    }
    if (n < n_max) mean_a += std::sqrt(nd + 1.0) * std::conj(c(n)) * c(n + 1);
  }
  return std::max(0.0, spec.lambda * spec.lambda * (occupation - std::norm(mean_a)));
}

LogDivergence jcm_log_divergence_coefficient(const JcmSpec& spec) {
  validate(spec);
  if (spec.c_g != Complex{0.0, 0.0}) {
    throw DomainError("log-divergence coefficients need an initially excited atom (C_g = 0)");
  }
  const BipartiteModel model = build_jcm(spec);
  if (entanglement_timescale(model.hamiltonian, model.state).degenerate) {
    throw DomainError("log-divergence coefficients need a non-degenerate timescale");
  }
  const double inv_sq = jcm_timescale_closed_form(spec);
  // 1 - |s(t)| ~ 2 T^-2 t^2 inside -2 + ln 2 - ln(1 - |s(t)|).
  return {2.0 * inv_sq * (-2.0 + std::numbers::ln2 - std::log(2.0 * inv_sq)), -4.0 * inv_sq};
}

void validate(const BoseHubbardBoundarySpec& spec) {
  if (!std::isfinite(spec.j_rate) || !std::isfinite(spec.u)) {
    throw ModelError("bose_hubbard: J and U must be finite");
  }
  if (spec.n_per_site_max < 1) throw ModelError("bose_hubbard: n_per_site_max must be >= 1");
  const auto dim = static_cast<std::size_t>(spec.n_per_site_max) + 1;
  if (dim * dim > kMaxDim) throw DimensionError("bose_hubbard: cutoff exceeds the maximum dimension");
  for (const int occ : {spec.occupancy_left, spec.occupancy_right}) {
    if (occ < 0) throw ModelError("bose_hubbard: occupations must be >= 0");
    if (occ > spec.n_per_site_max) {
      throw ModelError("bose_hubbard: cutoff " + std::to_string(spec.n_per_site_max) +
                       " is below the initial occupation " + std::to_string(occ));
    }
  }
}

BipartiteModel build_bose_hubbard_boundary(const BoseHubbardBoundarySpec& spec) {
  validate(spec);
  const int cutoff = spec.n_per_site_max;
  const auto dim = static_cast<std::size_t>(cutoff) + 1;
  const ComplexMatrix a = annihilation(cutoff);
  const ComplexMatrix ad = creation(cutoff);
  const Complex minus_j{-spec.j_rate, 0.0};
  std::vector<OperatorPair> terms{{minus_j * ad, a}, {minus_j * a, ad}};
  if (spec.u != 0.0) {
    const ComplexMatrix n = number_operator(cutoff);
    const ComplexMatrix id = ComplexMatrix::identity(dim);
    const ComplexMatrix onsite = Complex(spec.u / 2.0) * (n * (n - id));
    terms.push_back({onsite, id});
    terms.push_back({id, onsite});
  }
  const auto d = static_cast<Index>(dim);
  return {ProductHamiltonian(dim, dim, std::move(terms)),
          ProductState(basis_vector(d, spec.occupancy_left), basis_vector(d, spec.occupancy_right))};
}

}  // namespace enttime
