#include "properties.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "enttime/entropy.hpp"
#include "enttime/models.hpp"
#include "enttime/timescale.hpp"
#include "oracles.hpp"

using namespace enttime;

namespace props {
namespace {

int draw_dim(oracle::Rng& rng) { return std::uniform_int_distribution<int>(2, 6)(rng); }

int draw_terms(oracle::Rng& rng) { return std::uniform_int_distribution<int>(1, 5)(rng); }

double draw_time(oracle::Rng& rng, double hi) {
  return std::uniform_real_distribution<double>(0.0, hi)(rng);
}

}  // namespace

Sweep timescale_positivity(std::uint64_t seed, int cases) {
  oracle::Rng rng(seed);
  Sweep out{cases, 0.0};
  for (int c = 0; c < cases; ++c) {
    const int da = draw_dim(rng);
    const int db = draw_dim(rng);
    const auto h = oracle::random_product_hamiltonian(rng, da, db, draw_terms(rng));
    const auto r = entanglement_timescale(h, oracle::random_product_state(rng, da, db));
    out.worst = std::max(out.worst, -std::min(r.raw_inv_sq, 0.0));
  }
  return out;
}

Sweep swap_symmetry(std::uint64_t seed, int cases) {
  oracle::Rng rng(seed);
  Sweep out{cases, 0.0};
  for (int c = 0; c < cases; ++c) {
    const int da = draw_dim(rng);
    const int db = draw_dim(rng);
    const auto h = oracle::random_product_hamiltonian(rng, da, db, draw_terms(rng));
    const auto s = oracle::random_product_state(rng, da, db);
    const double ab = entanglement_timescale(h, s).t_ent_inv_sq;
    const double ba = entanglement_timescale(h.swapped(), s.swapped()).t_ent_inv_sq;
    out.worst = std::max(out.worst, std::abs(ab - ba) / std::max(1.0, ab));
  }
  return out;
}

Sweep subsystem_symmetry(std::uint64_t seed, int cases) {
  oracle::Rng rng(seed);
  Sweep out{cases, 0.0};
  for (int c = 0; c < cases; ++c) {
    const int da = draw_dim(rng);
    const int db = draw_dim(rng);
    const auto h = oracle::random_product_hamiltonian(rng, da, db, draw_terms(rng));
    const auto s = oracle::random_product_state(rng, da, db);
    const auto psi = evolve_state(assemble(h), product_state_vector(s), draw_time(rng, 2.0));
    const auto rho = psi.density_matrix();
    const auto ra = partial_trace(rho, psi.dim_a(), psi.dim_b(), Subsystem::A);
    const auto rb = partial_trace(rho, psi.dim_a(), psi.dim_b(), Subsystem::B);
    for (const int a : {2, 3, 4, 8}) {
      out.worst = std::max(out.worst, std::abs(renyi_entropy(ra, a) - renyi_entropy(rb, a)));
    }
    out.worst = std::max(out.worst, std::abs(von_neumann_entropy(ra) - von_neumann_entropy(rb)));
  }
  return out;
}

Sweep order_monotonicity(std::uint64_t seed, int cases) {
  oracle::Rng rng(seed);
  Sweep out{cases, 0.0};
  const std::vector<int> orders{1, 2, 3, 4, 8};
  for (int c = 0; c < cases; ++c) {
    const int da = draw_dim(rng);
    const int db = draw_dim(rng);
    const auto h = oracle::random_product_hamiltonian(rng, da, db, draw_terms(rng));
    const EntropyEvolution ev(h, oracle::random_product_state(rng, da, db));
    const auto spectrum = ev.spectrum(draw_time(rng, 2.0));
    for (std::size_t i = 1; i < orders.size(); ++i) {
      const double rise = entropy_from_spectrum(spectrum, orders[i]) -
                          entropy_from_spectrum(spectrum, orders[i - 1]);
      out.worst = std::max(out.worst, rise);
    }
  }
  return out;
}

Sweep partial_trace_agreement(std::uint64_t seed, int cases) {
  oracle::Rng rng(seed);
  Sweep out{cases, 0.0};
  for (int c = 0; c < cases; ++c) {
    const int da = draw_dim(rng);
    const int db = draw_dim(rng);
    const auto rho = oracle::random_density(rng, da * db);
    const ComplexMatrix r(rho);
    const auto ours_a = partial_trace(r, da, db, Subsystem::A).matrix();
    const auto ours_b = partial_trace(r, da, db, Subsystem::B).matrix();
    out.worst = std::max(out.worst,
                         (ours_a - oracle::partial_trace_keep_a(rho, da, db)).cwiseAbs().maxCoeff());
    out.worst = std::max(out.worst,
                         (ours_b - oracle::partial_trace_keep_b(rho, da, db)).cwiseAbs().maxCoeff());
  }
  return out;
}

Sweep jcm_propagator_agreement(std::uint64_t seed, int cases) {
  oracle::Rng rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Sweep out{cases, 0.0};
  for (int c = 0; c < cases; ++c) {
    JcmSpec spec;
    spec.lambda = 0.2 + 1.8 * u(rng);
    spec.omega = 2.0 * u(rng);
    const double theta = std::numbers::pi * u(rng);
    spec.c_e = std::cos(theta / 2);
    spec.c_g = std::polar(std::sin(theta / 2), 2 * std::numbers::pi * u(rng));
    if (c % 2 == 0) {
      const int n = static_cast<int>(3 * u(rng));
      spec.field = FockField{n};
      spec.n_max = std::min(5, n + 1 + static_cast<int>(3 * u(rng)));
    } else {
      // |nu| small enough that the tail fits a six-level field
      const Complex nu = std::polar(0.05 * u(rng), 2 * std::numbers::pi * u(rng));
      spec.field = CoherentField{nu};
      spec.n_max = std::max(1, minimal_n_max(nu));
    }
    const double t = 4.0 * u(rng);
    const auto m = build_jcm(spec);
    const auto numeric =
        oracle::evolve(oracle::assemble(m.hamiltonian), oracle::product_vector(m.state), t);
    const auto analytic = jcm_analytic_state(spec, t).amplitudes();
    out.worst = std::max(out.worst, (numeric - analytic).cwiseAbs().maxCoeff());
  }
  return out;
}

}  // namespace props
