#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>
#include <vector>

#include "enttime/diagnostics.hpp"
#include "enttime/entropy.hpp"
#include "enttime/errors.hpp"
#include "enttime/models.hpp"
#include "enttime/timescale.hpp"
#include "oracles.hpp"

using namespace enttime;

namespace {

const double kLn2 = std::numbers::ln2;

ComplexMatrix half_identity() { return ComplexMatrix(0.5 * Eigen::MatrixXcd::Identity(2, 2)); }

ComplexMatrix pure(const Eigen::VectorXcd& v) { return ComplexMatrix(v * v.adjoint()); }

BipartiteModel fock3_excited() {
  JcmSpec spec;
  spec.field = FockField{3};
  return build_jcm(spec);
}

}  // namespace

TEST(AlphaPurity, PureIsOne) {
  oracle::Rng rng(71);
  const auto v = oracle::random_unit_vector(rng, 4);
  for (int a = 1; a <= 6; ++a) EXPECT_NEAR(alpha_purity(pure(v), a), 1.0, 1e-12);
}

TEST(AlphaPurity, MaximallyMixedQubit) { EXPECT_NEAR(alpha_purity(half_identity(), 2), 0.5, 1e-15); }

TEST(AlphaPurity, MatchesMatrixPower) {
  oracle::Rng rng(72);
  for (int trial = 0; trial < 20; ++trial) {
    const auto rho = oracle::random_density(rng, 4);
    EXPECT_NEAR(alpha_purity(ComplexMatrix(rho), 3), oracle::trace_power(rho, 3), 1e-11);
  }
}

TEST(AlphaPurity, RejectsBadTrace) {
  const ComplexMatrix rho(0.51 * Eigen::MatrixXcd::Identity(2, 2));
  EXPECT_THROW(alpha_purity(rho, 2), StateError);
}

TEST(AlphaPurity, ClipsAndWarns) {
  std::vector<std::string> warnings;
  auto previous = set_warning_sink([&](const std::string& m) { warnings.push_back(m); });
  const ComplexMatrix rho{{1.0 + 5e-9, 0.0}, {0.0, -5e-9}};
  EXPECT_NEAR(alpha_purity(rho, 2), 1.0, 1e-12);
  set_warning_sink(previous);
  EXPECT_EQ(warnings.size(), 1u);
  const ComplexMatrix bad{{1.1, 0.0}, {0.0, -0.1}};
  EXPECT_THROW(alpha_purity(bad, 2), StateError);
}

TEST(RenyiEntropy, BellReducedState) { EXPECT_NEAR(renyi_entropy(half_identity(), 2), kLn2, 1e-15); }

TEST(RenyiEntropy, PureIsZero) {
  oracle::Rng rng(73);
  const auto v = oracle::random_unit_vector(rng, 3);
  for (int a = 2; a <= 8; ++a) EXPECT_NEAR(renyi_entropy(pure(v), a), 0.0, 1e-12);
}

TEST(RenyiEntropy, RejectsOrderOne) {
  try {
    renyi_entropy(half_identity(), 1);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("von_neumann"), std::string::npos);
  }
}

TEST(RenyiEntropy, FockExcitedMatchesClosedFormState) {
  JcmSpec spec;
  spec.field = FockField{3};
  const auto psi = jcm_analytic_state(spec, 0.2);
  const auto rho_a = partial_trace(psi.density_matrix(), 2, spec.n_max + 1, Subsystem::A);
  const double c2 = std::pow(std::cos(2 * 0.2), 2);
  const double want = -std::log(c2 * c2 + (1 - c2) * (1 - c2));
  EXPECT_NEAR(renyi_entropy(rho_a, 2), want, 1e-10);
  EXPECT_NEAR(renyi_from_spectrum(schmidt_spectrum(psi), 2), want, 1e-10);
}

TEST(RenyiEntropy, SpectrumFormMatchesMatrixPowers) {
  oracle::Rng rng(74);
  for (int trial = 0; trial < 20; ++trial) {
    const auto rho = oracle::random_density(rng, 5);
    for (const int a : {2, 3, 4, 8}) {
      EXPECT_NEAR(renyi_entropy(ComplexMatrix(rho), a),
                  std::log(oracle::trace_power(rho, a)) / (1.0 - a), 1e-10);
    }
  }
}

TEST(VonNeumannEntropy, Basics) {
  EXPECT_NEAR(von_neumann_entropy(half_identity()), kLn2, 1e-15);
  EXPECT_NEAR(von_neumann_entropy(pure(Eigen::VectorXcd::Unit(3, 1))), 0.0, 1e-15);
  const ComplexMatrix q{{0.25, 0.0}, {0.0, 0.75}};
  EXPECT_NEAR(von_neumann_entropy(q), -0.25 * std::log(0.25) - 0.75 * std::log(0.75), 1e-15);
}

TEST(VonNeumannEntropy, BoundedByLogDimension) {
  oracle::Rng rng(75);
  for (int trial = 0; trial < 20; ++trial) {
    const auto rho = oracle::random_density(rng, 4);
    EXPECT_LE(von_neumann_entropy(ComplexMatrix(rho)), std::log(4.0) + 1e-12);
  }
  EXPECT_NEAR(von_neumann_entropy(ComplexMatrix(0.25 * Eigen::MatrixXcd::Identity(4, 4))),
              std::log(4.0), 1e-14);
}

TEST(SchmidtSpectrum, KeepsTinyWeights) {
  // weights 1 - 1e-20 and 1e-20: the eigenvalue path cannot see this
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
  v(0) = 1.0;
  v(3) = 1e-10;
  v /= v.norm();
  const auto spec = schmidt_spectrum(BipartitePureState(2, 2, v));
  EXPECT_NEAR(spec.deficit / 1e-20, 1.0, 1e-6);
  // S_2 = -ln(p^2 + q^2) ~ 2q
  EXPECT_NEAR(renyi_from_spectrum(spec, 2) / 2e-20, 1.0, 1e-6);
  const auto w = spec.weights(3);
  ASSERT_EQ(w.size(), 3u);
  EXPECT_EQ(w[2], 0.0);
}

TEST(EntropySeries, ZeroTime) {
  const auto m = fock3_excited();
  const std::vector<int> alphas{1, 2, 5};
  const std::vector<double> grid{0.0};
  for (const auto& s : entropy_series(m.hamiltonian, m.state, alphas, grid)) {
    ASSERT_EQ(s.values.size(), 1u);
    EXPECT_LE(std::abs(s.values[0]), 1e-10);
  }
}

TEST(EntropySeries, FockExcitedRenyiTwoOverThreeUnits) {
  const auto m = fock3_excited();
  std::vector<double> grid;
  for (int k = 0; k <= 300; ++k) grid.push_back(3.0 * k / 300);
  const std::vector<int> alphas{2};
  const auto series = entropy_series(m.hamiltonian, m.state, alphas, grid, true);
  ASSERT_EQ(series.size(), 1u);
  double peak = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    EXPECT_NEAR(series[0].values[k], oracle::jcm_fock_excited_s2(1.0, 3, grid[k]), 1e-9);
    const auto& p = series[0].spectra[k];
    ASSERT_EQ(p.size(), 2u);
    EXPECT_NEAR(p[0] + p[1], 1.0, 1e-12);
    peak = std::max(peak, series[0].values[k]);
  }
  EXPECT_LE(peak, kLn2 + 1e-12);
  EXPECT_NEAR(peak, kLn2, 1e-3);
}

TEST(EntropySeries, OrdersAreMonotone) {
  oracle::Rng rng(76);
  const auto h = oracle::random_product_hamiltonian(rng, 3, 4, 4);
  const auto s = oracle::random_product_state(rng, 3, 4);
  std::vector<double> grid;
  for (int k = 0; k < 40; ++k) grid.push_back(0.05 * k);
  const std::vector<int> alphas{1, 2, 3, 4, 8};
  const auto series = entropy_series(h, s, alphas, grid);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    for (std::size_t i = 1; i < series.size(); ++i) {
      EXPECT_LE(series[i].values[k], series[i - 1].values[k] + 1e-10);
    }
  }
}

TEST(EntropySeries, GridValidation) {
  const auto m = fock3_excited();
  const std::vector<int> alphas{2};
  const std::vector<double> empty;
  const std::vector<double> descending{0.0, 0.2, 0.1};
  const std::vector<double> negative{-0.1, 0.2};
  EXPECT_THROW(entropy_series(m.hamiltonian, m.state, alphas, empty), DomainError);
  EXPECT_THROW(entropy_series(m.hamiltonian, m.state, alphas, descending), DomainError);
  EXPECT_THROW(entropy_series(m.hamiltonian, m.state, alphas, negative), DomainError);
  const std::vector<int> zero{0};
  const std::vector<double> grid{0.0};
  EXPECT_THROW(entropy_series(m.hamiltonian, m.state, zero, grid), DomainError);
}

TEST(EntropySeries, QubitWeightCurvature) {
  // d^2 p_1 / dt^2 at 0 equals -2 T^-2
  const auto m = fock3_excited();
  const EntropyEvolution ev(m.hamiltonian, m.state);
  const double h = 0.5 / 50;
  auto p1 = [&](double t) { return 1.0 - ev.spectrum(t).deficit; };
  const double d2 = (-p1(2 * h) + 16 * p1(h) - 30 * p1(0) + 16 * p1(-h) - p1(-2 * h)) / (12 * h * h);
  EXPECT_NEAR(d2 / -8.0, 1.0, 0.01);
}

TEST(CurvatureProbe, FockExcitedGrowsLikeLog) {
  const auto m = fock3_excited();
  const std::vector<double> ts{1e-2, 1e-3, 1e-4, 1e-5};
  const auto samples = von_neumann_curvature_probe(m.hamiltonian, m.state, ts);
  ASSERT_EQ(samples.size(), 4u);
  for (std::size_t k = 1; k < samples.size(); ++k) {
    const double step = samples[k].curvature - samples[k - 1].curvature;
    EXPECT_NEAR(step / (16.0 * std::log(10.0)), 1.0, 0.02);
  }
}

TEST(CurvatureProbe, StationaryStateIsFlat) {
  JcmSpec spec;
  spec.c_e = 0.0;
  spec.c_g = 1.0;
  spec.field = FockField{0};
  const auto m = build_jcm(spec);
  const std::vector<double> ts{1e-1, 1e-2, 1e-3};
  for (const auto& s : von_neumann_curvature_probe(m.hamiltonian, m.state, ts)) {
    EXPECT_EQ(s.curvature, 0.0);
  }
}

TEST(CurvatureProbe, DegenerateCaseVanishes) {
  JcmSpec spec;
  spec.c_e = 0.0;
  spec.c_g = 1.0;
  spec.field = CoherentField{3.0};
  spec.n_max = suggested_n_max(3.0);
  const auto m = build_jcm(spec);
  const std::vector<double> ts{1e-1, 1e-2, 1e-3};
  const auto samples = von_neumann_curvature_probe(m.hamiltonian, m.state, ts);
  EXPECT_LT(std::abs(samples[1].curvature), std::abs(samples[0].curvature));
  EXPECT_LT(std::abs(samples[2].curvature), std::abs(samples[1].curvature));
  EXPECT_LT(std::abs(samples[2].curvature), 1e-6);
}

TEST(CurvatureProbe, RejectsBadTimes) {
  const auto m = fock3_excited();
  const std::vector<double> ascending{1e-3, 1e-2};
  const std::vector<double> too_small{1e-9};
  EXPECT_THROW(von_neumann_curvature_probe(m.hamiltonian, m.state, ascending), DomainError);
  EXPECT_THROW(von_neumann_curvature_probe(m.hamiltonian, m.state, too_small), NumericalError);
}

TEST(EntropySeries, ThreadCountDoesNotChangeResults) {
  const auto m = fock3_excited();
  std::vector<double> grid;
  for (int k = 0; k < 64; ++k) grid.push_back(0.05 * k);
  const std::vector<int> alphas{1, 2, 8};
  ::setenv("ENTTIME_THREADS", "1", 1);
  const auto serial = entropy_series(m.hamiltonian, m.state, alphas, grid);
  ::setenv("ENTTIME_THREADS", "4", 1);
  const auto threaded = entropy_series(m.hamiltonian, m.state, alphas, grid);
  ::unsetenv("ENTTIME_THREADS");
  for (std::size_t i = 0; i < serial.size(); ++i) EXPECT_EQ(serial[i].values, threaded[i].values);
}
