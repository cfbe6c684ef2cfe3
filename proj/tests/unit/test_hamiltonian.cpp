#include <gtest/gtest.h>

#include <numbers>

#include "enttime/entropy.hpp"
#include "enttime/errors.hpp"
#include "enttime/hamiltonian.hpp"
#include "enttime/models.hpp"
#include "oracles.hpp"

using namespace enttime;

TEST(Assemble, SingleTerm) {
  const ProductHamiltonian h(2, 2, {{sigma_z(), ComplexMatrix::identity(2)}});
  Eigen::VectorXcd d(4);
  d << 1.0, 1.0, -1.0, -1.0;
  EXPECT_EQ(assemble(h).matrix(), Eigen::MatrixXcd(d.asDiagonal()));
}

TEST(Assemble, JcmMatchesDirectConstruction) {
  const int n_max = 3;
  const ProductHamiltonian h(
      2, n_max + 1,
      {{0.5 * sigma_z(), ComplexMatrix::identity(n_max + 1)},
       {ComplexMatrix::identity(2), number_operator(n_max)},
       {sigma_minus(), creation(n_max)},
       {sigma_plus(), annihilation(n_max)}});
  const auto m = assemble(h);
  EXPECT_TRUE(is_hermitian(m));
  EXPECT_LE((m.matrix() - oracle::jcm_hamiltonian(1.0, 1.0, n_max)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Assemble, AdjointPairIsHermitian) {
  const int n_max = 4;
  const ProductHamiltonian h(2, n_max + 1,
                             {{sigma_plus(), annihilation(n_max)},
                              {sigma_minus(), creation(n_max)}});
  EXPECT_FALSE(is_hermitian(kron(sigma_plus(), annihilation(n_max))));
  EXPECT_TRUE(is_hermitian(assemble(h)));
}

TEST(Assemble, NonHermitianSumNamesResidual) {
  const ProductHamiltonian h(2, 3, {{sigma_plus(), annihilation(2)}});
  try {
    assemble(h);
    FAIL() << "expected ModelError";
  } catch (const ModelError& e) {
    EXPECT_NE(std::string(e.what()).find("residual"), std::string::npos);
  }
}

TEST(Assemble, MatchesLoopOracle) {
  oracle::Rng rng(51);
  for (int trial = 0; trial < 20; ++trial) {
    const auto h = oracle::random_product_hamiltonian(rng, 3, 4, 5);
    EXPECT_LE((assemble(h).matrix() - oracle::assemble(h)).cwiseAbs().maxCoeff(), 1e-13);
  }
}

TEST(ProductHamiltonian, Validation) {
  EXPECT_THROW(ProductHamiltonian(2, 2, {}), ModelError);
  EXPECT_THROW(ProductHamiltonian(2, 2, {{ComplexMatrix::identity(3), ComplexMatrix::identity(2)}}),
               DimensionError);
  EXPECT_THROW(ProductHamiltonian(2, 2, {{ComplexMatrix::identity(2), ComplexMatrix::zero(2, 3)}}),
               DimensionError);
  EXPECT_THROW(ProductHamiltonian(100, 100, {{ComplexMatrix::identity(100),
                                              ComplexMatrix::identity(100)}}),
               DimensionError);
}

TEST(ProductHamiltonian, SwappedExchangesFactors) {
  oracle::Rng rng(52);
  const auto h = oracle::random_product_hamiltonian(rng, 2, 3, 3);
  const auto s = h.swapped();
  ASSERT_EQ(s.dim_a(), 3u);
  ASSERT_EQ(s.terms().size(), 3u);
  for (std::size_t n = 0; n < 3; ++n) {
    EXPECT_EQ(s.terms()[n].a.matrix(), h.terms()[n].b.matrix());
    EXPECT_EQ(s.terms()[n].b.matrix(), h.terms()[n].a.matrix());
  }
}

TEST(ProductState, RejectsUnnormalizedFactor) {
  Eigen::VectorXcd a(2);
  a << 1.0, 0.1;
  EXPECT_THROW(ProductState(a, Eigen::VectorXcd::Unit(2, 0)), StateError);
}

TEST(ProductStateVector, ExcitedVacuum) {
  const ProductState s(Eigen::VectorXcd::Unit(2, 0), Eigen::VectorXcd::Unit(4, 0));
  const auto v = product_state_vector(s);
  EXPECT_EQ(v.amplitudes(), Eigen::VectorXcd::Unit(8, 0));
}

TEST(ProductStateVector, SuperposedAtomOnePhoton) {
  Eigen::VectorXcd atom(2);
  atom << 1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2;
  const ProductState s(atom, Eigen::VectorXcd::Unit(3, 1));
  const auto v = product_state_vector(s);
  EXPECT_NEAR(std::abs(v.amplitude(0, 1) - 1.0 / std::numbers::sqrt2), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(v.amplitude(1, 1) - 1.0 / std::numbers::sqrt2), 0.0, 1e-15);
  EXPECT_NEAR((v.amplitudes().cwiseAbs2().sum()), 1.0, 1e-15);
  int nonzero = 0;
  for (Eigen::Index i = 0; i < v.amplitudes().size(); ++i) nonzero += std::abs(v.amplitudes()(i)) > 0;
  EXPECT_EQ(nonzero, 2);
}

TEST(ProductStateVector, RandomFactorsAreSeparable) {
  oracle::Rng rng(53);
  for (int trial = 0; trial < 30; ++trial) {
    const auto s = oracle::random_product_state(rng, 3, 5);
    const auto v = product_state_vector(s);
    EXPECT_LE((v.amplitudes() - oracle::product_vector(s)).cwiseAbs().maxCoeff(), 1e-15);
    const auto rho = v.density_matrix();
    const auto ra = partial_trace(rho, 3, 5, Subsystem::A);
    const auto rb = partial_trace(rho, 3, 5, Subsystem::B);
    // rank one: largest eigenvalue 1, the rest 0
    EXPECT_NEAR(eig_hermitian(ra).eigenvalues(2), 1.0, 1e-12);
    EXPECT_NEAR(eig_hermitian(rb).eigenvalues(4), 1.0, 1e-12);
    EXPECT_LE(std::abs(renyi_entropy(ra, 2)), 1e-10);
    EXPECT_LE(std::abs(renyi_entropy(rb, 2)), 1e-10);
  }
}
