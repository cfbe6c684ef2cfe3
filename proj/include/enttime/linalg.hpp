#pragma once

// Dense complex linear algebra shared by every other module.
//
// Bipartite index convention (fixed throughout the library and its tests):
// basis vector |i>_A (x) |j>_B sits at flat index i * dim_b + j, and operator
// entries follow the same row/column ordering.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace enttime {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Dense complex matrix with at least one row and column and finite entries.
class ComplexMatrix {
 public:
  explicit ComplexMatrix(Eigen::MatrixXcd m);
  ComplexMatrix(std::size_t rows, std::size_t cols,
                std::span<const Complex> row_major);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zero(std::size_t rows, std::size_t cols);

  std::size_t rows() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  std::size_t cols() const noexcept { return static_cast<std::size_t>(m_.cols()); }
  bool is_square() const noexcept { return m_.rows() == m_.cols(); }

  Complex operator()(std::size_t i, std::size_t j) const {
    return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

  const Eigen::MatrixXcd& matrix() const noexcept { return m_; }

  ComplexMatrix adjoint() const;
  Complex trace() const;

  friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(Complex s, const ComplexMatrix& a);

 private:
  Eigen::MatrixXcd m_;
};

enum class Subsystem { A, B };

// Normalized pure state on a dim_a x dim_b product space.
class BipartitePureState {
 public:
  BipartitePureState(std::size_t dim_a, std::size_t dim_b, ComplexVector amplitudes);

  std::size_t dim_a() const noexcept { return dim_a_; }
  std::size_t dim_b() const noexcept { return dim_b_; }
  std::size_t dim() const noexcept { return dim_a_ * dim_b_; }
  const ComplexVector& amplitudes() const noexcept { return amplitudes_; }

  Complex amplitude(std::size_t i, std::size_t j) const {
    return amplitudes_(static_cast<Eigen::Index>(i * dim_b_ + j));
  }

  // Psi(i, j) = amplitude(i, j); the Schmidt weights are its squared
  // singular values.
  Eigen::MatrixXcd coefficient_matrix() const;

  // |psi><psi| on the full space.
  ComplexMatrix density_matrix() const;

 private:
  std::size_t dim_a_;
  std::size_t dim_b_;
  ComplexVector amplitudes_;
};

struct HermitianSpectrum {
  RealVector eigenvalues;      // ascending
  ComplexMatrix eigenvectors;  // unitary, eigenvectors in columns
};

struct HermiticityResidual {
  double value = 0.0;  // max |m(i,j) - conj(m(j,i))|
  std::size_t row = 0;
  std::size_t col = 0;
};

HermiticityResidual hermiticity_residual(const ComplexMatrix& m);

// True when the residual is within kHermTol relative to max(1, max|m_ij|).
bool is_hermitian(const ComplexMatrix& m);

// (a (x) b)[i*rows_b + k, j*cols_b + l] = a[i,j] * b[k,l].
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Reduced operator on the kept factor of a (dim_a*dim_b)^2 operator.
ComplexMatrix partial_trace(const ComplexMatrix& rho, std::size_t dim_a,
                            std::size_t dim_b, Subsystem keep);

// Symmetrizes (m + m^dagger)/2 before decomposing; throws NumericalError if
// the reconstruction residual exceeds kReconTol (relative to max(1, |m|)).
HermitianSpectrum eig_hermitian(const ComplexMatrix& m);

// exp(-i H t) applied through a one-time eigendecomposition of H (hbar = 1).
class Propagator {
 public:
  explicit Propagator(const ComplexMatrix& hamiltonian);

  std::size_t dim() const noexcept { return spectrum_.eigenvectors.rows(); }
  const HermitianSpectrum& spectrum() const noexcept { return spectrum_; }

  BipartitePureState evolve(const BipartitePureState& psi0, double t) const;

 private:
  HermitianSpectrum spectrum_;
};

BipartitePureState evolve_state(const ComplexMatrix& h,
                                const BipartitePureState& psi0, double t);

}  // namespace enttime
