#include "enttime/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "enttime/errors.hpp"
#include "enttime/tolerances.hpp"

namespace enttime {
namespace {

using Index = Eigen::Index;

Index idx(std::size_t n) { return static_cast<Index>(n); }

void require_finite(const Eigen::MatrixXcd& m) {
  if (m.rows() < 1 || m.cols() < 1) {
    throw DimensionError("matrix must have at least one row and one column");
  }
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      const Complex z = m(i, j);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw NumericalError("non-finite matrix entry at (" + std::to_string(i) +
                             ", " + std::to_string(j) + ")");
      }
    }
  }
}

double max_abs(const Eigen::MatrixXcd& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace

ComplexMatrix::ComplexMatrix(Eigen::MatrixXcd m) : m_(std::move(m)) {
  require_finite(m_);
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols,
                             std::span<const Complex> row_major) {
  if (row_major.size() != rows * cols) {
    throw DimensionError("expected " + std::to_string(rows * cols) +
                         " entries, got " + std::to_string(row_major.size()));
  }
  m_.resize(idx(rows), idx(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) m_(idx(i), idx(j)) = row_major[i * cols + j];
  }
  require_finite(m_);
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  const std::size_t n_rows = rows.size();
  const std::size_t n_cols = n_rows == 0 ? 0 : rows.begin()->size();
  m_.resize(idx(n_rows), idx(n_cols));
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != n_cols) throw DimensionError("ragged matrix literal");
    std::size_t j = 0;
    for (const Complex& z : row) m_(idx(i), idx(j++)) = z;
    ++i;
  }
  require_finite(m_);
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  return ComplexMatrix(Eigen::MatrixXcd::Identity(idx(n), idx(n)));
}

ComplexMatrix ComplexMatrix::zero(std::size_t rows, std::size_t cols) {
  return ComplexMatrix(Eigen::MatrixXcd::Zero(idx(rows), idx(cols)));
}

ComplexMatrix ComplexMatrix::adjoint() const { return ComplexMatrix(m_.adjoint()); }

Complex ComplexMatrix::trace() const {
  if (!is_square()) throw DimensionError("trace of a non-square matrix");
  return m_.trace();
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("matrix sum with mismatched shapes");
  }
  return ComplexMatrix(a.m_ + b.m_);
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("matrix difference with mismatched shapes");
  }
  return ComplexMatrix(a.m_ - b.m_);
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("matrix product with mismatched shapes");
  return ComplexMatrix(a.m_ * b.m_);
}

ComplexMatrix operator*(Complex s, const ComplexMatrix& a) { return ComplexMatrix(s * a.m_); }

BipartitePureState::BipartitePureState(std::size_t dim_a, std::size_t dim_b,
                                       ComplexVector amplitudes)
    : dim_a_(dim_a), dim_b_(dim_b), amplitudes_(std::move(amplitudes)) {
  if (dim_a_ < 1 || dim_b_ < 1) throw DimensionError("subsystem dimensions must be >= 1");
  if (static_cast<std::size_t>(amplitudes_.size()) != dim_a_ * dim_b_) {
    throw DimensionError("state has " + std::to_string(amplitudes_.size()) +
                         " amplitudes, expected " + std::to_string(dim_a_ * dim_b_));
  }
  if (!amplitudes_.allFinite()) throw NumericalError("non-finite state amplitude");
  const double norm = amplitudes_.norm();
  if (std::abs(norm - 1.0) > kNormTol) {
    throw StateError("state norm " + std::to_string(norm) + " deviates from 1");
  }
}

Eigen::MatrixXcd BipartitePureState::coefficient_matrix() const {
  using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  return Eigen::Map<const RowMajor>(amplitudes_.data(), idx(dim_a_), idx(dim_b_));
}

ComplexMatrix BipartitePureState::density_matrix() const {
  return ComplexMatrix(amplitudes_ * amplitudes_.adjoint());
}

HermiticityResidual hermiticity_residual(const ComplexMatrix& m) {
  if (!m.is_square()) throw DimensionError("hermiticity check on a non-square matrix");
  HermiticityResidual worst;
  const auto& a = m.matrix();
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = i; j < a.cols(); ++j) {
      const double r = std::abs(a(i, j) - std::conj(a(j, i)));
      if (r > worst.value) {
        worst = {r, static_cast<std::size_t>(i), static_cast<std::size_t>(j)};
      }
    }
  }
  return worst;
}

bool is_hermitian(const ComplexMatrix& m) {
  return hermiticity_residual(m).value <= kHermTol * std::max(1.0, max_abs(m.matrix()));
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t rows = a.rows() * b.rows();
  const std::size_t cols = a.cols() * b.cols();
  if (rows > kMaxDim || cols > kMaxDim) {
    throw DimensionError("kron result " + std::to_string(rows) + "x" +
                         std::to_string(cols) + " exceeds the maximum dimension " +
                         std::to_string(kMaxDim));
  }
  const auto& am = a.matrix();
  const auto& bm = b.matrix();
  Eigen::MatrixXcd out(idx(rows), idx(cols));
  for (Index i = 0; i < am.rows(); ++i) {
    for (Index j = 0; j < am.cols(); ++j) {
      out.block(i * bm.rows(), j * bm.cols(), bm.rows(), bm.cols()) = am(i, j) * bm;
    }
  }
  return ComplexMatrix(std::move(out));
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, std::size_t dim_a,
                            std::size_t dim_b, Subsystem keep) {
  const std::size_t dim = dim_a * dim_b;
  if (dim_a < 1 || dim_b < 1 || rho.rows() != dim || rho.cols() != dim) {
    throw DimensionError("partial_trace: operator is " + std::to_string(rho.rows()) +
                         "x" + std::to_string(rho.cols()) + ", expected " +
                         std::to_string(dim) + "x" + std::to_string(dim));
  }
  if (!is_hermitian(rho)) {
    throw StateError("partial_trace: operator is not Hermitian (residual " +
                     std::to_string(hermiticity_residual(rho).value) + ")");
  }
  const auto& r = rho.matrix();
  const Index na = idx(dim_a);
  const Index nb = idx(dim_b);
  if (keep == Subsystem::A) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(na, na);
    for (Index i = 0; i < na; ++i) {
      for (Index ip = 0; ip < na; ++ip) {
        // Diagonal of the (i, ip) block of size dim_b.
        out(i, ip) = r.block(i * nb, ip * nb, nb, nb).trace();
      }
    }
    return ComplexMatrix(std::move(out));
  }
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(nb, nb);
  for (Index i = 0; i < na; ++i) out += r.block(i * nb, i * nb, nb, nb);
  return ComplexMatrix(std::move(out));
}

HermitianSpectrum eig_hermitian(const ComplexMatrix& m) {
  if (!m.is_square()) throw DimensionError("eig_hermitian: matrix is not square");
  if (!is_hermitian(m)) {
    const auto r = hermiticity_residual(m);
    throw NumericalError("eig_hermitian: input not Hermitian, residual " +
                         std::to_string(r.value) + " at (" + std::to_string(r.row) +
                         ", " + std::to_string(r.col) + ")");
  }
  const Eigen::MatrixXcd sym = 0.5 * (m.matrix() + m.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eig_hermitian: eigensolver did not converge (dim " +
                         std::to_string(m.rows()) + ")");
  }
  const Eigen::MatrixXcd& v = solver.eigenvectors();
  const RealVector& w = solver.eigenvalues();
  const double residual = max_abs(v * w.asDiagonal() * v.adjoint() - sym);
  const double scale = std::max(1.0, max_abs(sym));
  if (residual > kReconTol * scale) {
    throw NumericalError("eig_hermitian: reconstruction residual " +
                         std::to_string(residual) + " exceeds tolerance (scale " +
                         std::to_string(scale) + ")");
  }
  return HermitianSpectrum{w, ComplexMatrix(v)};
}

Propagator::Propagator(const ComplexMatrix& hamiltonian)
    : spectrum_(eig_hermitian(hamiltonian)) {}

BipartitePureState Propagator::evolve(const BipartitePureState& psi0, double t) const {
  if (psi0.dim() != dim()) {
    throw DimensionError("propagator dimension " + std::to_string(dim()) +
                         " does not match state dimension " + std::to_string(psi0.dim()));
  }
  if (t == 0.0) return psi0;
  const auto& v = spectrum_.eigenvectors.matrix();
  ComplexVector coeffs = v.adjoint() * psi0.amplitudes();
  for (Index k = 0; k < coeffs.size(); ++k) {
    coeffs(k) *= std::polar(1.0, -spectrum_.eigenvalues(k) * t);
  }
  ComplexVector out = v * coeffs;
  const double norm = out.norm();
  if (std::abs(norm - 1.0) > kNormTol) {
    throw NumericalError("evolve: norm drifted to " + std::to_string(norm));
  }
  return BipartitePureState(psi0.dim_a(), psi0.dim_b(), std::move(out));
}

BipartitePureState evolve_state(const ComplexMatrix& h, const BipartitePureState& psi0,
                                double t) {
  if (h.rows() != psi0.dim() || h.cols() != psi0.dim()) {
    throw DimensionError("evolve_state: Hamiltonian is " + std::to_string(h.rows()) +
                         "x" + std::to_string(h.cols()) + ", state dimension " +
                         std::to_string(psi0.dim()));
  }
  return Propagator(h).evolve(psi0, t);
}

}  // namespace enttime
