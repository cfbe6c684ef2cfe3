#include "enttime/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "enttime/errors.hpp"
#include "enttime/tolerances.hpp"

namespace enttime {

ProductHamiltonian::ProductHamiltonian(std::size_t dim_a, std::size_t dim_b,
                                       std::vector<OperatorPair> terms)
    : dim_a_(dim_a), dim_b_(dim_b), terms_(std::move(terms)) {
  if (dim_a_ < 1 || dim_b_ < 1) throw DimensionError("subsystem dimensions must be >= 1");
  if (dim_a_ * dim_b_ > kMaxDim) {
    throw DimensionError("total dimension " + std::to_string(dim_a_ * dim_b_) +
                         " exceeds the maximum " + std::to_string(kMaxDim));
  }
  if (terms_.empty()) throw ModelError("a product Hamiltonian needs at least one term");
  for (std::size_t n = 0; n < terms_.size(); ++n) {
    const auto& [a, b] = terms_[n];
    if (a.rows() != dim_a_ || a.cols() != dim_a_) {
      throw DimensionError("term " + std::to_string(n) + ": A is " + std::to_string(a.rows()) +
                           "x" + std::to_string(a.cols()) + ", expected " +
                           std::to_string(dim_a_) + "x" + std::to_string(dim_a_));
    }
    if (b.rows() != dim_b_ || b.cols() != dim_b_) {
      throw DimensionError("term " + std::to_string(n) + ": B is " + std::to_string(b.rows()) +
                           "x" + std::to_string(b.cols()) + ", expected " +
                           std::to_string(dim_b_) + "x" + std::to_string(dim_b_));
    }
  }
}

ProductHamiltonian ProductHamiltonian::swapped() const {
  std::vector<OperatorPair> flipped;
  flipped.reserve(terms_.size());
  for (const auto& [a, b] : terms_) flipped.push_back({b, a});
  return ProductHamiltonian(dim_b_, dim_a_, std::move(flipped));
}

namespace {

ComplexVector checked_factor(ComplexVector v, const char* name) {
  if (v.size() < 1) throw DimensionError(std::string(name) + " is empty");
  if (!v.allFinite()) throw NumericalError(std::string(name) + " has a non-finite amplitude");
  const double norm = v.norm();
  if (std::abs(norm - 1.0) > kNormTol) {
    throw StateError(std::string(name) + " norm " + std::to_string(norm) + " deviates from 1");
  }
  return v / norm;
}

}  // namespace

ProductState::ProductState(ComplexVector psi_a, ComplexVector psi_b)
    : psi_a_(checked_factor(std::move(psi_a), "psi_a")),
      psi_b_(checked_factor(std::move(psi_b), "psi_b")) {}

ComplexMatrix assemble(const ProductHamiltonian& h) {
  const auto dim = static_cast<Eigen::Index>(h.dim());
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [a, b] : h.terms()) sum += kron(a, b).matrix();
  ComplexMatrix out(std::move(sum));
  if (!is_hermitian(out)) {
    const auto r = hermiticity_residual(out);
    throw ModelError("assembled Hamiltonian is not Hermitian: worst residual " +
                     std::to_string(r.value) + " between entries (" + std::to_string(r.row) +
                     ", " + std::to_string(r.col) + ") and (" + std::to_string(r.col) + ", " +
                     std::to_string(r.row) + ")");
  }
  return out;
}

BipartitePureState product_state_vector(const ProductState& s) {
  const std::size_t na = s.dim_a();
  const std::size_t nb = s.dim_b();
  ComplexVector amps(static_cast<Eigen::Index>(na * nb));
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < nb; ++j) {
      amps(static_cast<Eigen::Index>(i * nb + j)) =
          s.psi_a()(static_cast<Eigen::Index>(i)) * s.psi_b()(static_cast<Eigen::Index>(j));
    }
  }
  return BipartitePureState(na, nb, std::move(amps));
}

}  // namespace enttime
