#pragma once

#include <cstddef>
#include <vector>

#include "enttime/linalg.hpp"

namespace enttime {

// One product term A (x) B of a bipartite Hamiltonian.
struct OperatorPair {
  ComplexMatrix a;
  ComplexMatrix b;
};

// H = sum_n A_n (x) B_n. Individual terms may be non-Hermitian; only the
// assembled sum has to be. Term order is preserved, so covariance indices
// in a TimescaleReport refer to positions in terms().
class ProductHamiltonian {
 public:
  ProductHamiltonian(std::size_t dim_a, std::size_t dim_b, std::vector<OperatorPair> terms);

  std::size_t dim_a() const noexcept { return dim_a_; }
  std::size_t dim_b() const noexcept { return dim_b_; }
  std::size_t dim() const noexcept { return dim_a_ * dim_b_; }
  const std::vector<OperatorPair>& terms() const noexcept { return terms_; }

  // Same operator with the tensor factors exchanged (B_n (x) A_n).
  ProductHamiltonian swapped() const;

 private:
  std::size_t dim_a_;
  std::size_t dim_b_;
  std::vector<OperatorPair> terms_;
};

// |psi>_A (x) |psi>_B with each factor normalized.
class ProductState {
 public:
  ProductState(ComplexVector psi_a, ComplexVector psi_b);

  std::size_t dim_a() const noexcept { return static_cast<std::size_t>(psi_a_.size()); }
  std::size_t dim_b() const noexcept { return static_cast<std::size_t>(psi_b_.size()); }
  const ComplexVector& psi_a() const noexcept { return psi_a_; }
  const ComplexVector& psi_b() const noexcept { return psi_b_; }

  ProductState swapped() const { return ProductState(psi_b_, psi_a_); }

 private:
  ComplexVector psi_a_;
  ComplexVector psi_b_;
};

// Dense sum_n kron(A_n, B_n). Throws ModelError naming the worst
// off-diagonal residual when the sum is not Hermitian.
ComplexMatrix assemble(const ProductHamiltonian& h);

BipartitePureState product_state_vector(const ProductState& s);

}  // namespace enttime
