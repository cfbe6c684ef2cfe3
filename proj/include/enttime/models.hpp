#pragma once

// Builders for the two worked systems: the resonant Jaynes-Cummings model
// (atom = subsystem A, truncated field mode = subsystem B) and the boundary
// pair of a Bose-Hubbard chain (left site = A, right site = B).
//
// Atom basis: index 0 = |e>, index 1 = |g>, so sigma_z = diag(+1, -1).
// Field basis: Fock states |0> ... |n_max>. The truncated creation operator
// has no |n_max> -> |n_max + 1> element, which keeps a^dagger = (a)^dagger
// and leaves |e, n_max> decoupled from the interaction.

#include <variant>

#include "enttime/hamiltonian.hpp"
#include "enttime/linalg.hpp"
#include "enttime/tolerances.hpp"

namespace enttime {

struct FockField {
  int n = 0;
};

struct CoherentField {
  Complex nu{0.0, 0.0};
};

using FieldState = std::variant<FockField, CoherentField>;

struct JcmSpec {
  double lambda = 1.0;  // coupling rate
  double omega = 1.0;   // common atomic and field frequency (resonance)
  int n_max = 10;
  Complex c_g{0.0, 0.0};
  Complex c_e{1.0, 0.0};
  FieldState field = FockField{0};
};

struct BoseHubbardBoundarySpec {
  double j_rate = 1.0;  // tunnelling J
  double u = 0.0;       // on-site interaction U
  int n_per_site_max = 2;
  int occupancy_left = 1;
  int occupancy_right = 1;
};

struct BipartiteModel {
  ProductHamiltonian hamiltonian;
  ProductState state;
};

ComplexMatrix annihilation(int n_max);
ComplexMatrix creation(int n_max);
ComplexMatrix number_operator(int n_max);
ComplexMatrix sigma_z();
ComplexMatrix sigma_minus();  // |g><e|
ComplexMatrix sigma_plus();   // |e><g|

// Poisson weight of the coherent state beyond the cutoff.
double coherent_tail_mass(Complex nu, int n_max);
// Smallest cutoff whose tail mass is within tail_tol.
int minimal_n_max(Complex nu, double tail_tol = kTailTol);
// Rule-of-thumb cutoff |nu|^2 + 10|nu| + 20 quoted in truncation errors.
int suggested_n_max(Complex nu);

// Throws ModelError / TruncationError for an invalid spec.
void validate(const JcmSpec& spec);

// Field amplitudes C_0 ... C_n_max, normalized on the truncated space.
ComplexVector field_amplitudes(const JcmSpec& spec);

// Terms in order: (omega/2 sigma_z, I), (I, omega a^dagger a),
// (lambda sigma_-, a^dagger), (lambda sigma_+, a).
BipartiteModel build_jcm(const JcmSpec& spec);

// Closed-form state at time t, including the resonant free phases, on the
// truncated space.
BipartitePureState jcm_analytic_state(const JcmSpec& spec, double t);

// Series form of T_ent^-2 for an exactly excited or exactly ground atom;
// other atomic states fall back to entanglement_timescale.
double jcm_timescale_closed_form(const JcmSpec& spec);

struct LogDivergence {
  double constant = 0.0;
  double log_coefficient = 0.0;  // multiplies ln t
};

// Small-t form d^2 S/dt^2 ~ constant + log_coefficient * ln t of the von
// Neumann entropy for an initially excited atom.
LogDivergence jcm_log_divergence_coefficient(const JcmSpec& spec);

void validate(const BoseHubbardBoundarySpec& spec);

// Terms: (-J a^dagger, a), (-J a, a^dagger) and, when U != 0,
// (U/2 n(n-1), I), (I, U/2 n(n-1)). Initial state |n_L> (x) |n_R>.
BipartiteModel build_bose_hubbard_boundary(const BoseHubbardBoundarySpec& spec);

}  // namespace enttime
