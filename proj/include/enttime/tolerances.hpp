#pragma once

#include <cstddef>

namespace enttime {

inline constexpr std::size_t kMaxDim = 4096;

inline constexpr double kNormTol = 1e-10;
inline constexpr double kHermTol = 1e-10;
inline constexpr double kReconTol = 1e-10;
// Eigenvalues of a density matrix may dip this far below zero before the
// matrix is rejected; anything negative is clipped to zero for entropies.
inline constexpr double kPsdTol = -1e-12;
// Clipped negative mass beyond this triggers a warning.
inline constexpr double kClipWarnMass = 1e-9;
inline constexpr double kTraceTol = 1e-8;

inline constexpr double kDegenTol = 1e-12;
inline constexpr double kImagResidualTol = 1e-10;

inline constexpr double kTailTol = 1e-12;

}  // namespace enttime
