#pragma once

#include <span>

namespace enttime {

// Ordinary least squares y ~ intercept + slope * x.
struct LineFit {
  double intercept = 0.0;
  double slope = 0.0;
  double r_squared = 0.0;
};

LineFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace enttime
