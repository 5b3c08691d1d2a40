#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <utility>

namespace revsim {

struct PowerLawFit {
  double slope = 0.0;      // exponent estimate
  double intercept = 0.0;  // ln of the prefactor
  int n_points = 0;        // points used
  int n_dropped = 0;       // nonpositive values excluded
};

// Ordinary least squares of ln(y) on ln(x); the slope estimates the exponent
// of y ~ x^a. Points with y <= 0 are dropped (a power law cannot produce
// them); fewer than two usable points is an error.
inline PowerLawFit fit_scaling_exponent(std::span<const std::pair<double, double>> points) {
  PowerLawFit fit;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : points) {
    if (!(y > 0.0)) {
      ++fit.n_dropped;
      continue;
    }
    if (!(x > 0.0)) throw std::invalid_argument("fit_scaling_exponent: x must be positive");
    const double lx = std::log(x);
    const double ly = std::log(y);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++fit.n_points;
  }
  if (fit.n_points < 2)
    throw std::invalid_argument("fit_scaling_exponent: need at least 2 positive points");
  const double n = fit.n_points;
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0)
    throw std::invalid_argument("fit_scaling_exponent: degenerate abscissae");
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  return fit;
}

}  // namespace revsim
