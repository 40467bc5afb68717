#pragma once

#include <functional>
#include <span>

namespace heic {

struct QuadratureConfig {
  double abs_tol = 1e-10;
  int max_panels = 1 << 14;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int panels = 0;
};

/// Globally adaptive Gauss-Legendre quadrature of f over [a, b].
///
/// The interval is first cut at every point of `breakpoints` lying inside
/// (a, b), so an integrand that is smooth on each piece converges
/// spectrally. Each panel is scored by the difference between the 20-point
/// rule on the whole panel and on its two halves; the worst panel is bisected
/// until the summed score drops below cfg.abs_tol. Throws QuadratureError
/// (with the best estimate) once cfg.max_panels is reached.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           std::span<const double> breakpoints, const QuadratureConfig& cfg = {});

}  // namespace heic
