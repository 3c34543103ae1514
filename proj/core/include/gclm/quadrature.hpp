#pragma once

#include <array>
#include <cstddef>

// Composite Gauss-Legendre quadrature helpers shared by the transform and
// fixed-point modules.  All routines are panel-based: callers supply panel
// edges (usually the profile grid nodes) and integrands are assumed smooth
// inside each panel.

namespace gclm::quad {

// 8-point Gauss-Legendre rule on [-1, 1].
inline constexpr std::array<double, 8> gl8_x = {
    -0.9602898564975362, -0.7966664774136267, -0.5255324099163290,
    -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
    0.7966664774136267,  0.9602898564975362};
inline constexpr std::array<double, 8> gl8_w = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
    0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
    0.2223810344533745, 0.1012285362903763};

template <typename Fn>
double gauss8(Fn&& f, double a, double b) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t k = 0; k < 8; ++k) sum += gl8_w[k] * f(mid + half * gl8_x[k]);
  return sum * half;
}

// Composite rule over [a, b] with n equal panels.
template <typename Fn>
double gauss8_composite(Fn&& f, double a, double b, int n) {
  double sum = 0.0;
  const double h = (b - a) / n;
  for (int i = 0; i < n; ++i) sum += gauss8(f, a + i * h, a + (i + 1) * h);
  return sum;
}

// Integrate over [a, b] with panels graded geometrically towards the
// endpoint `sing` (= a or b), which may carry an integrable singularity.
// `levels` subpanels shrink by `ratio` towards the singular end; the
// innermost gap of relative size ratio^levels is dropped (integrand must be
// integrable there).
template <typename Fn>
double gauss8_graded(Fn&& f, double a, double b, double sing, int levels,
                     double ratio = 0.25) {
  const double len = b - a;
  if (len <= 0.0) return 0.0;
  double sum = 0.0;
  double frac = 1.0;
  if (sing <= a) {  // singularity at the left end
    for (int l = 0; l < levels; ++l) {
      const double lo = a + len * frac * ratio, hi = a + len * frac;
      sum += gauss8(f, lo, hi);
      frac *= ratio;
    }
  } else {  // singularity at the right end
    for (int l = 0; l < levels; ++l) {
      const double lo = b - len * frac, hi = b - len * frac * ratio;
      sum += gauss8(f, lo, hi);
      frac *= ratio;
    }
  }
  return sum;
}

}  // namespace gclm::quad
