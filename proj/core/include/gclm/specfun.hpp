#pragma once

// Special functions arising from the kernel of the nonlocal operator T and
// its antiderivatives, together with the sharp constants used throughout the
// solver.  All functions take t >= 0 and are evaluated by Taylor series away
// from t = 1 and by the closed form in the annulus around it.

namespace gclm::specfun {

/// F(t) = (t^2-1)/(2t) * ln|(t+1)/(t-1)| + 1.  F(0)=0, F(1)=1, F(inf)=2.
double F(double t);

/// dF/dt.  Logarithmically singular at t = 1 (throws there).
double F_prime(double t);

/// G(t) = (3t^4-2t^2-1)/(8t^3) * ln|(t+1)/(t-1)| + 1/(4t^2) + 7/12.
double G(double t);

/// Antiderivative family: F1' (t<1 branch) integrates t F(t)-type kernels.
double F1(double t);
/// F2(t) = F2(1/t); symmetric antiderivative, F2(1) = pi^2/4 - 1.
double F2(double t);
double F3(double t);
/// F4(t) = F4(1/t); F4(1) = pi^2/32 - 1/6 appears in Q(f_m).
double F4(double t);

struct Constants {
  double eta;      // minimal slope at x = 1/2 in the admissible class
  double mu_bar;   // 9 pi^2 / 64 - 3/4, the sharp upper bound for mu
  double a_lower;  // 400 / (848 - 9 pi^2)
  double a_upper;  // 64 / (176 - 9 pi^2)
  double f4_at_1;  // pi^2/32 - 1/6
};

const Constants& constants();

}  // namespace gclm::specfun
