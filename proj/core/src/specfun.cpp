#include "gclm/specfun.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gclm::specfun {

namespace {

constexpr double kSeriesTol = 1e-16;  // relative truncation target
constexpr int kMaxTerms = 200;
// The antiderivative series F2..F4 converge only polynomially at t = 1
// (terms ~ n^{-3}..n^{-5}), so they get a much larger iteration budget.
constexpr int kMaxTermsSlow = 200000;
constexpr double kPi = std::numbers::pi;

// F(t) = sum_{n>=1} 2 t^{2n} / (4n^2-1), |t| < 1.
double F_series(double t) {
  const double t2 = t * t;
  double pw = t2, sum = 0.0;
  for (int n = 1; n <= kMaxTerms; ++n) {
    const double term = 2.0 * pw / (4.0 * n * n - 1.0);
    sum += term;
    if (term < kSeriesTol * sum) break;
    pw *= t2;
  }
  return sum;
}

// F'(t) = sum_{n>=1} 4n t^{2n-1} / (4n^2-1), |t| < 1.
double Fp_series(double t) {
  const double t2 = t * t;
  double pw = t, sum = 0.0;
  for (int n = 1; n <= kMaxTerms; ++n) {
    const double term = 4.0 * n * pw / (4.0 * n * n - 1.0);
    sum += term;
    if (term < kSeriesTol * sum) break;
    pw *= t2;
  }
  return sum;
}

// G(t) = sum_{n>=1} 4(n+1) t^{2n} / ((2n-1)(2n+1)(2n+3)), |t| < 1.
double G_series(double t) {
  const double t2 = t * t;
  double pw = t2, sum = 0.0;
  for (int n = 1; n <= kMaxTerms; ++n) {
    const double term =
        4.0 * (n + 1) * pw / ((2.0 * n - 1.0) * (2.0 * n + 1.0) * (2.0 * n + 3.0));
    sum += term;
    if (term < kSeriesTol * sum) break;
    pw *= t2;
  }
  return sum;
}

// G(1/t) = 4/3 - sum_{n>=1} 4n t^{2n+2} / ((2n-1)(2n+1)(2n+3)), |t| < 1.
double G_recip_series(double t) {
  const double t2 = t * t;
  double pw = t2 * t2, sum = 0.0;
  for (int n = 1; n <= kMaxTerms; ++n) {
    const double term =
        4.0 * n * pw / ((2.0 * n - 1.0) * (2.0 * n + 1.0) * (2.0 * n + 3.0));
    sum += term;
    if (term < kSeriesTol * sum) break;
    pw *= t2;
  }
  return 4.0 / 3.0 - sum;
}

}  // namespace

double F(double t) {
  if (t < 0.0) throw std::domain_error("specfun::F: t must be >= 0");
  if (t < 0.5) return F_series(t);
  if (t > 2.0) return 2.0 - F_series(1.0 / t);
  if (std::abs(t - 1.0) < 1e-12) return 1.0;
  return (t * t - 1.0) / (2.0 * t) * std::log(std::abs((t + 1.0) / (t - 1.0))) + 1.0;
}

double F_prime(double t) {
  if (t < 0.0) throw std::domain_error("specfun::F_prime: t must be >= 0");
  if (std::abs(t - 1.0) < 1e-14)
    throw std::domain_error("specfun::F_prime: logarithmic singularity at t = 1");
  if (t < 0.5) return Fp_series(t);
  // F'(1/t) = t^2 F'(t)  =>  F'(t) = F'(1/t) / t^2
  if (t > 2.0) return Fp_series(1.0 / t) / (t * t);
  return (t * t + 1.0) / (2.0 * t * t) * std::log(std::abs((t + 1.0) / (t - 1.0))) -
         1.0 / t;
}

double G(double t) {
  if (t < 0.0) throw std::domain_error("specfun::G: t must be >= 0");
  if (t < 0.5) return G_series(t);
  if (t > 2.0) return G_recip_series(1.0 / t);
  if (std::abs(t - 1.0) < 1e-12) return 5.0 / 6.0;
  const double t2 = t * t;
  return (3.0 * t2 * t2 - 2.0 * t2 - 1.0) / (8.0 * t2 * t) *
             std::log(std::abs((t + 1.0) / (t - 1.0))) +
         1.0 / (4.0 * t2) + 7.0 / 12.0;
}

double F1(double t) {
  if (t < 0.0) throw std::domain_error("specfun::F1: t must be >= 0");
  if (t <= 1.0) {
    // sum 4n t^{2n+1} / ((2n-1)(2n+1)^2)
    const double t2 = t * t;
    double pw = t2 * t, sum = 0.0;
    for (int n = 1; n <= kMaxTerms; ++n) {
      const double d = (2.0 * n + 1.0);
      const double term = 4.0 * n * pw / ((2.0 * n - 1.0) * d * d);
      sum += term;
      if (term < kSeriesTol * sum) break;
      pw *= t2;
    }
    return sum;
  }
  // F1(1/s) = pi^2/4 - sum 4n s^{2n-1} / ((2n-1)^2 (2n+1)),  s = 1/t < 1
  const double s = 1.0 / t;
  const double s2 = s * s;
  double pw = s, sum = 0.0;
  for (int n = 1; n <= kMaxTerms; ++n) {
    const double d = (2.0 * n - 1.0);
    const double term = 4.0 * n * pw / (d * d * (2.0 * n + 1.0));
    sum += term;
    if (term < kSeriesTol * sum) break;
    pw *= s2;
  }
  return kPi * kPi / 4.0 - sum;
}

double F2(double t) {
  if (t < 0.0) throw std::domain_error("specfun::F2: t must be >= 0");
  const double u = (t <= 1.0) ? t : 1.0 / t;
  const double u2 = u * u;
  double pw = u2, sum = 0.0;
  for (int n = 1; n <= kMaxTermsSlow; ++n) {
    const double dm = (2.0 * n - 1.0), dp = (2.0 * n + 1.0);
    const double term = 8.0 * n * pw / (dm * dm * dp * dp);
    sum += term;
    if (term < kSeriesTol * sum) break;
    pw *= u2;
  }
  return kPi * kPi / 4.0 * u - sum;
}

double F3(double t) {
  if (t < 0.0) throw std::domain_error("specfun::F3: t must be >= 0");
  if (t <= 1.0) {
    const double t2 = t * t;
    double pw = t2 * t2 * t, sum = 0.0;  // t^{2n+3}, n = 1
    for (int n = 1; n <= kMaxTermsSlow; ++n) {
      const double dm = (2.0 * n - 1.0), dp = (2.0 * n + 1.0);
      const double term = 8.0 * n * pw / (dm * dm * dp * dp * (2.0 * n + 3.0));
      sum += term;
      if (term < kSeriesTol * sum) break;
      pw *= t2;
    }
    return kPi * kPi / 16.0 * t * t * t * t - sum;
  }
  // F3(1/s) = pi^2 s^{-2} / 8 + sum 8n s^{2n-3} / ((2n-3)(2n-1)^2 (2n+1)^2)
  const double s = 1.0 / t;
  const double s2 = s * s;
  double pw = 1.0 / s, sum = 0.0;  // s^{2n-3}, n = 1
  for (int n = 1; n <= kMaxTermsSlow; ++n) {
    const double dm = (2.0 * n - 1.0), dp = (2.0 * n + 1.0);
    const double term = 8.0 * n * pw / ((2.0 * n - 3.0) * dm * dm * dp * dp);
    sum += term;
    if (n > 2 && std::abs(term) < kSeriesTol * std::abs(sum)) break;
    pw *= s2;
  }
  return kPi * kPi / 8.0 * s2 + sum;
}

double F4(double t) {
  if (t < 0.0) throw std::domain_error("specfun::F4: t must be >= 0");
  const double u = (t <= 1.0) ? t : 1.0 / t;
  const double u2 = u * u;
  double pw = u2, sum = 0.0;
  for (int n = 1; n <= kMaxTermsSlow; ++n) {
    const double dm = (2.0 * n - 1.0), dp = (2.0 * n + 1.0);
    const double term =
        8.0 * n * pw / ((2.0 * n - 3.0) * dm * dm * dp * dp * (2.0 * n + 3.0));
    sum += term;
    if (n > 1 && std::abs(term) < kSeriesTol * std::abs(sum)) break;
    pw *= u2;
  }
  return kPi * kPi / 32.0 * u + sum;
}

const Constants& constants() {
  static const Constants c = [] {
    Constants k{};
    k.eta = 1.0 / (3.0 * 1048576.0 * std::sqrt(2.0));  // 1 / (3 * 2^20 * sqrt 2)
    k.mu_bar = 9.0 * kPi * kPi / 64.0 - 0.75;
    k.a_lower = 400.0 / (848.0 - 9.0 * kPi * kPi);
    k.a_upper = 64.0 / (176.0 - 9.0 * kPi * kPi);
    k.f4_at_1 = kPi * kPi / 32.0 - 1.0 / 6.0;
    return k;
  }();
  return c;
}

}  // namespace gclm::specfun
