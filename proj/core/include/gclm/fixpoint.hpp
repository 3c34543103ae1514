#pragma once

#include <cmath>
#include <limits>
#include <map>
#include <optional>

#include "gclm/profile.hpp"
#include "gclm/transform.hpp"

// Fixed-point machinery: the profile map
//   R_a(f) = g^{1/a} exp( (1-a)/a \int_0^x (g(y)-1)/(y g(y)) dy ),
//   g = (1 + 2a T(f) / ((1-a/3) c(f)))_+,
// its a -> 0 limit R_0, and the damped-free Picard iteration
// f_{n+1} = renormalize(R_a(f_n)) used to compute self-similar profiles.

namespace gclm::fixpoint {

struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolveConfig {
  double a = 0.0;
  double tol = 1e-7;  // weighted sup-norm residual target
  int max_iter = 50;
  profile::GridSpec grid{};
  profile::SeedKind seed_kind = profile::SeedKind::SeedLorentzian;
  std::optional<profile::ProfileGrid> seed;  // overrides seed_kind when set
  double a_switch = 1e-6;   // |a| below this uses the R_0 limit formula
  double class_tol = 1e-6;  // relative tolerance on 2ab - (1-a/3)c for the
                            // gaussian-class boundary
};

struct SupportInfo {
  profile::TailKind kind = profile::TailKind::Algebraic;
  double L = std::numeric_limits<double>::infinity();  // support end
  double p_a = std::numeric_limits<double>::quiet_NaN();  // vanishing order
  double r = std::numeric_limits<double>::quiet_NaN();    // decay exponent
  double C = std::numeric_limits<double>::quiet_NaN();    // tail coefficient
};

struct SolveResult {
  profile::ProfileGrid profile;
  transform::TransformField field;  // transform data at the final profile
  double a = 0.0;
  double b = 0.0, c = 0.0, k = 0.0, mu = 0.0, Q = 0.0;
  double c_l = 0.0, c_omega = 0.0, gamma = 0.0;
  double r_a = std::numeric_limits<double>::quiet_NaN();
  SupportInfo support;
  int iterations = 0;
  double residual = std::numeric_limits<double>::infinity();
  bool converged = false;
  // moment identity residuals keyed by p; absent when the moment diverges
  std::map<int, double> identity_residuals;
  double U2 = std::numeric_limits<double>::quiet_NaN();  // NaN when divergent
};

/// One application of the profile map (computes T internally).
profile::ProfileGrid apply_Ra(const profile::ProfileGrid& f, double a);
profile::ProfileGrid apply_Ra(const transform::TransformField& field, double a,
                              double a_switch = 1e-6, double class_tol = 1e-6);

/// The a -> 0 limit: R_0(f) = exp( (2/c)(T(f)(x) + \int_0^x T(f)(y)/y dy) ).
profile::ProfileGrid apply_R0(const profile::ProfileGrid& f);
profile::ProfileGrid apply_R0(const transform::TransformField& field);

/// Support trichotomy of the converged profile from the sign of
/// 2ab - (1-a/3)c: compact (root L of g, vanishing order p_a), gaussian
/// class, or algebraic decay with exponent r_a.
SupportInfo classify_support(const transform::TransformField& field, double a,
                             double class_tol = 1e-6);

/// gamma = -c_l / c_omega for a solve result.
double gamma_ratio(const SolveResult& res);

SolveResult solve(const SolveConfig& config);

}  // namespace gclm::fixpoint
