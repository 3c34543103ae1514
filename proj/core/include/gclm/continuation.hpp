#pragma once

#include <optional>
#include <vector>

#include "gclm/fixpoint.hpp"

// Parameter continuation in a: sweeps over a list of values with warm
// seeding, and bisection for the critical a_c where the support type
// switches (sign change of s(a) = 2 a k(a) - (1 - a/3)).

namespace gclm::continuation {

struct BracketError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class SweepMode { Continuation, Cold };

struct SweepRecord {
  double a = 0.0;
  double b = 0.0, c = 0.0, k = 0.0, mu = 0.0;
  double c_l = 0.0, c_omega = 0.0, gamma = 0.0;
  double r_a = std::numeric_limits<double>::quiet_NaN();
  double L = std::numeric_limits<double>::quiet_NaN();
  double p_a = std::numeric_limits<double>::quiet_NaN();
  int iterations = 0;
  double residual = 0.0;
  bool converged = false;
  profile::TailKind kind = profile::TailKind::Algebraic;
};

SweepRecord to_record(const fixpoint::SolveResult& res);

struct SweepResult {
  std::vector<SweepRecord> records;
  std::optional<double> a_c;
};

/// Solves at each a in order.  Continuation mode seeds every solve with the
/// previous converged profile and silently subdivides steps larger than 0.1;
/// cold mode restarts from the configured seed each time.
SweepResult sweep(const std::vector<double>& a_values, SweepMode mode,
                  const fixpoint::SolveConfig& base);

/// Bisection for the critical a_c in [a_lo, a_hi] (s(a_lo) < 0 < s(a_hi)
/// required), seeding each solve from the nearest converged neighbor.  The
/// evaluation trace is appended to *trace when given.
double find_critical_a(double a_lo, double a_hi, double tol_a,
                       const fixpoint::SolveConfig& base,
                       std::vector<SweepRecord>* trace = nullptr);

struct TailFit {
  double r = 0.0;  // fitted decay exponent
  double C = 0.0;  // fitted coefficient
};

/// Log-log least-squares fit of the profile tail over the outermost decade
/// of the grid.  Requires at least 8 strictly positive samples there.
TailFit fit_tail_exponent(const profile::ProfileGrid& f);

}  // namespace gclm::continuation
