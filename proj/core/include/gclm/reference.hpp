#pragma once

#include <functional>
#include <string>
#include <vector>

#include "gclm/profile.hpp"

// Closed-form solutions and golden scalars used as oracles by the tests and
// the `verify` command: the a = 0 Lorentzian 1/(1+x^2), the a = 1/2 profile
// 4/(2+x^2)^2, the extremal cap f_m = (1-x^2)_+, and the capped family
// f_{m,p} = (1-x^2-p)_+ + p.

namespace gclm::reference {

enum class ExactName { A0, AHalf, Fm, FmP };

struct ExactScalars {
  double a, b, c, k, mu, Q, c_l, c_omega, r;  // NaN where not applicable
};

struct ExactSolution {
  ExactName name;
  std::string label;
  std::function<double(double)> f;
  profile::TailModel tail;
  ExactScalars scalars;
};

/// Catalog lookup.  FmP uses the representative p = 1/2 (only b, c, k are
/// meaningful for that family).
const ExactSolution& exact(ExactName name);

struct Check {
  std::string name;
  double computed = 0.0;
  double expected = 0.0;
  double tol = 0.0;
  bool pass = false;
  bool f_dependent = false;  // depends on the special-function kernel F
};

struct VerifyReport {
  std::vector<Check> checks;
  bool all_pass = true;
};

/// Full golden verification: functionals on the catalog, operator closed
/// forms, fixed-point residuals, and two solves (a = 0, 1/2) against the
/// closed forms.  `f_perturb` injects a relative error into the
/// kernel-function checks (fault-injection hook for the test suite).
VerifyReport verify_all(double f_perturb = 0.0);

}  // namespace gclm::reference
