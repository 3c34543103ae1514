#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gclm/fixpoint.hpp"
#include "gclm/profile.hpp"
#include "gclm/specfun.hpp"
#include "gclm/transform.hpp"

using namespace gclm;
using profile::SeedKind;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("f_half is a fixed point of R_{1/2}") {
  auto f = profile::make_profile(SeedKind::FHalf);
  auto h = fixpoint::apply_Ra(f, 0.5);
  CHECK(h.values().front() == 1.0);
  CHECK(profile::residual_norm(f, h) <= 1e-6);
}

TEST_CASE("the Lorentzian is a fixed point of R_0") {
  auto f = profile::make_profile(SeedKind::SeedLorentzian);
  auto h = fixpoint::apply_R0(f);
  CHECK(h.values().front() == 1.0);
  CHECK(profile::residual_norm(f, h) <= 1e-6);
}

TEST_CASE("R_a is continuous across the a_switch threshold") {
  auto f = profile::make_profile(SeedKind::SeedLorentzian);
  auto field = transform::apply_T(f);
  auto h_lim = fixpoint::apply_R0(field);
  auto h_eps = fixpoint::apply_Ra(field, 1e-5);
  CHECK(profile::residual_norm(h_lim, h_eps) <= 1e-4);
}

TEST_CASE("R_a preserves admissibility") {
  auto f = profile::make_profile(SeedKind::SeedLorentzian);
  auto field = transform::apply_T(f);
  for (double a : {-2.0, -0.5, 0.3, 0.7, 1.0}) {
    CAPTURE(a);
    auto h = fixpoint::apply_Ra(field, a);
    auto rep = profile::check_admissibility(profile::renormalize(h), 1e-6);
    CHECK(rep.upper_violation <= 1e-6);
    CHECK(rep.lower_violation <= 1e-6);
    CHECK(rep.monotone_violation <= 1e-6);
    CHECK(rep.convexity_violation <= 1e-6);
    CHECK(rep.slope_at_half <= -specfun::constants().eta + 1e-6);
  }
}

TEST_CASE("solve at a = 0 recovers the Lorentzian") {
  fixpoint::SolveConfig cfg;
  cfg.a = 0.0;
  auto res = fixpoint::solve(cfg);
  CHECK(res.converged);
  CHECK(res.iterations <= 50);
  CHECK(res.residual <= 1e-7);
  auto exact = profile::make_profile(SeedKind::SeedLorentzian);
  CHECK(profile::residual_norm(res.profile, exact) <= 1e-4);
  CHECK(res.b == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(res.c == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(res.c_l == doctest::Approx(0.5).epsilon(2e-3));
  CHECK(res.c_omega == doctest::Approx(-0.5).epsilon(2e-3));
  CHECK(res.mu == doctest::Approx(2.0 * std::log(2.0) - 1.0).epsilon(1e-3));
  CHECK(res.support.kind == profile::TailKind::Algebraic);
  CHECK(res.r_a == doctest::Approx(2.0).epsilon(1e-3));
}

TEST_CASE("solve at a = 1/2 from the Lorentzian converges to f_half") {
  fixpoint::SolveConfig cfg;
  cfg.a = 0.5;
  cfg.seed_kind = SeedKind::SeedLorentzian;
  auto res = fixpoint::solve(cfg);
  CHECK(res.converged);
  auto exact = profile::make_profile(SeedKind::FHalf);
  CHECK(profile::residual_norm(res.profile, exact) <= 1e-4);
  CHECK(res.c_l == doctest::Approx(std::sqrt(2.0) / 16.0).epsilon(1e-3));
  CHECK(res.c_omega == doctest::Approx(-3.0 * std::sqrt(2.0) / 16.0).epsilon(1e-3));
  CHECK(fixpoint::gamma_ratio(res) == doctest::Approx(1.0 / 3.0).epsilon(1e-3));
  CHECK(res.mu == doctest::Approx(0.5).epsilon(2e-3));
  CHECK(res.Q == doctest::Approx(0.125).epsilon(2e-3));
  CHECK(res.r_a == doctest::Approx(4.0).epsilon(1e-2));
  // k formula: k = (1 - a/3)/(1 + a mu) at fixed points
  CHECK(res.k ==
        doctest::Approx((1.0 - 0.5 / 3.0) / (1.0 + 0.5 * res.mu)).epsilon(1e-4));
  // p = 0 identity certificate
  REQUIRE(res.identity_residuals.count(0) == 1);
  CHECK(std::abs(res.identity_residuals.at(0)) <= 1e-5 * res.b * res.b);
  CHECK(std::abs(res.U2) <= 1e-5);
}

TEST_CASE("solve at a = 1 yields a compactly supported profile") {
  fixpoint::SolveConfig cfg;
  cfg.a = 1.0;
  auto res = fixpoint::solve(cfg);
  CHECK(res.converged);
  CHECK(res.support.kind == profile::TailKind::Compact);
  CHECK(res.support.L >= 1.0);
  // vanishing order p_a >= (3 - a)/2a = 1 at a = 1
  CHECK(res.support.p_a >= 1.0 - 1e-3);
  CHECK(fixpoint::gamma_ratio(res) == doctest::Approx(-1.0).epsilon(0.01));
}

TEST_CASE("solve at strongly negative a") {
  fixpoint::SolveConfig cfg;
  cfg.a = -1.0;
  auto res = fixpoint::solve(cfg);
  CHECK(res.converged);
  CHECK(res.support.kind == profile::TailKind::Algebraic);
  // Cor 4.5-type bracket: r_a in (2(1+|a|)/(1+2|a|), 2(1+|a|)/(1+|a|(2-mu_bar)))
  const double lo = 2.0 * 2.0 / 3.0, hi = 4.0 / (1.0 + (2.0 - 0.637914));
  CHECK(res.r_a >= lo - 0.02);
  CHECK(res.r_a <= hi + 0.02);
  // mu <= 1/|a| for a < 0
  CHECK(res.mu <= 1.0 + 1e-3);
}

TEST_CASE("non-convergence reports instead of throwing") {
  fixpoint::SolveConfig cfg;
  cfg.a = 0.5;
  cfg.max_iter = 2;
  cfg.tol = 1e-13;
  auto res = fixpoint::solve(cfg);
  CHECK_FALSE(res.converged);
  CHECK(res.iterations == 2);
  CHECK(res.residual > 1e-13);
}

TEST_CASE("scalar cross-identities hold at any solve result") {
  fixpoint::SolveConfig cfg;
  cfg.a = 0.25;
  auto res = fixpoint::solve(cfg);
  CHECK(res.converged);
  const double a = res.a;
  CHECK(res.c_l ==
        doctest::Approx((1.0 - a / 3.0) * res.c / 2.0 - a * res.b).epsilon(1e-12));
  CHECK(res.c_omega ==
        doctest::Approx(res.c_l - (1.0 - a) * res.b).epsilon(1e-12));
  CHECK(res.k == doctest::Approx(res.b / res.c).epsilon(1e-12));
  if (std::isfinite(res.r_a)) {
    CHECK(res.r_a == doctest::Approx(2.0 * (1.0 - a) * res.b /
                                     ((1.0 - a / 3.0) * res.c - 2.0 * a * res.b))
                         .epsilon(1e-12));
  }
}
