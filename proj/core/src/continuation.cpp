#include "gclm/continuation.hpp"

#include <algorithm>
#include <cmath>

namespace gclm::continuation {

using fixpoint::SolveConfig;
using fixpoint::SolveResult;

SweepRecord to_record(const SolveResult& res) {
  SweepRecord r;
  r.a = res.a;
  r.b = res.b;
  r.c = res.c;
  r.k = res.k;
  r.mu = res.mu;
  r.c_l = res.c_l;
  r.c_omega = res.c_omega;
  r.gamma = res.gamma;
  r.r_a = res.r_a;
  r.L = res.support.L;
  r.p_a = res.support.p_a;
  r.iterations = res.iterations;
  r.residual = res.residual;
  r.converged = res.converged;
  r.kind = res.support.kind;
  return r;
}

namespace {

constexpr double kMaxStep = 0.1;  // largest continuation step in a

SolveResult solve_at(double a, const SolveConfig& base,
                     const std::optional<profile::ProfileGrid>& seed) {
  SolveConfig cfg = base;
  cfg.a = a;
  if (seed) cfg.seed = seed;
  return fixpoint::solve(cfg);
}

// Continuation step from a profile converged at a_from to target a_to,
// inserting unrecorded intermediate solves when the step exceeds kMaxStep.
SolveResult continue_to(double a_from, double a_to,
                        profile::ProfileGrid seed_profile,
                        const SolveConfig& base) {
  const double span = a_to - a_from;
  const int steps = std::max(1, (int)std::ceil(std::abs(span) / kMaxStep));
  SolveResult res;
  for (int s = 1; s <= steps; ++s) {
    const double a = a_from + span * s / steps;
    res = solve_at(a, base, seed_profile);
    seed_profile = res.profile;
  }
  return res;
}

}  // namespace

SweepResult sweep(const std::vector<double>& a_values, SweepMode mode,
                  const SolveConfig& base) {
  SweepResult out;
  std::optional<profile::ProfileGrid> prev;
  double prev_a = 0.0;
  for (double a : a_values) {
    SolveResult res;
    if (mode == SweepMode::Continuation && prev)
      res = continue_to(prev_a, a, *prev, base);
    else
      res = solve_at(a, base, std::nullopt);
    if (mode == SweepMode::Continuation && res.converged) {
      prev = res.profile;
      prev_a = a;
    }
    out.records.push_back(to_record(res));
  }
  return out;
}

double find_critical_a(double a_lo, double a_hi, double tol_a,
                       const SolveConfig& base,
                       std::vector<SweepRecord>* trace) {
  if (!(a_lo < a_hi))
    throw BracketError("find_critical_a: invalid bracket order");
  auto sign_fn = [](const SolveResult& r) {
    return 2.0 * r.a * r.k - (1.0 - r.a / 3.0);
  };
  auto eval = [&](double a, const std::optional<profile::ProfileGrid>& seed,
                  double seed_a, bool wide) {
    SolveConfig cfg = base;
    if (wide) cfg.grid.x_max = std::max(cfg.grid.x_max, 1e5);
    SolveResult res = seed ? continue_to(seed_a, a, *seed, cfg)
                           : solve_at(a, cfg, std::nullopt);
    if (!res.converged)
      throw fixpoint::ConvergenceError(
          "find_critical_a: solve failed to converge at a = " +
          std::to_string(a));
    if (trace) trace->push_back(to_record(res));
    return res;
  };

  SolveResult lo = eval(a_lo, std::nullopt, 0.0, false);
  SolveResult hi = eval(a_hi, lo.profile, a_lo, false);
  double s_lo = sign_fn(lo), s_hi = sign_fn(hi);
  if (!(s_lo < 0.0 && s_hi > 0.0))
    throw BracketError("find_critical_a: no sign change of 2ak - (1 - a/3) in bracket");
  double x_lo = a_lo, x_hi = a_hi;
  while (x_hi - x_lo > tol_a) {
    const double mid = 0.5 * (x_lo + x_hi);
    // seed from the nearest converged endpoint; widen the grid once the
    // bracket is tight and the profile is nearly gaussian-class
    const bool from_lo = (mid - x_lo) <= (x_hi - mid);
    const bool wide = (x_hi - x_lo) < 0.05;
    SolveResult res = from_lo ? eval(mid, lo.profile, x_lo, wide)
                              : eval(mid, hi.profile, x_hi, wide);
    if (sign_fn(res) < 0.0) {
      x_lo = mid;
      lo = std::move(res);
    } else {
      x_hi = mid;
      hi = std::move(res);
    }
  }
  return 0.5 * (x_lo + x_hi);
}

TailFit fit_tail_exponent(const profile::ProfileGrid& f) {
  const auto& xs = f.nodes();
  const auto& vs = f.values();
  const double X = f.x_max();
  std::vector<double> lx, lv;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] < X / 10.0 || vs[i] <= 0.0) continue;
    lx.push_back(std::log(xs[i]));
    lv.push_back(std::log(vs[i]));
  }
  if (lx.size() < 8)
    throw std::runtime_error(
        "fit_tail_exponent: fewer than 8 positive samples in the last decade");
  const std::size_t n = lx.size();
  double mx = 0.0, mv = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += lx[i];
    mv += lv[i];
  }
  mx /= n;
  mv /= n;
  double sxx = 0.0, sxv = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxv += (lx[i] - mx) * (lv[i] - mv);
  }
  TailFit fit;
  fit.r = -sxv / sxx;
  fit.C = std::exp(mv + fit.r * mx);
  return fit;
}

}  // namespace gclm::continuation
