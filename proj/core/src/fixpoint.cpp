#include "gclm/fixpoint.hpp"

#include <algorithm>
#include <cmath>

#include "gclm/quadrature.hpp"

namespace gclm::fixpoint {

using profile::ProfileGrid;
using profile::TailKind;
using profile::TailModel;
using transform::TaField;
using transform::TransformField;

namespace {

constexpr double kLogFloor = -745.0;  // exp underflows below this

// Least-squares fit of log f = log C - r log x over the outermost decade of
// strictly positive values; r is prescribed, only C is fitted.
double fit_tail_C(const std::vector<double>& xs, const std::vector<double>& logv,
                  double r) {
  const double X = xs.back();
  double sum = 0.0;
  int n = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] < X / 10.0) continue;
    if (logv[i] < -575.0) continue;  // underflowed / vanished values
    sum += logv[i] + r * std::log(xs[i]);
    ++n;
  }
  if (n < 4) return 0.0;  // effectively below double range: negligible tail
  return std::exp(sum / n);
}

// Tail model for the image h = R_a(f) from the converged-scalar formulas.
TailModel image_tail(double a, double b, double c, const TaField& ta,
                     double class_tol, const std::vector<double>& xs,
                     const std::vector<double>& logh) {
  const double s_den = (1.0 - a / 3.0) * c - 2.0 * a * b;
  if (ta.compact)
    return TailModel{TailKind::Compact, 0.0, 0.0, ta.root};
  if (std::abs(s_den) <= class_tol * c)
    return TailModel{TailKind::GaussianClass, 0.0, 0.0,
                     std::numeric_limits<double>::infinity()};
  double r = 2.0 * (1.0 - a) * b / s_den;
  r = std::max(r, 1.001);  // guard against transient non-integrable models
  const double C = fit_tail_C(xs, logh, r);
  if (C == 0.0)
    return TailModel{TailKind::GaussianClass, 0.0, 0.0,
                     std::numeric_limits<double>::infinity()};
  return TailModel{TailKind::Algebraic, r, C,
                   std::numeric_limits<double>::infinity()};
}

ProfileGrid resample(const ProfileGrid& f, const profile::GridSpec& spec) {
  auto nodes = profile::make_nodes(spec);
  std::vector<double> values(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) values[i] = f.eval(nodes[i]);
  return ProfileGrid::from_samples(std::move(nodes), values, f.tail(), f.order());
}

// Drop nodes beyond 1.5 L for compactly supported profiles.
ProfileGrid truncate_compact(const ProfileGrid& f) {
  if (f.tail().kind != TailKind::Compact) return f;
  const double cut = 1.5 * f.tail().L;
  if (cut >= f.x_max()) return f;
  const auto& xs = f.nodes();
  std::size_t n = xs.size();
  while (n > 8 && xs[n - 2] > cut) --n;
  std::vector<double> nodes(xs.begin(), xs.begin() + n);
  std::vector<double> values(f.values().begin(), f.values().begin() + n);
  return ProfileGrid::from_samples(std::move(nodes), std::move(values), f.tail(),
                                   f.order());
}

}  // namespace

ProfileGrid apply_R0(const TransformField& field) {
  const auto& xs = field.base().nodes();
  const std::size_t n = xs.size();
  const double b = field.b(), c = field.c();
  // Phi(x) = \int_0^x T(f)(y)/y dy; T(y)/y ~ T_s y near 0, smooth throughout.
  std::vector<double> logh(n, 0.0);
  double Phi = 0.0;
  auto integrand = [&field](double y) { return field.eval_T(y) / y; };
  for (std::size_t i = 1; i < n; ++i) {
    Phi += quad::gauss8(integrand, xs[i - 1], xs[i]);
    logh[i] = 2.0 / c * (field.T()[i] + Phi);
  }
  std::vector<double> h(n);
  for (std::size_t i = 0; i < n; ++i)
    h[i] = (logh[i] < kLogFloor) ? 0.0 : std::exp(logh[i]);
  h[0] = 1.0;
  const double r = 2.0 * b / c;
  const double C = fit_tail_C(xs, logh, r);
  TailModel tail = (C > 0.0)
                       ? TailModel{TailKind::Algebraic, r, C,
                                   std::numeric_limits<double>::infinity()}
                       : TailModel{TailKind::GaussianClass, 0.0, 0.0,
                                   std::numeric_limits<double>::infinity()};
  return ProfileGrid::from_samples(xs, std::move(h), tail, field.base().order());
}

ProfileGrid apply_R0(const ProfileGrid& f) { return apply_R0(transform::apply_T(f)); }

ProfileGrid apply_Ra(const TransformField& field, double a, double a_switch,
                     double class_tol) {
  if (std::abs(a) < a_switch) return apply_R0(field);
  const auto& xs = field.base().nodes();
  const std::size_t n = xs.size();
  const double b = field.b(), c = field.c();
  const TaField ta = transform::apply_Ta(field, a);
  const double lam = ta.lambda;
  const bool pure_transport = std::abs(1.0 - a) < 1e-15;  // a = 1: h = g

  // Psi(x) = \int_0^x (g-1)/(y g) dy with g = 1 + lam T; the integrand is
  // ~ -2a/(3-a) y near the origin and blows up only at the support root.
  std::vector<double> logh(n, -std::numeric_limits<double>::infinity());
  auto psi = [&](double y) {
    const double lt = lam * field.eval_T(y);
    return lt / (y * (1.0 + lt));
  };
  double Psi = 0.0;
  logh[0] = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    if (xs[i] >= ta.root || ta.g[i] <= 0.0) break;  // beyond the support
    if (!pure_transport) Psi += quad::gauss8(psi, xs[i - 1], xs[i]);
    logh[i] = std::log1p(lam * field.T()[i]) / a +
              (pure_transport ? 0.0 : (1.0 - a) / a * Psi);
  }
  std::vector<double> h(n);
  for (std::size_t i = 0; i < n; ++i)
    h[i] = (logh[i] < kLogFloor) ? 0.0 : std::exp(logh[i]);
  h[0] = 1.0;
  const TailModel tail = image_tail(a, b, c, ta, class_tol, xs, logh);
  return ProfileGrid::from_samples(xs, std::move(h), tail, field.base().order());
}

ProfileGrid apply_Ra(const ProfileGrid& f, double a) {
  return apply_Ra(transform::apply_T(f), a);
}

SupportInfo classify_support(const TransformField& field, double a,
                             double class_tol) {
  SupportInfo info;
  const double b = field.b(), c = field.c();
  const double s_den = (1.0 - a / 3.0) * c - 2.0 * a * b;
  if (a > 0.0 && s_den < -class_tol * c) {
    info.kind = TailKind::Compact;
    const TaField ta = transform::apply_Ta(field, a);
    info.L = ta.root;
    const double TpL = field.eval_Tp(info.L);
    info.p_a = 1.0 / a + (1.0 - a) / a * ((1.0 - a / 3.0) * c) /
                             (info.L * 2.0 * a * std::abs(TpL));
    return info;
  }
  if (std::abs(s_den) <= class_tol * c) {
    info.kind = TailKind::GaussianClass;
    return info;
  }
  info.kind = TailKind::Algebraic;
  info.r = 2.0 * (1.0 - a) * b / s_den;
  const auto& tail = field.base().tail();
  if (tail.kind == TailKind::Algebraic) info.C = tail.C;
  return info;
}

double gamma_ratio(const SolveResult& res) { return -res.c_l / res.c_omega; }

SolveResult solve(const SolveConfig& config) {
  const double a = config.a;
  ProfileGrid f = config.seed ? resample(*config.seed, config.grid)
                              : profile::make_profile(config.seed_kind, config.grid);
  SolveResult out;
  out.a = a;
  for (int it = 1; it <= config.max_iter; ++it) {
    TransformField field = transform::apply_T(f);
    ProfileGrid h = apply_Ra(field, a, config.a_switch, config.class_tol);
    out.residual = profile::residual_norm(f, h);
    f = profile::renormalize(h);
    out.iterations = it;
    if (out.residual <= config.tol) {
      out.converged = true;
      break;
    }
  }
  out.field = transform::apply_T(f);
  out.profile = truncate_compact(f);
  out.b = out.field.b();
  out.c = out.field.c();
  out.k = out.b / out.c;
  out.Q = transform::compute_Q(f);
  out.mu = 2.0 * out.Q / (out.b * out.b);
  out.c_l = (1.0 - a / 3.0) * out.c / 2.0 - a * out.b;
  out.c_omega = out.c_l - (1.0 - a) * out.b;
  out.gamma = -out.c_l / out.c_omega;
  const double s_den = (1.0 - a / 3.0) * out.c - 2.0 * a * out.b;
  out.r_a = (s_den > config.class_tol * out.c)
                ? 2.0 * (1.0 - a) * out.b / s_den
                : std::numeric_limits<double>::quiet_NaN();
  out.support = classify_support(out.field, a, config.class_tol);
  for (int p = 0; p <= 2; ++p) {
    try {
      out.identity_residuals[p] =
          transform::moment_identity_residual(out.field, a, p);
    } catch (const transform::DivergentIntegralError&) {
      // non-convergent moment for this tail; omitted from the report
    }
  }
  try {
    out.U2 = transform::compute_UpVp(out.field, 2.0).first;
  } catch (const transform::DivergentIntegralError&) {
  }
  return out;
}

}  // namespace gclm::fixpoint
