#include "gclm/profile.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "gclm/specfun.hpp"

namespace gclm::profile {

double TailModel::value(double x) const {
  switch (kind) {
    case TailKind::Algebraic:
      return f_inf + C * std::pow(x, -r);
    case TailKind::GaussianClass:
      return f_inf;  // super-algebraic decay; negligible beyond the grid
    case TailKind::Compact:
      return f_inf;
  }
  return f_inf;
}

double TailModel::deriv(double x) const {
  if (kind == TailKind::Algebraic) return -r * C * std::pow(x, -r - 1.0);
  return 0.0;
}

std::vector<double> make_nodes(const GridSpec& spec) {
  std::vector<double> nodes;
  const int n_uniform = static_cast<int>(std::round(spec.uniform_end / spec.h_uniform));
  nodes.reserve(n_uniform + 256);
  for (int i = 0; i <= n_uniform; ++i) nodes.push_back(i * spec.h_uniform);
  nodes.back() = spec.uniform_end;
  double x = spec.uniform_end;
  while (x < spec.x_max) {
    x *= spec.stretch;
    nodes.push_back(x);
  }
  return nodes;
}

ProfileGrid ProfileGrid::from_samples(std::vector<double> nodes,
                                      std::vector<double> values, TailModel tail,
                                      InterpOrder order) {
  if (nodes.size() != values.size() || nodes.size() < 4)
    throw std::invalid_argument("ProfileGrid: need >= 4 matching nodes/values");
  if (nodes.front() != 0.0)
    throw std::invalid_argument("ProfileGrid: first node must be x = 0");
  ProfileGrid g;
  g.nodes_ = std::move(nodes);
  g.values_ = std::move(values);
  g.tail_ = tail;
  g.order_ = order;
  g.s_.resize(g.nodes_.size());
  for (std::size_t i = 0; i < g.nodes_.size(); ++i) g.s_[i] = g.nodes_[i] * g.nodes_[i];
  g.build_slopes();
  return g;
}

ProfileGrid ProfileGrid::from_function(const std::function<double(double)>& fn,
                                       TailModel tail, const GridSpec& spec,
                                       InterpOrder order) {
  auto nodes = make_nodes(spec);
  std::vector<double> values(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) values[i] = fn(nodes[i]);
  return from_samples(std::move(nodes), std::move(values), tail, order);
}

// Slopes df/ds: fourth-order centered finite differences on the (nonuniform)
// s-grid, tamed by the Hyman monotonicity filter so the cubic stays shape
// preserving.  The high-order estimate matters: the operator evaluations
// integrate f', so O(h^2) Fritsch-Carlson slopes would cap the overall
// accuracy well short of the quadrature error.
void ProfileGrid::build_slopes() {
  const std::size_t n = s_.size();
  dds_.assign(n, 0.0);
  if (order_ == InterpOrder::LinearInS) return;
  std::vector<double> delta(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i)
    delta[i] = (values_[i + 1] - values_[i]) / (s_[i + 1] - s_[i]);

  // Support edge: index of the first node in a trailing constant run (a
  // compactly supported profile, or one capped at a constant far field, is
  // exactly flat from there on).  Stencils must not straddle the kink, and
  // the slope there comes from the left.
  std::size_t edge = n;
  if (n >= 2 && values_[n - 2] == values_[n - 1]) {
    edge = n - 1;
    while (edge > 0 && values_[edge - 1] == values_[edge]) --edge;
  }

  // Derivative of the Lagrange polynomial through up to five nearby nodes,
  // evaluated at s_[i].
  auto stencil_slope = [&](std::size_t i) {
    std::size_t hi = n;                       // one past the usable window
    if (i <= edge && edge + 1 < n) hi = std::max<std::size_t>(edge + 1, 5);
    std::size_t lo = (i < 2) ? 0 : i - 2;
    if (lo + 5 > hi) lo = hi - 5;
    double d = 0.0;
    for (std::size_t j = lo; j < lo + 5; ++j) {
      double term = 0.0;
      for (std::size_t k = lo; k < lo + 5; ++k) {
        if (k == j) continue;
        double prod = 1.0;
        for (std::size_t l = lo; l < lo + 5; ++l) {
          if (l == j || l == k) continue;
          prod *= (s_[i] - s_[l]) / (s_[j] - s_[l]);
        }
        term += prod / (s_[j] - s_[k]);
      }
      d += values_[j] * term;
    }
    return d;
  };

  for (std::size_t i = 0; i < n; ++i) {
    if (i > edge) continue;  // identically zero beyond the support edge
    double d = (n >= 5) ? stencil_slope(i)
                        : (i == 0 ? delta[0] : (i + 1 == n ? delta[n - 2] : 0.5 * (delta[i - 1] + delta[i])));
    // Hyman filter: clamp into the monotone range spanned by the adjacent
    // secants (zero when they disagree in sign).  At the support edge only
    // the left secant is meaningful.
    double dl = (i > 0) ? delta[i - 1] : delta[0];
    double dr = (i + 1 < n) ? delta[i] : delta[n - 2];
    if (i == edge && i > 0) dr = dl;
    if (dl * dr < 0.0 && i > 0 && i + 1 < n) {
      d = 0.0;
    } else {
      const double lim = 3.0 * std::min(std::abs(dl), std::abs(dr));
      const double sgn = (dl + dr >= 0.0) ? 1.0 : -1.0;
      if (d * sgn < 0.0)
        d = 0.0;
      else if (std::abs(d) > lim)
        d = sgn * lim;
    }
    dds_[i] = d;
  }
}

double ProfileGrid::eval(double x) const {
  x = std::abs(x);
  if (x > nodes_.back()) return tail_.value(x);
  const double s = x * x;
  const auto it = std::upper_bound(s_.begin(), s_.end(), s);
  std::size_t i = (it == s_.begin()) ? 0 : (it - s_.begin() - 1);
  if (i + 1 >= s_.size()) i = s_.size() - 2;
  if (values_[i] == values_[i + 1]) return values_[i];  // flat (constant) run
  const double h = s_[i + 1] - s_[i], t = (s - s_[i]) / h;
  if (order_ == InterpOrder::LinearInS)
    return values_[i] * (1.0 - t) + values_[i + 1] * t;
  const double y0 = values_[i], y1 = values_[i + 1];
  const double m0 = dds_[i] * h, m1 = dds_[i + 1] * h;
  const double t2 = t * t, t3 = t2 * t;
  return y0 * (2.0 * t3 - 3.0 * t2 + 1.0) + m0 * (t3 - 2.0 * t2 + t) +
         y1 * (-2.0 * t3 + 3.0 * t2) + m1 * (t3 - t2);
}

double ProfileGrid::deriv(double x) const {
  x = std::abs(x);
  if (x > nodes_.back()) return tail_.deriv(x);
  const double s = x * x;
  const auto it = std::upper_bound(s_.begin(), s_.end(), s);
  std::size_t i = (it == s_.begin()) ? 0 : (it - s_.begin() - 1);
  if (i + 1 >= s_.size()) i = s_.size() - 2;
  if (values_[i] == values_[i + 1]) return 0.0;  // flat (constant) run
  const double h = s_[i + 1] - s_[i], t = (s - s_[i]) / h;
  double dyds;
  if (order_ == InterpOrder::LinearInS) {
    dyds = (values_[i + 1] - values_[i]) / h;
  } else {
    const double y0 = values_[i], y1 = values_[i + 1];
    const double m0 = dds_[i], m1 = dds_[i + 1];
    const double t2 = t * t;
    dyds = (y0 * (6.0 * t2 - 6.0 * t) + (y1 * (6.0 * t - 6.0 * t2))) / h +
           m0 * (3.0 * t2 - 4.0 * t + 1.0) + m1 * (3.0 * t2 - 2.0 * t);
  }
  return 2.0 * x * dyds;  // chain rule through s = x^2
}

ProfileGrid make_profile(SeedKind kind, const GridSpec& spec) {
  switch (kind) {
    case SeedKind::SeedLorentzian:
      return ProfileGrid::from_function(
          [](double x) { return 1.0 / (1.0 + x * x); },
          TailModel{TailKind::Algebraic, 2.0, 1.0,
                    std::numeric_limits<double>::infinity()},
          spec);
    case SeedKind::Fm:
      return ProfileGrid::from_function(
          [](double x) { return std::max(1.0 - x * x, 0.0); },
          TailModel{TailKind::Compact, 0.0, 0.0, 1.0}, spec);
    case SeedKind::FHalf:
      return ProfileGrid::from_function(
          [](double x) {
            const double d = 2.0 + x * x;
            return 4.0 / (d * d);
          },
          TailModel{TailKind::Algebraic, 4.0, 4.0,
                    std::numeric_limits<double>::infinity()},
          spec);
  }
  throw std::invalid_argument("make_profile: unknown seed kind");
}

ProfileGrid renormalize(const ProfileGrid& f) {
  const double f0 = f.values().front();
  if (std::abs(f0 - 1.0) > 1e-3)
    throw DegenerateProfileError("renormalize: f(0) deviates from 1 by > 1e-3");
  // Estimate q = lim (1-f)/x^2 by extrapolating z(s) = (1-f)/s to s = 0:
  // z is smooth in s = x^2, so a quadratic least-squares fit over the first
  // few nodes removes the curvature bias of a plain linear regression.
  const auto& xs = f.nodes();
  const auto& vs = f.values();
  std::size_t last = 1;
  while (last + 1 < xs.size() && xs[last + 1] <= 0.1) ++last;
  while (last < 5 && last + 1 < xs.size()) ++last;  // need enough points
  const double s_max = xs[last] * xs[last];
  double m[3][3] = {}, rhs[3] = {};
  for (std::size_t i = 1; i <= last; ++i) {
    const double s = xs[i] * xs[i] / s_max;  // scaled for conditioning
    const double z = (1.0 - vs[i] / f0) / (xs[i] * xs[i]);
    const double basis[3] = {1.0, s, s * s};
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) m[a][b] += basis[a] * basis[b];
      rhs[a] += basis[a] * z;
    }
  }
  // solve the 3x3 normal equations by Gaussian elimination
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int row = col + 1; row < 3; ++row)
      if (std::abs(m[row][col]) > std::abs(m[piv][col])) piv = row;
    std::swap(m[col], m[piv]);
    std::swap(rhs[col], rhs[piv]);
    for (int row = col + 1; row < 3; ++row) {
      const double fac = m[row][col] / m[col][col];
      for (int k = col; k < 3; ++k) m[row][k] -= fac * m[col][k];
      rhs[row] -= fac * rhs[col];
    }
  }
  double coef[3];
  for (int row = 2; row >= 0; --row) {
    double acc = rhs[row];
    for (int k = row + 1; k < 3; ++k) acc -= m[row][k] * coef[k];
    coef[row] = acc / m[row][row];
  }
  const double q = coef[0];
  if (!(q > 0.0))
    throw DegenerateProfileError("renormalize: nonpositive origin curvature");
  const double beta = 1.0 / std::sqrt(q);
  std::vector<double> values(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) values[i] = f.eval(beta * xs[i]) / f0;
  values[0] = 1.0;
  TailModel tail = f.tail();
  if (tail.kind == TailKind::Algebraic)
    tail.C = tail.C * std::pow(beta, -tail.r) / f0;
  else if (tail.kind == TailKind::Compact)
    tail.L = tail.L / beta;
  return ProfileGrid::from_samples(f.nodes(), std::move(values), tail, f.order());
}

AdmissibilityReport check_admissibility(const ProfileGrid& f, double slack) {
  AdmissibilityReport rep;
  const auto& xs = f.nodes();
  const auto& vs = f.values();
  const std::size_t n = xs.size();
  for (std::size_t i = 0; i < n; ++i) {
    rep.upper_violation = std::max(rep.upper_violation, vs[i] - 1.0);
    const double cap = std::max(1.0 - xs[i] * xs[i], 0.0);
    rep.lower_violation = std::max(rep.lower_violation, cap - vs[i]);
    if (i + 1 < n)
      rep.monotone_violation = std::max(rep.monotone_violation, vs[i + 1] - vs[i]);
  }
  // convexity in s = x^2: second divided differences must be >= 0
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double s0 = xs[i - 1] * xs[i - 1], s1 = xs[i] * xs[i],
                 s2 = xs[i + 1] * xs[i + 1];
    const double dd = (vs[i + 1] - vs[i]) / (s2 - s1) - (vs[i] - vs[i - 1]) / (s1 - s0);
    rep.convexity_violation = std::max(rep.convexity_violation, -dd);
  }
  rep.slope_at_half = f.deriv(0.5);
  rep.f0_deviation = std::abs(vs[0] - 1.0);
  const double eta = specfun::constants().eta;
  rep.is_member = rep.upper_violation <= slack && rep.lower_violation <= slack &&
                  rep.monotone_violation <= slack &&
                  rep.convexity_violation <= slack &&
                  rep.slope_at_half <= -eta + slack && rep.f0_deviation <= slack;
  return rep;
}

double residual_norm(const ProfileGrid& f1, const ProfileGrid& f2) {
  std::set<double> pts(f1.nodes().begin(), f1.nodes().end());
  pts.insert(f2.nodes().begin(), f2.nodes().end());
  const double X = std::max(f1.x_max(), f2.x_max());
  // sample the tail region on a log grid out to 100 X
  for (int k = 1; k <= 32; ++k) pts.insert(X * std::pow(100.0, k / 32.0));
  double worst = 0.0;
  for (double x : pts) {
    const double w = 1.0 / std::sqrt(1.0 + x);
    worst = std::max(worst, w * std::abs(f1.eval(x) - f2.eval(x)));
  }
  return worst;
}

}  // namespace gclm::profile
