#pragma once

#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

// Discrete representation of candidate blowup profiles f : [0, inf) -> [0, 1]
// (even extension implied).  A profile is stored on a graded grid together
// with a far-field tail model; interpolation is monotone cubic (PCHIP) in the
// variable s = x^2, which preserves the monotonicity and convexity structure
// of the admissible class.

namespace gclm::profile {

enum class TailKind { Algebraic, GaussianClass, Compact };

struct TailModel {
  TailKind kind = TailKind::Algebraic;
  double r = 2.0;  // algebraic decay exponent, f ~ C x^{-r}
  double C = 1.0;  // algebraic tail coefficient
  double L = std::numeric_limits<double>::infinity();  // support end (compact)
  double f_inf = 0.0;  // constant far-field offset (capped profiles)

  double value(double x) const;
  double deriv(double x) const;
};

enum class InterpOrder { LinearInS, CubicInS };

struct GridSpec {
  double h_uniform = 0.01;   // uniform spacing on [0, uniform_end]
  double uniform_end = 4.0;  // end of the uniform region
  double stretch = 1.013;     // geometric ratio beyond uniform_end
  double x_max = 1e4;        // last node is the first one >= x_max
};

std::vector<double> make_nodes(const GridSpec& spec);

class ProfileGrid {
 public:
  ProfileGrid() = default;
  static ProfileGrid from_samples(std::vector<double> nodes,
                                  std::vector<double> values, TailModel tail,
                                  InterpOrder order = InterpOrder::CubicInS);
  static ProfileGrid from_function(const std::function<double(double)>& fn,
                                   TailModel tail, const GridSpec& spec = {},
                                   InterpOrder order = InterpOrder::CubicInS);

  double eval(double x) const;   // f(x); uses the tail model beyond the grid
  double deriv(double x) const;  // df/dx of the interpolant / tail

  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& values() const { return values_; }
  const TailModel& tail() const { return tail_; }
  TailModel& tail() { return tail_; }
  double x_max() const { return nodes_.back(); }
  InterpOrder order() const { return order_; }

 private:
  void build_slopes();
  std::vector<double> nodes_, values_, s_, dds_;  // dds_: df/ds at nodes
  TailModel tail_;
  InterpOrder order_ = InterpOrder::CubicInS;
};

enum class SeedKind { SeedLorentzian, Fm, FHalf };

/// Canonical members of the admissible class: the Lorentzian 1/(1+x^2),
/// the extremal cap (1-x^2)_+, and the closed-form profile 4/(2+x^2)^2.
ProfileGrid make_profile(SeedKind kind, const GridSpec& spec = {});

struct DegenerateProfileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Normalizes f(0) to 1 and rescales the x-axis so that the origin curvature
/// q = lim (1-f)/x^2 equals 1 (replacing f(x) by f(x/sqrt(q))).
ProfileGrid renormalize(const ProfileGrid& f);

inline constexpr double grid_slack = 1e-9;

struct AdmissibilityReport {
  bool is_member = false;
  double upper_violation = 0.0;      // max (f - 1)_+
  double lower_violation = 0.0;      // max ((1-x^2)_+ - f)_+
  double monotone_violation = 0.0;   // max increase between adjacent nodes
  double convexity_violation = 0.0;  // max negative second difference in s
  double slope_at_half = 0.0;        // f'(1/2); must be <= -eta
  double f0_deviation = 0.0;         // |f(0) - 1|
};

AdmissibilityReport check_admissibility(const ProfileGrid& f,
                                        double slack = grid_slack);

/// Weighted sup distance: max over merged nodes and tail samples of
/// (1+x)^{-1/2} |f1(x) - f2(x)|.
double residual_norm(const ProfileGrid& f1, const ProfileGrid& f2);

}  // namespace gclm::profile
