#pragma once

#include <string>

#include <json.hpp>

#include "gclm/continuation.hpp"
#include "gclm/fixpoint.hpp"
#include "gclm/profile.hpp"

// Deterministic serialization: shortest round-trip float formatting, fixed
// column ordering, no timestamps.

namespace gclm::io {

/// Shortest decimal representation that round-trips to the same double.
std::string format_double(double v);

std::string tail_kind_name(profile::TailKind kind);
profile::TailKind tail_kind_from_name(const std::string& name);

nlohmann::json tail_to_json(const profile::TailModel& tail, double x_max);

/// Profile CSV (columns x,f) plus a JSON sidecar holding the tail model.
void write_profile_csv(const profile::ProfileGrid& f, const std::string& csv_path,
                       const std::string& sidecar_path);
profile::ProfileGrid read_profile_csv(const std::string& csv_path,
                                      const std::string& sidecar_path);

/// SolveResult metadata JSON: {a, b, c, k, mu, Q, c_l, c_omega, gamma, r_a,
/// support{kind, L, p_a, r, C}, iterations, residual, identity_residuals}.
nlohmann::json solve_result_to_json(const fixpoint::SolveResult& res);

/// Converged-profile CSV with columns x,f,g,omega (g = clamped T_a values,
/// omega = -x f).
void write_solve_profile_csv(const fixpoint::SolveResult& res,
                             const std::string& path);

/// Sweep CSV: a,b,c,k,mu,cl,cw,gamma,ra,L,pa,iters,residual; when a_c is
/// known a footer line `# {"a_c": ...}` is appended.
void write_sweep_csv(const continuation::SweepResult& sweep,
                     const std::string& path);

}  // namespace gclm::io
