#include "gclm/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "gclm/transform.hpp"

namespace gclm::io {

using nlohmann::json;

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string tail_kind_name(profile::TailKind kind) {
  switch (kind) {
    case profile::TailKind::Algebraic:
      return "algebraic";
    case profile::TailKind::GaussianClass:
      return "gaussian";
    case profile::TailKind::Compact:
      return "compact";
  }
  return "algebraic";
}

profile::TailKind tail_kind_from_name(const std::string& name) {
  if (name == "algebraic") return profile::TailKind::Algebraic;
  if (name == "gaussian") return profile::TailKind::GaussianClass;
  if (name == "compact") return profile::TailKind::Compact;
  throw std::invalid_argument("unknown tail kind: " + name);
}

namespace {

json finite_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

}  // namespace

json tail_to_json(const profile::TailModel& tail, double x_max) {
  json j;
  j["kind"] = tail_kind_name(tail.kind);
  j["r"] = finite_or_null(tail.r);
  j["C"] = finite_or_null(tail.C);
  j["L"] = finite_or_null(tail.L);
  j["f_inf"] = tail.f_inf;
  j["x_max"] = x_max;
  return j;
}

void write_profile_csv(const profile::ProfileGrid& f, const std::string& csv_path,
                       const std::string& sidecar_path) {
  std::ofstream out(csv_path);
  if (!out) throw std::runtime_error("cannot open " + csv_path);
  out << "x,f\n";
  for (std::size_t i = 0; i < f.nodes().size(); ++i)
    out << format_double(f.nodes()[i]) << ',' << format_double(f.values()[i])
        << '\n';
  std::ofstream side(sidecar_path);
  if (!side) throw std::runtime_error("cannot open " + sidecar_path);
  side << tail_to_json(f.tail(), f.x_max()).dump(2) << '\n';
}

profile::ProfileGrid read_profile_csv(const std::string& csv_path,
                                      const std::string& sidecar_path) {
  std::ifstream in(csv_path);
  if (!in) throw std::runtime_error("cannot open " + csv_path);
  std::string line;
  std::getline(in, line);  // header
  std::vector<double> xs, vs;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) continue;
    xs.push_back(std::stod(line.substr(0, comma)));
    vs.push_back(std::stod(line.substr(comma + 1)));
  }
  std::ifstream side(sidecar_path);
  if (!side) throw std::runtime_error("cannot open " + sidecar_path);
  json j = json::parse(side);
  profile::TailModel tail;
  tail.kind = tail_kind_from_name(j.at("kind").get<std::string>());
  auto get_or = [&j](const char* key, double fallback) {
    return (j.contains(key) && j[key].is_number()) ? j[key].get<double>()
                                                   : fallback;
  };
  tail.r = get_or("r", 0.0);
  tail.C = get_or("C", 0.0);
  tail.L = get_or("L", std::numeric_limits<double>::infinity());
  tail.f_inf = get_or("f_inf", 0.0);
  return profile::ProfileGrid::from_samples(std::move(xs), std::move(vs), tail);
}

json solve_result_to_json(const fixpoint::SolveResult& res) {
  json j;
  j["a"] = res.a;
  j["b"] = res.b;
  j["c"] = res.c;
  j["k"] = res.k;
  j["mu"] = res.mu;
  j["Q"] = res.Q;
  j["c_l"] = res.c_l;
  j["c_omega"] = res.c_omega;
  j["gamma"] = res.gamma;
  j["r_a"] = finite_or_null(res.r_a);
  json sup;
  sup["kind"] = tail_kind_name(res.support.kind);
  sup["L"] = finite_or_null(res.support.L);
  sup["p_a"] = finite_or_null(res.support.p_a);
  sup["r"] = finite_or_null(res.support.r);
  sup["C"] = finite_or_null(res.support.C);
  j["support"] = sup;
  j["iterations"] = res.iterations;
  j["residual"] = res.residual;
  json ids = json::object();
  for (const auto& [p, v] : res.identity_residuals) ids[std::to_string(p)] = v;
  j["identity_residuals"] = ids;
  return j;
}

void write_solve_profile_csv(const fixpoint::SolveResult& res,
                             const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  const auto ta = transform::apply_Ta(res.field, res.a);
  const auto& xs = res.profile.nodes();
  const auto& vs = res.profile.values();
  out << "x,f,g,omega\n";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double g = std::max(ta.g[i], 0.0);
    out << format_double(xs[i]) << ',' << format_double(vs[i]) << ','
        << format_double(g) << ',' << format_double(-xs[i] * vs[i]) << '\n';
  }
}

void write_sweep_csv(const continuation::SweepResult& sweep,
                     const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << "a,b,c,k,mu,cl,cw,gamma,ra,L,pa,iters,residual\n";
  for (const auto& r : sweep.records) {
    out << format_double(r.a) << ',' << format_double(r.b) << ','
        << format_double(r.c) << ',' << format_double(r.k) << ','
        << format_double(r.mu) << ',' << format_double(r.c_l) << ','
        << format_double(r.c_omega) << ',' << format_double(r.gamma) << ','
        << format_double(r.r_a) << ',' << format_double(r.L) << ','
        << format_double(r.p_a) << ',' << r.iterations << ','
        << format_double(r.residual) << '\n';
  }
  if (sweep.a_c) {
    json foot;
    foot["a_c"] = *sweep.a_c;
    out << "# " << foot.dump() << '\n';
  }
}

}  // namespace gclm::io
