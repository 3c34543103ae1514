// Command-line front end for the self-similar profile solver:
//   gclm solve     -- fixed-point solve at one value of a
//   gclm sweep     -- parameter sweep with warm or cold seeding
//   gclm critical  -- bisection for the critical a_c
//   gclm verify    -- golden verification suite
// Exit codes: 0 success, 1 usage error, 2 runtime failure (non-convergence,
// bracket failure).

#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gclm/continuation.hpp"
#include "gclm/fixpoint.hpp"
#include "gclm/io.hpp"
#include "gclm/reference.hpp"
#include "gclm/specfun.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CommonOpts {
  double tol = 1e-7;
  int max_iter = 50;
  double xmax = 1e4;
  std::string seed = "lorentzian";
  std::string config_path;
};

// Config precedence: flags > --config JSON > defaults.  The JSON file may
// set any of {tol, max_iter, xmax, seed}; values are applied only for
// options not given explicitly on the command line.
void load_config_file(CommonOpts& opts, const CLI::App* cmd) {
  if (opts.config_path.empty()) return;
  std::ifstream in(opts.config_path);
  if (!in) throw CLI::ValidationError("--config", "cannot open " + opts.config_path);
  json j = json::parse(in);
  if (j.contains("tol") && !cmd->count("--tol")) opts.tol = j["tol"].get<double>();
  if (j.contains("max_iter") && !cmd->count("--max-iter"))
    opts.max_iter = j["max_iter"].get<int>();
  if (j.contains("xmax") && !cmd->count("--xmax"))
    opts.xmax = j["xmax"].get<double>();
  if (j.contains("seed") && !cmd->count("--seed"))
    opts.seed = j["seed"].get<std::string>();
}

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--tol", opts.tol, "residual tolerance (weighted sup norm)");
  cmd->add_option("--max-iter", opts.max_iter, "iteration cap");
  cmd->add_option("--xmax", opts.xmax, "grid truncation radius");
  cmd->add_option("--seed", opts.seed,
                  "seed profile: lorentzian|fm|fhalf|file:<csv>");
  cmd->add_option("--config", opts.config_path, "JSON config file");
}

gclm::fixpoint::SolveConfig make_config(const CommonOpts& opts, double a) {
  gclm::fixpoint::SolveConfig cfg;
  cfg.a = a;
  cfg.tol = opts.tol;
  cfg.max_iter = opts.max_iter;
  cfg.grid.x_max = opts.xmax;
  if (opts.seed == "lorentzian") {
    cfg.seed_kind = gclm::profile::SeedKind::SeedLorentzian;
  } else if (opts.seed == "fm") {
    cfg.seed_kind = gclm::profile::SeedKind::Fm;
  } else if (opts.seed == "fhalf") {
    cfg.seed_kind = gclm::profile::SeedKind::FHalf;
  } else if (opts.seed.rfind("file:", 0) == 0) {
    const std::string path = opts.seed.substr(5);
    cfg.seed = gclm::io::read_profile_csv(path, path + ".tail.json");
  } else {
    throw CLI::ValidationError("--seed", "unknown seed " + opts.seed);
  }
  return cfg;
}

json effective_config_json(const CommonOpts& opts, double a) {
  json j;
  j["a"] = a;
  j["tol"] = opts.tol;
  j["max_iter"] = opts.max_iter;
  j["xmax"] = opts.xmax;
  j["seed"] = opts.seed;
  return j;
}

std::vector<double> parse_a_list(const std::string& list) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos < list.size()) {
    std::size_t next = list.find(',', pos);
    if (next == std::string::npos) next = list.size();
    out.push_back(std::stod(list.substr(pos, next - pos)));
    pos = next + 1;
  }
  return out;
}

int run_solve(double a, const CommonOpts& opts, const std::string& out_base,
              const std::string& format) {
  auto cfg = make_config(opts, a);
  auto res = gclm::fixpoint::solve(cfg);
  json meta = gclm::io::solve_result_to_json(res);
  meta["config"] = effective_config_json(opts, a);
  if (out_base.empty()) {
    std::cout << meta.dump(2) << '\n';
  } else {
    gclm::io::write_solve_profile_csv(res, out_base + ".csv");
    std::ofstream mj(out_base + ".json");
    mj << meta.dump(2) << '\n';
    std::cout << (format == "json" ? meta.dump(2)
                                   : "wrote " + out_base + ".csv, " + out_base +
                                         ".json")
              << '\n';
  }
  return res.converged ? 0 : 2;
}

int run_sweep(const std::vector<double>& a_values, const std::string& mode,
              int jobs, const CommonOpts& opts, const std::string& out_dir) {
  using gclm::continuation::SweepMode;
  const SweepMode m =
      (mode == "cold") ? SweepMode::Cold : SweepMode::Continuation;
  auto base = make_config(opts, 0.0);
  gclm::continuation::SweepResult sweep;
  std::vector<gclm::fixpoint::SolveResult> results(a_values.size());
  if (m == SweepMode::Cold && jobs > 1) {
    // cold solves are independent; run them in parallel, report in a-order
    std::vector<std::future<gclm::fixpoint::SolveResult>> futs;
    for (double a : a_values)
      futs.push_back(std::async(std::launch::async, [a, &base] {
        auto cfg = base;
        cfg.a = a;
        return gclm::fixpoint::solve(cfg);
      }));
    for (std::size_t i = 0; i < futs.size(); ++i) {
      results[i] = futs[i].get();
      sweep.records.push_back(gclm::continuation::to_record(results[i]));
    }
  } else {
    sweep = gclm::continuation::sweep(a_values, m, base);
  }
  fs::create_directories(out_dir);
  gclm::io::write_sweep_csv(sweep, out_dir + "/sweep.csv");
  // per-a profiles (continuation mode recomputes to keep the profile data)
  for (std::size_t i = 0; i < a_values.size(); ++i) {
    if (m == SweepMode::Cold && jobs > 1) {
      const std::string stem =
          out_dir + "/profile_a" + gclm::io::format_double(a_values[i]);
      gclm::io::write_profile_csv(results[i].profile, stem + ".csv",
                                  stem + ".csv.tail.json");
    }
  }
  bool ok = true;
  for (const auto& r : sweep.records) ok = ok && r.converged;
  std::cout << "wrote " << out_dir << "/sweep.csv\n";
  return ok ? 0 : 2;
}

int run_critical(double a_lo, double a_hi, double tol_a, const CommonOpts& opts,
                 const std::string& out_path) {
  auto base = make_config(opts, 0.0);
  std::vector<gclm::continuation::SweepRecord> trace;
  const double a_c =
      gclm::continuation::find_critical_a(a_lo, a_hi, tol_a, base, &trace);
  gclm::continuation::SweepResult sweep;
  sweep.records = trace;
  sweep.a_c = a_c;
  if (!out_path.empty()) gclm::io::write_sweep_csv(sweep, out_path);
  std::cout << "a_c = " << gclm::io::format_double(a_c) << '\n';
  return 0;
}

int run_verify(bool as_json, double inject_f_error) {
  auto rep = gclm::reference::verify_all(inject_f_error);
  if (as_json) {
    json arr = json::array();
    for (const auto& ch : rep.checks) {
      json j;
      j["name"] = ch.name;
      j["computed"] = ch.computed;
      j["expected"] = ch.expected;
      j["tol"] = ch.tol;
      j["pass"] = ch.pass;
      arr.push_back(j);
    }
    std::cout << arr.dump(2) << '\n';
  } else {
    for (const auto& ch : rep.checks) {
      std::cout << (ch.pass ? "PASS" : "FAIL") << "  " << ch.name
                << "  computed=" << gclm::io::format_double(ch.computed)
                << " expected=" << gclm::io::format_double(ch.expected)
                << " tol=" << gclm::io::format_double(ch.tol) << '\n';
    }
  }
  return rep.all_pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"self-similar blowup profile solver for the gCLM model"};
  app.require_subcommand(1);

  // solve
  auto* solve = app.add_subcommand("solve", "fixed-point solve at one a");
  double a = 0.0;
  CommonOpts solve_opts;
  std::string out_base, format = "csv";
  solve->add_option("--a", a, "advection parameter (must be <= 1)")
      ->required()
      ->check(CLI::Range(-std::numeric_limits<double>::infinity(), 1.0).description(
          "a <= 1 (profiles exist for all a <= 1)"));
  solve->add_option("--out", out_base, "output base path (.csv/.json appended)");
  solve->add_option("--format", format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  add_common(solve, solve_opts);

  // sweep
  auto* sweepc = app.add_subcommand("sweep", "parameter sweep over a");
  CommonOpts sweep_opts;
  std::string a_list, mode = "continuation", out_dir = "sweep_out";
  double a_min = 0.0, a_max = 0.0, step = 0.0;
  int jobs = 1;
  sweepc->add_option("--a-list", a_list, "comma-separated a values");
  sweepc->add_option("--a-min", a_min, "sweep start");
  sweepc->add_option("--a-max", a_max, "sweep end");
  sweepc->add_option("--step", step, "sweep step (> 0)");
  sweepc->add_option("--mode", mode, "continuation|cold")
      ->check(CLI::IsMember({"continuation", "cold"}));
  sweepc->add_option("--jobs", jobs, "parallel cold-start solves");
  sweepc->add_option("--out", out_dir, "output directory");
  add_common(sweepc, sweep_opts);

  // critical
  auto* crit = app.add_subcommand("critical", "bisection for a_c");
  CommonOpts crit_opts;
  double tol_a = 5e-3;
  std::string bracket, crit_out = "critical_trace.csv";
  crit->add_option("--tol-a", tol_a, "bracket width target");
  crit->add_option("--bracket", bracket, "lo,hi bracket (defaults to the sharp bounds)");
  crit->add_option("--out", crit_out, "bisection trace CSV path");
  add_common(crit, crit_opts);

  // verify
  auto* ver = app.add_subcommand("verify", "golden verification suite");
  bool ver_json = false;
  double inject_f = 0.0;
  ver->add_flag("--json", ver_json, "machine-readable report");
  ver->add_option("--inject-f-error", inject_f,
                  "fault-injection: relative error applied to kernel checks")
      ->group("");  // hidden

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 1;
  }

  try {
    if (*solve) {
      load_config_file(solve_opts, solve);
      // re-apply flag values over config (flags already parsed into opts)
      return run_solve(a, solve_opts, out_base, format);
    }
    if (*sweepc) {
      load_config_file(sweep_opts, sweepc);
      std::vector<double> values;
      if (!a_list.empty()) {
        values = parse_a_list(a_list);
      } else if (step > 0.0 && a_max >= a_min) {
        for (double v = a_min; v <= a_max + 1e-12; v += step) values.push_back(v);
      }
      if (values.empty()) {
        std::cerr << "sweep: empty range (use --a-list or --a-min/--a-max/--step)\n";
        return 1;
      }
      for (double v : values)
        if (v > 1.0) {
          std::cerr << "sweep: a must be <= 1\n";
          return 1;
        }
      return run_sweep(values, mode, jobs, sweep_opts, out_dir);
    }
    if (*crit) {
      load_config_file(crit_opts, crit);
      double lo = gclm::specfun::constants().a_lower;
      double hi = gclm::specfun::constants().a_upper;
      if (!bracket.empty()) {
        auto vals = parse_a_list(bracket);
        if (vals.size() != 2) {
          std::cerr << "critical: --bracket expects lo,hi\n";
          return 1;
        }
        lo = vals[0];
        hi = vals[1];
      }
      return run_critical(lo, hi, tol_a, crit_opts, crit_out);
    }
    if (*ver) return run_verify(ver_json, inject_f);
  } catch (const gclm::continuation::BracketError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const gclm::fixpoint::ConvergenceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const CLI::Error& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
