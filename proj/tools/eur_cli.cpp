// eur: scenario sweeps, randomized bound checks and single-state reports.

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "eur/bounds.hpp"
#include "eur/scenario.hpp"
#include "eur/textio.hpp"

namespace {

enum Exit { kOk = 0, kUsage = 1, kViolation = 2, kNumerical = 3 };

struct OptimizerFlags {
  eur::OptimizerConfig cfg;

  void attach(CLI::App* app) {
    app->add_option("--seed", cfg.seed, "optimizer seed (qutrit screening)");
    app->add_option("--grid", cfg.grid_points, "optimizer grid points per angle");
    app->add_option("--restarts", cfg.restarts, "optimizer local refinements");
    app->add_option("--refine", cfg.refine_iters, "optimizer sweep cap");
  }
};

eur::ObservablePair choose_observables(const std::string& obs, const std::vector<std::string>& files, std::size_t dim_a,
                                       const eur::ObservablePair* fallback) {
  if (!obs.empty() && !files.empty()) throw eur::ValidationError("use either --obs or --obs-file, not both");
  if (!files.empty()) {
    if (files.size() != 2) throw eur::ValidationError("--obs-file needs exactly two files (X then Z)");
    return eur::observable_files(files[0], files[1]);
  }
  if (!obs.empty()) return eur::parse_observable_choice(obs, dim_a);
  if (fallback) return *fallback;
  return eur::parse_observable_choice("builtin:1,3", dim_a);
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw eur::Error(fmt::format("cannot write '{}'", path));
  out << text;
}

std::pair<std::size_t, std::size_t> parse_dims(const std::string& s) {
  const std::size_t comma = s.find(',');
  if (comma == std::string::npos) throw eur::ParseError(1, 1, "dims must look like dA,dB");
  const double a = eur::parse_real(s.substr(0, comma)), b = eur::parse_real(s.substr(comma + 1), comma + 2);
  if (a < 1 || b < 1 || a != static_cast<std::size_t>(a) || b != static_cast<std::size_t>(b)) {
    throw eur::ParseError(1, 1, "dims must be positive integers");
  }
  return {static_cast<std::size_t>(a), static_cast<std::size_t>(b)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entropic uncertainty with quantum memory: bounds, correlations and noisy dynamics"};
  app.require_subcommand(1);
  app.fallthrough();
  unsigned threads = 0;
  app.add_option("--threads", threads, "worker threads (0: all cores)");

  auto* list = app.add_subcommand("list", "print the scenario names");

  auto* scen = app.add_subcommand("scenario", "evaluate a named sweep and write CSV");
  std::string scen_name, scen_sweep, scen_obs, scen_out;
  std::vector<std::string> scen_params, scen_files;
  OptimizerFlags scen_opt;
  scen->add_option("name", scen_name, "scenario name")->required()->check(CLI::IsMember(eur::scenario_names()));
  scen->add_option("--sweep", scen_sweep, "start:stop:points");
  scen->add_option("--param", scen_params, "key=value override")->allow_extra_args(false);
  scen->add_option("--obs", scen_obs, "builtin:i,j or bundled:k");
  scen->add_option("--obs-file", scen_files, "observable file, given twice (X then Z)")->allow_extra_args(false);
  scen->add_option("--out", scen_out, "output file (default stdout)");
  scen_opt.attach(scen);

  auto* ver = app.add_subcommand("verify", "check the bounds on random states");
  eur::VerifyOptions vopt;
  std::string ver_dims = "2,2", ver_worst;
  OptimizerFlags ver_opt;
  ver->add_option("--n", vopt.n, "number of states");
  ver->add_option("--dims", ver_dims, "dA,dB");
  ver->add_option("--seed", vopt.seed, "sampling seed");
  ver->add_option("--grid", ver_opt.cfg.grid_points, "optimizer grid points per angle");
  ver->add_option("--restarts", ver_opt.cfg.restarts, "optimizer local refinements");
  ver->add_option("--refine", ver_opt.cfg.refine_iters, "optimizer sweep cap");
  ver->add_option("--tol-b1", vopt.tol.berta, "tolerance for U >= Ub1");
  ver->add_option("--tol-b2", vopt.tol.pati, "tolerance for U >= Ub2");
  ver->add_option("--tol-b3", vopt.tol.universal, "tolerance for U >= Ub3");
  ver->add_option("--worst", ver_worst, "write the worst violating state here");

  auto* info = app.add_subcommand("info", "report every quantity for one state");
  std::string info_state, info_obs;
  std::vector<std::string> info_files;
  OptimizerFlags info_opt;
  info->add_option("--state", info_state, "family:key=value,...")->required();
  info->add_option("--obs", info_obs, "builtin:i,j or bundled:k (default builtin:1,3)");
  info->add_option("--obs-file", info_files, "observable file, given twice (X then Z)")->allow_extra_args(false);
  info_opt.attach(info);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (list->parsed()) {
      for (const auto& n : eur::scenario_names()) fmt::print("{}\n", n);
      return kOk;
    }

    if (scen->parsed()) {
      eur::ScenarioSpec spec = eur::default_scenario(scen_name);
      if (!scen_sweep.empty()) spec.sweep = eur::Sweep::parse(scen_sweep);
      for (const std::string& kv : scen_params) {
        const std::size_t eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) throw eur::ParseError(1, 1, fmt::format("expected key=value, got '{}'", kv));
        spec.set_param(kv.substr(0, eq), eur::parse_real(kv.substr(eq + 1), eq + 2));
      }
      if (!scen_obs.empty() || !scen_files.empty()) {
        spec.observables = choose_observables(scen_obs, scen_files, spec.dim_a, nullptr);
      }
      const auto rows = eur::run_scenario(spec, scen_opt.cfg, threads);
      write_output(scen_out, eur::format_csv(spec, scen_opt.cfg, rows));
      return kOk;
    }

    if (ver->parsed()) {
      const auto [da, db] = parse_dims(ver_dims);
      vopt.dims = {da, db};
      vopt.cfg = ver_opt.cfg;
      vopt.threads = threads;
      const eur::VerifyReport r = eur::verify(vopt);
      fmt::print("states      {}\n", r.n);
      fmt::print("dims        {},{}\n", da, db);
      fmt::print("seed        {}\n", vopt.seed);
      fmt::print("min U-Ub1   {:.3e}  (tol {:g})\n", r.slack_b1, vopt.tol.berta);
      fmt::print("min U-Ub2   {:.3e}  (tol {:g})\n", r.slack_b2, vopt.tol.pati);
      fmt::print("min U-Ub3   {:.3e}  (tol {:g})\n", r.slack_b3, vopt.tol.universal);
      fmt::print("min H(X)+H(Z)-2S(A)  {:.3e}  (tol {:g})\n", r.slack_single, vopt.single_tol);
      fmt::print("violations  {}\n", r.violations);
      if (r.violations > 0) {
        if (ver_worst.empty()) fmt::print("{}", r.worst);
        else write_output(ver_worst, r.worst);
        return kViolation;
      }
      return kOk;
    }

    if (info->parsed()) {
      const eur::DensityMatrix rho = eur::parse_state_spec(info_state);
      const eur::ObservablePair obs = choose_observables(info_obs, info_files, rho.dims().a, nullptr);
      const eur::Observable x = eur::Observable::from_matrix(obs.x);
      const eur::Observable z = eur::Observable::from_matrix(obs.z);
      const eur::BoundReport r = eur::evaluate_bounds(rho, x, z, info_opt.cfg);
      fmt::print("{}", eur::format_report(r));
      const std::size_t da = rho.dims().a;
      const std::string v = eur::bound_violations(r, eur::scenario_tolerances(da));
      if (!v.empty()) {
        fmt::print(stderr, "violation: {}\n", v);
        return kViolation;
      }
      return kOk;
    }
  } catch (const eur::BoundViolation& e) {
    fmt::print(stderr, "eur: {}\n", e.what());
    return kViolation;
  } catch (const eur::NumericalError& e) {
    fmt::print(stderr, "eur: numerical failure: {}\n", e.what());
    return kNumerical;
  } catch (const eur::Error& e) {
    fmt::print(stderr, "eur: {}\n", e.what());
    return kUsage;
  }
  return kUsage;
}
