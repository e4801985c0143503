// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "eur/bounds.hpp"
#include "eur/channels.hpp"
#include "eur/correlations.hpp"
#include "eur/entropy.hpp"
#include "eur/scenario.hpp"
#include "eur/states.hpp"
#include "support.hpp"

using namespace eur;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::vector<TimeSeriesRow> rows_of(const std::string& name, const char* obs = nullptr) {
  ScenarioSpec spec = default_scenario(name);
  if (obs) spec.observables = parse_observable_choice(obs, spec.dim_a);
  return run_scenario(spec, {});
}

Outcome fuzz_bounds() {
  const auto t0 = std::chrono::steady_clock::now();
  VerifyOptions a;
  a.n = 2000;
  a.dims = {2, 2};
  const VerifyReport ra = verify(a);
  VerifyOptions b;
  b.n = 500;
  b.dims = {2, 3};
  const VerifyReport rb = verify(b);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool ok = ra.violations == 0 && rb.violations == 0 && secs <= 300.0;
  return {ok, fmt::format("violations {}+{}, min slack b1 {:.2e} b2 {:.2e} b3 {:.2e}, {:.1f} s", ra.violations, rb.violations,
                          std::min(ra.slack_b1, rb.slack_b1), std::min(ra.slack_b2, rb.slack_b2),
                          std::min(ra.slack_b3, rb.slack_b3), secs)};
}

Outcome single_system() {
  std::mt19937_64 rng(2002);
  double worst = INFINITY;
  for (std::size_t d : {2, 3}) {
    for (int t = 0; t < 2000; ++t) {
      const DensityMatrix ra = testing::random_state({d, 1}, rng);
      const auto px = ProjectiveMeasurement::from_basis(testing::random_unitary(d, rng)).projectors();
      const auto pz = ProjectiveMeasurement::from_basis(testing::random_unitary(d, rng)).projectors();
      const double hx = shannon(outcome_distribution(ra, px)), hz = shannon(outcome_distribution(ra, pz));
      worst = std::min(worst, hx + hz - 2 * von_neumann(ra));
    }
  }
  return {worst >= -1e-9, fmt::format("min H(X)+H(Z)-2S(A) = {:.3e}", worst)};
}

Outcome werner_closed_forms() {
  const Observable x = spin_observable(1, 2), z = spin_observable(3, 2);
  double eu = 0, eb3 = 0, eb1 = 0;
  for (int i = 0; i <= 20; ++i) {
    const double f = i / 20.0;
    const BoundReport r = evaluate_bounds(werner(2, f), x, z);
    const double u = 2 - testing::xlog2x(1 - f) - testing::xlog2x(1 + f);
    const double berta = 2 - testing::xlog2x(1 + 3 * f) / 4 - 3 * testing::xlog2x(1 - f) / 4;
    eu = std::max(eu, std::abs(r.U - u));
    eb3 = std::max(eb3, std::abs(r.U_b3 - r.U));
    eb1 = std::max(eb1, std::abs(berta - (1 + r.S_cond)));
  }
  return {eu <= 1e-8 && eb3 <= 1e-4 && eb1 <= 1e-8, fmt::format("U err {:.1e}, Ub3-U {:.1e}, Berta err {:.1e}", eu, eb3, eb1)};
}

Outcome tightness() {
  const std::pair<const char*, const char*> cases[] = {
      {"werner-qubit", nullptr}, {"isotropic-d2", "builtin:1,3"}, {"qubit-qutrit", nullptr}, {"qubit-ququart", nullptr}};
  bool ok = true;
  std::string detail;
  for (const auto& [name, obs] : cases) {
    double tight = 0, gap = 0;
    for (const TimeSeriesRow& r : rows_of(name, obs)) {
      tight = std::max(tight, std::abs(r.Ub3 - r.U));
      gap = std::max(gap, r.Ub3 - r.Ub1);
    }
    ok = ok && tight <= 1e-4 && gap > 0.01;
    detail += fmt::format("{}{} |U-Ub3| {:.1e} gap {:.3f}", detail.empty() ? "" : "; ", name, tight, gap);
  }
  return {ok, detail};
}

Outcome channel_oracle() {
  std::mt19937_64 rng(2005);
  double worst = 0;
  for (int t = 0; t < 20; ++t) {
    const BellDiagonalParams c = bell_coordinates(testing::random_simplex(rng));
    const DensityMatrix rho = bell_diagonal(c);
    for (int i = 0; i <= 100; ++i) {
      const double p = i / 100.0;
      worst = std::max(worst, max_abs_diff(ad_closed_form(c, p).matrix(),
                                            apply_kraus(rho, local_channel(NoiseKind::amplitude, p, p)).matrix()));
      worst = std::max(worst, max_abs_diff(pd_closed_form(c, p).matrix(),
                                            apply_kraus(rho, local_channel(NoiseKind::phase, p, p)).matrix()));
    }
  }
  return {worst <= 1e-10, fmt::format("max entry error {:.1e}", worst)};
}

Outcome dual_form() {
  std::mt19937_64 rng(2006);
  const Dims shapes[] = {{2, 2}, {2, 3}, {3, 2}, {3, 3}};
  double worst = 0;
  for (int t = 0; t < 1000; ++t) {
    const Dims d = shapes[t % 4];
    const DensityMatrix rho = testing::random_state(d, rng);
    const ProjectiveMeasurement m = ProjectiveMeasurement::from_basis(testing::random_unitary(d.a, rng));
    worst = std::max(worst, std::abs(measured_conditional_entropy(rho, m) - measured_conditional_entropy_decomposed(rho, m)));
  }
  return {worst <= 1e-9, fmt::format("max difference {:.1e}", worst)};
}

Outcome concurrence_oracle() {
  std::mt19937_64 rng(2007);
  double worst = 0;
  for (int t = 0; t < 500; ++t) {
    const DensityMatrix rho = validate_density(testing::random_x_state(rng), {2, 2});
    worst = std::max(worst, std::abs(concurrence_x(rho) - concurrence(rho)));
  }
  return {worst <= 1e-9, fmt::format("max difference {:.1e}", worst)};
}

double stddev(const std::vector<double>& v) {
  double m = 0;
  for (double x : v) m += x;
  m /= double(v.size());
  double s = 0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / double(v.size()));
}

Outcome dephasing_plateau() {
  const auto rows = rows_of("pd-markov");
  std::vector<double> ub3, c;
  double drop = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    ub3.push_back(rows[i].Ub3);
    c.push_back(rows[i].C);
    if (i > 0) {
      drop = std::max({drop, rows[i - 1].U - rows[i].U, rows[i - 1].Ub1 - rows[i].Ub1, rows[i - 1].Ub2 - rows[i].Ub2});
    }
  }
  const double s3 = stddev(ub3), sc = stddev(c);
  return {s3 <= 1e-4 && sc <= 1e-4 && drop <= 1e-6,
          fmt::format("sd(Ub3) {:.1e}, sd(C) {:.1e}, largest decrease {:.1e}", s3, sc, drop)};
}

Outcome sudden_transition() {
  const ScenarioSpec spec = default_scenario("sudden-transition");
  const auto rows = run_scenario(spec, {});
  const double gamma = spec.param("gamma");
  const double t_star = std::log(1 / 0.6) / (2 * gamma);
  const double h = (spec.sweep.stop - spec.sweep.start) / (spec.sweep.steps - 1);
  double dd = 0, dc = 0, last_c_move = -1;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double t0 = rows[i - 1].x / gamma, t1 = rows[i].x / gamma;
    if (t1 < t_star) dd = std::max(dd, std::abs(rows[i].D - rows[i - 1].D));
    if (t0 > t_star) dc = std::max(dc, std::abs(rows[i].C - rows[i - 1].C));
    if (std::abs(rows[i].C - rows[i - 1].C) > 1e-3) last_c_move = t1;
  }
  const bool located = std::abs(last_c_move - t_star) <= h / gamma;
  return {dd <= 1e-3 && dc <= 1e-3 && located,
          fmt::format("max |dD| before t* {:.1e}, max |dC| after t* {:.1e}, C settles at t = {:.4f} (t* = {:.4f})", dd, dc,
                      last_c_move, t_star)};
}

Outcome field_periodicity() {
  const ScenarioSpec spec = default_scenario("random-field");
  const auto rows = run_scenario(spec, {});
  const double h = (spec.sweep.stop - spec.sweep.start) / (spec.sweep.steps - 1);
  const auto shift = static_cast<std::size_t>(std::lround(std::numbers::pi / h));
  if (std::abs(double(shift) * h - std::numbers::pi) > 1e-12) return {false, "sweep grid does not contain a shift by pi"};
  double worst = 0;
  for (std::size_t i = 0; i + shift < rows.size(); ++i) {
    const TimeSeriesRow &a = rows[i], &b = rows[i + shift];
    for (auto m : {&TimeSeriesRow::U, &TimeSeriesRow::Ub1, &TimeSeriesRow::Ub2, &TimeSeriesRow::Ub3, &TimeSeriesRow::Con,
                   &TimeSeriesRow::D, &TimeSeriesRow::C, &TimeSeriesRow::I})
      worst = std::max(worst, std::abs(a.*m - b.*m));
  }
  return {worst <= 1e-6, fmt::format("max difference between gt and gt+pi {:.1e}", worst)};
}

Outcome determinism() {
  bool ok = true;
  for (const char* name : {"jc-nonmarkov", "isotropic-d3"}) {
    ScenarioSpec spec = default_scenario(name);
    if (spec.dim_a == 3) spec.sweep.steps = 11;
    const std::string a = format_csv(spec, {}, run_scenario(spec, {}, 1));
    const std::string b = format_csv(spec, {}, run_scenario(spec, {}, 0));
    const std::string c = format_csv(spec, {}, run_scenario(spec, {}, 1));
    ok = ok && a == b && a == c;
  }
  return {ok, ok ? "identical CSV across repeated runs and thread counts" : "CSV output differs between runs"};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"bound inequalities on random states", fuzz_bounds},
      {"single-system entropic bound", single_system},
      {"Werner closed forms", werner_closed_forms},
      {"universal bound tightness", tightness},
      {"channel closed forms vs Kraus", channel_oracle},
      {"dual form of measured conditional entropy", dual_form},
      {"X-state concurrence", concurrence_oracle},
      {"dephasing: frozen bound and classical correlation", dephasing_plateau},
      {"sudden transition of classical correlation", sudden_transition},
      {"random-field periodicity", field_periodicity},
      {"deterministic CSV", determinism},
  };
  int failed = 0, k = 0;
  for (const auto& [name, run] : criteria) {
    ++k;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, fmt::format("error: {}", e.what())};
    }
    failed += !o.pass;
    fmt::print("{} {:>2} {}: {}\n", o.pass ? "PASS" : "FAIL", k, name, o.detail);
    std::fflush(stdout);
  }
  fmt::print("{} of {} criteria passed\n", k - failed, k);
  return failed ? 1 : 0;
}
