#include "eur/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <random>
#include <thread>

#include <fmt/format.h>

#include "eur/channels.hpp"
#include "eur/entropy.hpp"
#include "eur/states.hpp"
#include "eur/textio.hpp"

namespace eur {

namespace {

// Runs fn(i) for i in [0, n) on a small pool; the first exception wins.
template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n || stop.load()) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        stop = true;
      }
    }
  };
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  pool.clear();
  if (error) std::rethrow_exception(error);
}

struct ScenarioDef {
  std::string_view name;
  std::string_view variable;
  Sweep sweep;
  std::vector<std::pair<std::string, double>> params;
  std::string_view observables;
  std::size_t dim_a;
  std::string_view note;
};

const std::vector<ScenarioDef>& scenario_defs() {
  static const std::vector<ScenarioDef> defs = {
      {"werner-qubit", "f", {0.0, 1.0, 101}, {}, "builtin:1,3", 2, ""},
      {"werner-qutrit", "f", {0.0, 1.0, 101}, {}, "builtin:1,3", 3, "qutrit spin observables act on the {|0>,|1>} block"},
      {"isotropic-d2", "f", {0.0, 1.0, 101}, {}, "bundled:1", 2, ""},
      {"isotropic-d3", "f", {0.0, 1.0, 101}, {}, "bundled:2", 3, ""},
      {"qubit-qutrit", "gamma", {0.0, 0.5, 101}, {{"alpha", 0.25}}, "bundled:3", 2, "beta fixed by 2 alpha + 3 beta + gamma = 1"},
      {"qubit-ququart", "gamma", {0.0, 0.6, 101}, {{"alpha", 0.1}}, "bundled:4", 2, "beta fixed by 4 alpha + 3 beta + gamma = 1"},
      {"ad-markov", "p", {0.0, 1.0, 201}, {{"c1", -0.8}, {"c2", -0.8}, {"c3", -0.8}}, "builtin:1,2", 2,
       "states evolved by Kraus operators; the amplitude-damping closed form is normalized with a single 1/4 factor"},
      {"pd-markov", "p", {0.0, 1.0, 201}, {{"c1", -0.8}, {"c2", -0.8}, {"c3", -0.8}}, "builtin:1,3", 2,
       "states evolved by Kraus operators; coherences decay as (1-p) with p the per-qubit damping probability"},
      {"jc-nonmarkov", "gamma0*t", {0.0, 30.0, 600}, {{"alpha", 1.0 / std::sqrt(10.0)}, {"gamma0", 1.0}, {"tau", 0.01}},
       "builtin:1,3", 2, "excited population taken as 1 - alpha^2; amplitude damping with decay 1 - p_t"},
      {"random-field", "g*t", {0.0, 4.0 * std::numbers::pi, 401},
       {{"w1p", 0.9}, {"w1m", 0.1}, {"w2p", 0.0}, {"w2m", 0.0}, {"p1", 0.025}}, "builtin:1,3", 2,
       "weights w1p,w1m,w2p,w2m on |psi+>,|psi->,|phi+>,|phi->; field phases 0 and pi drawn with product weights "
       "p_j p_k; 401 points so that gt+pi lies on the grid"},
      {"sudden-transition", "gamma*t", {0.0, 1.5, 300}, {{"c1", 1.0}, {"c2", -0.6}, {"c3", 0.6}, {"gamma", 1.0}},
       "builtin:1,3", 2, "c1 and c2 decay as exp(-2 gamma t), c3 fixed"},
      {"one-sided-pd", "p", {0.0, 1.0, 201}, {{"b", 0.7}, {"d", 0.3}, {"R", 0.7}, {"pB", 0.0}}, "builtin:1,3", 2,
       "initial state dR|phi+> + b(1-R)|phi-> + bR|psi+> + d(1-R)|psi-> with b+d=1; phase damping on A with "
       "probability p and on B with pB"},
  };
  return defs;
}

const ScenarioDef& find_def(std::string_view name) {
  for (const auto& d : scenario_defs())
    if (d.name == name) return d;
  throw ValidationError(fmt::format("unknown scenario '{}'", name));
}

Matrix random_gaussian(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix m(rows, cols);
  for (cplx& z : m.entries()) {
    const double re = g(rng);
    z = cplx(re, g(rng));
  }
  return m;
}

// GUE draw, redrawn until the spectrum is non-degenerate.
Observable random_observable(std::size_t d, std::mt19937_64& rng) {
  for (;;) {
    const Matrix a = random_gaussian(d, d, rng);
    try {
      return Observable::from_matrix(0.5 * (a + a.adjoint()));
    } catch (const DegenerateObservable&) {
    }
  }
}

double outcome_entropy(const DensityMatrix& rho_a, const Observable& o) {
  return shannon(outcome_distribution(rho_a, observable_measurement(o).projectors()));
}

}  // namespace

std::vector<double> Sweep::points() const {
  validate();
  std::vector<double> out(static_cast<std::size_t>(steps));
  if (steps == 1) {
    out[0] = start;
    return out;
  }
  const double h = (stop - start) / (steps - 1);
  for (int i = 0; i < steps; ++i) out[static_cast<std::size_t>(i)] = start + h * i;
  out.back() = stop;
  return out;
}

void Sweep::validate() const {
  if (steps < 1) throw ValidationError("sweep needs at least one point");
  if (!std::isfinite(start) || !std::isfinite(stop)) throw ValidationError("sweep bounds must be finite");
  if (stop < start) throw ValidationError("sweep must be ascending");
}

Sweep Sweep::parse(std::string_view text) {
  const std::size_t a = text.find(':');
  const std::size_t b = a == std::string_view::npos ? a : text.find(':', a + 1);
  if (b == std::string_view::npos) throw ParseError(1, 1, "sweep must look like start:stop:points");
  Sweep s;
  s.start = parse_real(text.substr(0, a), 1);
  s.stop = parse_real(text.substr(a + 1, b - a - 1), a + 2);
  const double n = parse_real(text.substr(b + 1), b + 2);
  if (n != std::floor(n) || n < 1 || n > 1e7) throw ParseError(1, b + 2, "point count must be a positive integer");
  s.steps = static_cast<int>(n);
  s.validate();
  return s;
}

ObservablePair parse_observable_choice(std::string_view text, std::size_t dim_a) {
  if (text.starts_with("builtin:")) {
    const std::string_view rest = text.substr(8);
    const std::size_t comma = rest.find(',');
    if (comma == std::string_view::npos) throw ParseError(1, 9, "expected builtin:i,j");
    const double i = parse_real(rest.substr(0, comma), 9), j = parse_real(rest.substr(comma + 1), 10 + comma);
    for (double k : {i, j})
      if (k != 1 && k != 2 && k != 3) throw ParseError(1, 9, "spin observable index must be 1, 2 or 3");
    if (i == j) throw ValidationError("the two observables must differ");
    return {spin_observable(static_cast<int>(i), dim_a).matrix(), spin_observable(static_cast<int>(j), dim_a).matrix(),
            std::string(text)};
  }
  if (text.starts_with("bundled:")) {
    const std::string_view k = text.substr(8);
    if (k != "1" && k != "2" && k != "3" && k != "4") throw ParseError(1, 9, "bundled pair index must be 1..4");
    ObservablePair p{bundled_observable(fmt::format("X{}", k)), bundled_observable(fmt::format("Z{}", k)), std::string(text)};
    if (p.x.rows() != dim_a) {
      throw DimensionError(fmt::format("bundled pair {} is {}x{}, subsystem A has dimension {}", k, p.x.rows(), p.x.rows(), dim_a));
    }
    return p;
  }
  throw ParseError(1, 1, "observables must be builtin:i,j or bundled:k");
}

ObservablePair observable_files(const std::string& x_path, const std::string& z_path) {
  return {read_matrix_file(x_path), read_matrix_file(z_path), fmt::format("file:{},{}", x_path, z_path)};
}

double ScenarioSpec::param(std::string_view key) const {
  for (const auto& [k, v] : params)
    if (k == key) return v;
  throw ValidationError(fmt::format("scenario '{}' has no parameter '{}'", name, key));
}

void ScenarioSpec::set_param(std::string_view key, double value) {
  for (auto& [k, v] : params)
    if (k == key) {
      v = value;
      return;
    }
  std::string known;
  for (const auto& [k, v] : params) known += (known.empty() ? "" : ", ") + k;
  throw ValidationError(
      fmt::format("scenario '{}' has no parameter '{}' (known: {})", name, key, known.empty() ? "none" : known));
}

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& d : scenario_defs()) out.emplace_back(d.name);
    return out;
  }();
  return names;
}

ScenarioSpec default_scenario(std::string_view name) {
  const ScenarioDef& d = find_def(name);
  ScenarioSpec s;
  s.name = d.name;
  s.variable = d.variable;
  s.sweep = d.sweep;
  s.params = d.params;
  s.dim_a = d.dim_a;
  s.observables = parse_observable_choice(d.observables, d.dim_a);
  return s;
}

DensityMatrix scenario_state(const ScenarioSpec& s, double x) {
  const std::string& n = s.name;
  if (n == "werner-qubit") return werner(2, x);
  if (n == "werner-qutrit") return werner(3, x);
  if (n == "isotropic-d2") return isotropic(2, x);
  if (n == "isotropic-d3") return isotropic(3, x);
  if (n == "qubit-qutrit") return qubit_qudit(QubitQuditParams::from_alpha_gamma(QuditKind::qutrit, s.param("alpha"), x));
  if (n == "qubit-ququart") return qubit_qudit(QubitQuditParams::from_alpha_gamma(QuditKind::ququart, s.param("alpha"), x));
  if (n == "ad-markov" || n == "pd-markov") {
    const NoiseKind kind = n == "ad-markov" ? NoiseKind::amplitude : NoiseKind::phase;
    const DensityMatrix rho0 = bell_diagonal({s.param("c1"), s.param("c2"), s.param("c3")});
    return apply_kraus(rho0, local_channel(kind, x, x));
  }
  if (n == "jc-nonmarkov") {
    const double g0 = s.param("gamma0");
    return jc_state(s.param("alpha"), jc_survival(x / g0, g0, s.param("tau")));
  }
  if (n == "random-field") {
    const DensityMatrix rho0 = bell_mixture({s.param("w1p"), s.param("w1m"), s.param("w2p"), s.param("w2m")});
    return random_field_state(rho0, x, s.param("p1"));
  }
  if (n == "sudden-transition") {
    const double gamma = s.param("gamma");
    if (!(gamma > 0.0)) throw ValidationError("gamma must be positive");
    return mazzola_state({s.param("c1"), s.param("c2"), s.param("c3")}, gamma, x / gamma);
  }
  if (n == "one-sided-pd") {
    const DensityMatrix rho0 = bell_mixture(bdr_bell_weights(s.param("b"), s.param("d"), s.param("R")));
    return apply_kraus(rho0, local_channel(NoiseKind::phase, x, s.param("pB")));
  }
  throw ValidationError(fmt::format("unknown scenario '{}'", n));
}

BoundTolerances scenario_tolerances(std::size_t dim_a) {
  const double t = dim_a == 2 ? 1e-4 : 1e-3;
  return {1e-9, t, t};
}

std::vector<TimeSeriesRow> run_scenario(const ScenarioSpec& spec, const OptimizerConfig& cfg, unsigned threads) {
  cfg.validate();
  const std::vector<double> xs = spec.sweep.points();
  const Observable x = Observable::from_matrix(spec.observables.x);
  const Observable z = Observable::from_matrix(spec.observables.z);
  if (x.dim() != spec.dim_a || z.dim() != spec.dim_a) {
    throw DimensionError(fmt::format("observables are {}x{}, subsystem A has dimension {}", x.dim(), x.dim(), spec.dim_a));
  }

  // States first and in order, so an out-of-range sweep fails before any
  // optimization starts and names the first bad point.
  std::vector<DensityMatrix> states;
  states.reserve(xs.size());
  for (double v : xs) {
    try {
      states.push_back(scenario_state(spec, v));
    } catch (const ValidationError& e) {
      throw ValidationError(fmt::format("{} = {}: {}", spec.variable, v, e.what()));
    }
  }

  std::vector<BoundReport> reports(xs.size());
  parallel_for(xs.size(), threads, [&](std::size_t i) { reports[i] = evaluate_bounds(states[i], x, z, cfg); });

  const BoundTolerances tol = scenario_tolerances(spec.dim_a);
  std::vector<TimeSeriesRow> rows;
  rows.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const BoundReport& r = reports[i];
    if (const std::string v = bound_violations(r, tol); !v.empty()) {
      throw BoundViolation(fmt::format("{} at {} = {}: {}", spec.name, spec.variable, xs[i], v));
    }
    rows.push_back({xs[i], r.U, r.U_b1, r.U_b2, r.U_b3, r.concurrence.value_or(std::numeric_limits<double>::quiet_NaN()),
                    r.D_A, r.J_A, r.I});
  }
  return rows;
}

std::string format_csv(const ScenarioSpec& spec, const OptimizerConfig& cfg, const std::vector<TimeSeriesRow>& rows) {
  std::string out = fmt::format("# eur {} scenario {}\n", kVersion, spec.name);
  out += fmt::format("# sweep: {}={:.17g}:{:.17g}:{}\n", spec.variable, spec.sweep.start, spec.sweep.stop, spec.sweep.steps);
  std::string params;
  for (const auto& [k, v] : spec.params) params += fmt::format("{}{}={:.17g}", params.empty() ? "" : ",", k, v);
  out += fmt::format("# params: {}\n", params.empty() ? "none" : params);
  out += fmt::format("# observables: {}\n", spec.observables.label);
  out += fmt::format("# optimizer: grid={} refine={} restarts={} seed={}\n", cfg.grid_points, cfg.refine_iters,
                     cfg.restarts, cfg.seed);
  if (const std::string_view note = find_def(spec.name).note; !note.empty()) out += fmt::format("# note: {}\n", note);
  out += "x,U,Ub1,Ub2,Ub3,Con,D,C,I\n";
  for (const TimeSeriesRow& r : rows) {
    out += fmt::format("{:.12g},{:.12g},{:.12g},{:.12g},{:.12g},{:.12g},{:.12g},{:.12g},{:.12g}\n", r.x, r.U, r.Ub1, r.Ub2,
                       r.Ub3, r.Con, r.D, r.C, r.I);
  }
  return out;
}

VerifyReport verify(const VerifyOptions& opt) {
  if (opt.dims.a != 2 && opt.dims.a != 3) throw DimensionError("verify supports dA = 2 or 3");
  if (opt.dims.b < 1 || opt.dims.b > 4) throw DimensionError("verify supports 1 <= dB <= 4");
  if (opt.n < 1) throw ValidationError("need at least one state");
  opt.cfg.validate();

  struct Sample {
    BoundReport report;
    double single = 0.0;
    Matrix rho, x, z;
  };
  const std::size_t n = static_cast<std::size_t>(opt.n);
  std::vector<Sample> samples(n);
  parallel_for(n, opt.threads, [&](std::size_t i) {
    std::seed_seq seq{static_cast<std::uint32_t>(opt.seed), static_cast<std::uint32_t>(opt.seed >> 32),
                      static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i >> 32)};
    std::mt19937_64 rng(seq);
    const std::size_t d = opt.dims.total();
    const Matrix g = random_gaussian(d, d, rng);
    Matrix gg = g * g.adjoint();
    gg *= 1.0 / gg.trace().real();
    const DensityMatrix rho = validate_density(gg, opt.dims);
    const Observable x = random_observable(opt.dims.a, rng);
    const Observable z = random_observable(opt.dims.a, rng);

    Sample& s = samples[i];
    s.report = evaluate_bounds(rho, x, z, opt.cfg);
    const DensityMatrix rho_a = partial_trace(rho, Subsystem::A);
    s.single = outcome_entropy(rho_a, x) + outcome_entropy(rho_a, z) - 2.0 * von_neumann(rho_a);
    s.rho = rho.matrix();
    s.x = x.matrix();
    s.z = z.matrix();
  });

  VerifyReport rep;
  rep.n = opt.n;
  rep.slack_b1 = rep.slack_b2 = rep.slack_b3 = rep.slack_single = std::numeric_limits<double>::infinity();
  double worst_excess = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Sample& s = samples[i];
    const BoundReport& r = s.report;
    const double s1 = r.U - r.U_b1, s2 = r.U - r.U_b2, s3 = r.U - r.U_b3;
    rep.slack_b1 = std::min(rep.slack_b1, s1);
    rep.slack_b2 = std::min(rep.slack_b2, s2);
    rep.slack_b3 = std::min(rep.slack_b3, s3);
    rep.slack_single = std::min(rep.slack_single, s.single);
    const double excess = std::max({-s1 - opt.tol.berta, -s2 - opt.tol.pati, -s3 - opt.tol.universal, -s.single - opt.single_tol});
    if (excess > 0.0) {
      ++rep.violations;
      if (excess > worst_excess) {
        worst_excess = excess;
        rep.worst_index = static_cast<int>(i);
      }
    }
  }
  if (rep.worst_index >= 0) {
    const Sample& s = samples[static_cast<std::size_t>(rep.worst_index)];
    rep.worst = fmt::format("# state {} (dA={}, dB={}), seed {}\n{}# X\n{}# Z\n{}", rep.worst_index, opt.dims.a, opt.dims.b,
                            opt.seed, format_matrix_text(s.rho), format_matrix_text(s.x), format_matrix_text(s.z));
  }
  return rep;
}

std::string tightest_bound(const BoundReport& r) {
  // Later bounds win exact ties, so a coincidence of all three reads as Ub3.
  const std::pair<const char*, double> b[] = {{"Ub3", r.U_b3}, {"Ub2", r.U_b2}, {"Ub1", r.U_b1}};
  std::size_t best = 0;
  for (std::size_t k = 1; k < 3; ++k)
    if (b[k].second > b[best].second + 1e-6) best = k;
  std::string ties;
  for (std::size_t k = 0; k < 3; ++k)
    if (k != best && std::abs(b[k].second - b[best].second) <= 1e-6) ties += fmt::format("{}{}", ties.empty() ? "" : ", ", b[k].first);
  return ties.empty() ? std::string(b[best].first) : fmt::format("{} (ties {})", b[best].first, ties);
}

std::string format_report(const BoundReport& r) {
  std::string out;
  auto line = [&](std::string_view name, double v) { out += fmt::format("{:<12}{:.9f}\n", name, v); };
  line("U", r.U);
  line("Ub1", r.U_b1);
  line("Ub2", r.U_b2);
  line("Ub3", r.U_b3);
  line("c", r.c);
  line("S(AB)", r.S_AB);
  line("S(B)", r.S_B);
  line("S(A|B)", r.S_cond);
  line("I(A:B)", r.I);
  line("J_A", r.J_A);
  line("D_A", r.D_A);
  if (r.concurrence) line("concurrence", *r.concurrence);
  out += fmt::format("{:<12}{}\n", "tightest", tightest_bound(r));
  return out;
}

}  // namespace eur
