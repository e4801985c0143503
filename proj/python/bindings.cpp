#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <map>
#include <optional>
#include <string>

#include "eur/bounds.hpp"
#include "eur/channels.hpp"
#include "eur/correlations.hpp"
#include "eur/entropy.hpp"
#include "eur/scenario.hpp"
#include "eur/states.hpp"
#include "eur/textio.hpp"

namespace py = pybind11;
using namespace eur;

namespace {

using CArray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;

Matrix to_matrix(const CArray& a) {
  if (a.ndim() != 2) throw DimensionError("expected a 2-d array");
  const auto r = static_cast<std::size_t>(a.shape(0)), c = static_cast<std::size_t>(a.shape(1));
  return Matrix(r, c, std::vector<cplx>(a.data(), a.data() + r * c));
}

CArray to_array(const Matrix& m) {
  CArray out({m.rows(), m.cols()});
  std::copy(m.entries().begin(), m.entries().end(), out.mutable_data());
  return out;
}

OptimizerConfig make_cfg(int grid, int restarts, int refine, std::uint64_t seed) {
  OptimizerConfig cfg;
  cfg.grid_points = grid;
  cfg.restarts = restarts;
  cfg.refine_iters = refine;
  cfg.seed = seed;
  cfg.validate();
  return cfg;
}

Observable observable_of(const py::object& o) {
  if (py::isinstance<Observable>(o)) return o.cast<Observable>();
  return Observable::from_matrix(to_matrix(o.cast<CArray>()));
}

py::dict report_dict(const BoundReport& r) {
  py::dict d;
  d["U"] = r.U;
  d["U_b1"] = r.U_b1;
  d["U_b2"] = r.U_b2;
  d["U_b3"] = r.U_b3;
  d["c"] = r.c;
  d["S_AB"] = r.S_AB;
  d["S_B"] = r.S_B;
  d["S_cond"] = r.S_cond;
  d["I"] = r.I;
  d["J_A"] = r.J_A;
  d["D_A"] = r.D_A;
  d["concurrence"] = r.concurrence ? py::cast(*r.concurrence) : py::none();
  d["tightest"] = tightest_bound(r);
  return d;
}

#define EUR_CFG_ARGS py::arg("grid") = 64, py::arg("restarts") = 8, py::arg("refine") = 200, py::arg("seed") = 0

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Entropic uncertainty bounds with quantum memory";
  m.attr("__version__") = std::string(kVersion);

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DimensionError>(m, "DimensionError", error.ptr());
  auto validation = py::register_exception<ValidationError>(m, "ValidationError", error.ptr());
  py::register_exception<DegenerateObservable>(m, "DegenerateObservable", validation.ptr());
  py::register_exception<NumericalError>(m, "NumericalError", error.ptr());
  py::register_exception<ParseError>(m, "ParseError", error.ptr());
  py::register_exception<BoundViolation>(m, "BoundViolation", error.ptr());

  py::class_<DensityMatrix>(m, "DensityMatrix")
      .def(py::init([](const CArray& a, std::pair<std::size_t, std::size_t> dims, double tol) {
             return validate_density(to_matrix(a), {dims.first, dims.second}, tol);
           }),
           py::arg("matrix"), py::arg("dims"), py::arg("tol") = kDefaultTol)
      .def_property_readonly("matrix", [](const DensityMatrix& r) { return to_array(r.matrix()); })
      .def_property_readonly("dims", [](const DensityMatrix& r) { return std::make_pair(r.dims().a, r.dims().b); })
      .def("__repr__", [](const DensityMatrix& r) {
        return "DensityMatrix(dims=(" + std::to_string(r.dims().a) + ", " + std::to_string(r.dims().b) + "))";
      });

  py::class_<Observable>(m, "Observable")
      .def(py::init([](const CArray& a) { return Observable::from_matrix(to_matrix(a)); }), py::arg("matrix"))
      .def_property_readonly("matrix", [](const Observable& o) { return to_array(o.matrix()); })
      .def_property_readonly("eigenvalues", [](const Observable& o) { return o.eigensystem().values; });

  // states
  m.def("werner", &werner, py::arg("d"), py::arg("f"));
  m.def("isotropic", &isotropic, py::arg("d"), py::arg("f"));
  m.def("bell_diagonal", [](double c1, double c2, double c3) { return bell_diagonal({c1, c2, c3}); }, py::arg("c1"),
        py::arg("c2"), py::arg("c3"));
  m.def("bell_like", &bell_like, py::arg("alpha"));
  m.def("bell_mixture", &bell_mixture, py::arg("weights"),
        "Weights on (psi+, psi-, phi+, phi-).");
  m.def(
      "qubit_qudit",
      [](int qudit_dim, double alpha, double gamma) {
        if (qudit_dim != 3 && qudit_dim != 4) throw DimensionError("qudit dimension must be 3 or 4");
        return qubit_qudit(
            QubitQuditParams::from_alpha_gamma(qudit_dim == 3 ? QuditKind::qutrit : QuditKind::ququart, alpha, gamma));
      },
      py::arg("qudit_dim"), py::arg("alpha"), py::arg("gamma"));
  m.def("parse_state", &parse_state_spec, py::arg("spec"), "State from a 'family:key=value,...' description.");

  // entropies and correlations
  m.def("von_neumann", py::overload_cast<const DensityMatrix&>(&von_neumann), py::arg("rho"));
  m.def("conditional_entropy", &conditional_entropy, py::arg("rho"));
  m.def("mutual_information", &mutual_information, py::arg("rho"));
  m.def(
      "partial_trace",
      [](const DensityMatrix& rho, const std::string& keep) {
        if (keep != "A" && keep != "B") throw ValidationError("keep must be 'A' or 'B'");
        return partial_trace(rho, keep == "A" ? Subsystem::A : Subsystem::B);
      },
      py::arg("rho"), py::arg("keep"));
  m.def(
      "correlations",
      [](const DensityMatrix& rho, int grid, int restarts, int refine, std::uint64_t seed) {
        const CorrelationSummary s = correlations(rho, make_cfg(grid, restarts, refine, seed));
        py::dict d;
        d["mutual"] = s.mutual;
        d["classical"] = s.classical;
        d["discord"] = s.discord;
        return d;
      },
      py::arg("rho"), EUR_CFG_ARGS);
  m.def("concurrence", &concurrence, py::arg("rho"));

  // observables and bounds
  m.def("spin_observable", &spin_observable, py::arg("k"), py::arg("dim") = 2);
  m.def("bundled_observable", [](const std::string& name) { return Observable::from_matrix(bundled_observable(name)); },
        py::arg("name"));
  m.def(
      "complementarity",
      [](const py::object& x, const py::object& z) { return complementarity(observable_of(x), observable_of(z)); },
      py::arg("x"), py::arg("z"));
  m.def(
      "uncertainty_sum",
      [](const DensityMatrix& rho, const py::object& x, const py::object& z) {
        return uncertainty_sum(rho, observable_of(x), observable_of(z));
      },
      py::arg("rho"), py::arg("x"), py::arg("z"));
  m.def(
      "evaluate_bounds",
      [](const DensityMatrix& rho, const py::object& x, const py::object& z, int grid, int restarts, int refine,
         std::uint64_t seed) {
        return report_dict(evaluate_bounds(rho, observable_of(x), observable_of(z), make_cfg(grid, restarts, refine, seed)));
      },
      py::arg("rho"), py::arg("x"), py::arg("z"), EUR_CFG_ARGS);

  // channels
  m.def(
      "local_damping",
      [](const DensityMatrix& rho, const std::string& kind, double p_a, double p_b) {
        if (kind != "amplitude" && kind != "phase") throw ValidationError("kind must be 'amplitude' or 'phase'");
        return apply_kraus(rho, local_channel(kind == "amplitude" ? NoiseKind::amplitude : NoiseKind::phase, p_a, p_b));
      },
      py::arg("rho"), py::arg("kind"), py::arg("p_a"), py::arg("p_b"));
  m.def("jc_survival", &jc_survival, py::arg("t"), py::arg("gamma0"), py::arg("tau"));
  m.def("jc_state", &jc_state, py::arg("alpha"), py::arg("p_t"));
  m.def("random_field_state", &random_field_state, py::arg("rho0"), py::arg("gt"), py::arg("p1"));
  m.def(
      "dephased_bell_diagonal",
      [](double c1, double c2, double c3, double gamma, double t) { return mazzola_state({c1, c2, c3}, gamma, t); },
      py::arg("c1"), py::arg("c2"), py::arg("c3"), py::arg("gamma"), py::arg("t"));

  // scenarios and the verifier
  m.def("scenario_names", &scenario_names);
  m.def(
      "run_scenario",
      [](const std::string& name, std::optional<std::string> sweep, std::map<std::string, double> params,
         std::optional<std::string> observables, int grid, int restarts, int refine, std::uint64_t seed, unsigned threads) {
        ScenarioSpec spec = default_scenario(name);
        if (sweep) spec.sweep = Sweep::parse(*sweep);
        for (const auto& [k, v] : params) spec.set_param(k, v);
        if (observables) spec.observables = parse_observable_choice(*observables, spec.dim_a);
        const OptimizerConfig cfg = make_cfg(grid, restarts, refine, seed);
        std::vector<TimeSeriesRow> rows;
        {
          py::gil_scoped_release release;
          rows = run_scenario(spec, cfg, threads);
        }
        py::dict cols;
        auto column = [&](const char* key, double TimeSeriesRow::*field) {
          std::vector<double> v;
          for (const TimeSeriesRow& r : rows) v.push_back(r.*field);
          cols[key] = py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
        };
        column("x", &TimeSeriesRow::x);
        column("U", &TimeSeriesRow::U);
        column("Ub1", &TimeSeriesRow::Ub1);
        column("Ub2", &TimeSeriesRow::Ub2);
        column("Ub3", &TimeSeriesRow::Ub3);
        column("Con", &TimeSeriesRow::Con);
        column("D", &TimeSeriesRow::D);
        column("C", &TimeSeriesRow::C);
        column("I", &TimeSeriesRow::I);
        cols["csv"] = format_csv(spec, cfg, rows);
        return cols;
      },
      py::arg("name"), py::arg("sweep") = py::none(), py::arg("params") = std::map<std::string, double>{},
      py::arg("observables") = py::none(), EUR_CFG_ARGS, py::arg("threads") = 0);
  m.def(
      "verify",
      [](int n, std::pair<std::size_t, std::size_t> dims, std::uint64_t seed, unsigned threads) {
        VerifyOptions o;
        o.n = n;
        o.dims = {dims.first, dims.second};
        o.seed = seed;
        o.threads = threads;
        VerifyReport r;
        {
          py::gil_scoped_release release;
          r = verify(o);
        }
        py::dict d;
        d["n"] = r.n;
        d["violations"] = r.violations;
        d["slack_b1"] = r.slack_b1;
        d["slack_b2"] = r.slack_b2;
        d["slack_b3"] = r.slack_b3;
        d["slack_single"] = r.slack_single;
        return d;
      },
      py::arg("n") = 2000, py::arg("dims") = std::make_pair<std::size_t, std::size_t>(2, 2), py::arg("seed") = 7,
      py::arg("threads") = 0);
}
