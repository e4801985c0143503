#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eur/bounds.hpp"
#include "eur/correlations.hpp"
#include "eur/qmat.hpp"

namespace eur {

// Raised when an emitted row breaks one of the bound inequalities.
struct BoundViolation : Error {
  using Error::Error;
};

// `steps` equally spaced points from start to stop inclusive.
struct Sweep {
  double start = 0.0;
  double stop = 1.0;
  int steps = 101;

  std::vector<double> points() const;
  void validate() const;
  // "a:b:n"; a and b accept the parse_real grammar ("4pi").
  static Sweep parse(std::string_view text);
};

// A pair of observables on A together with how it was chosen, for the CSV
// metadata.
struct ObservablePair {
  Matrix x;
  Matrix z;
  std::string label;
};

// "builtin:i,j" (spin observables σ_i, σ_j of the right dimension) or
// "bundled:k" (bundled Xk/Zk).
ObservablePair parse_observable_choice(std::string_view text, std::size_t dim_a);
ObservablePair observable_files(const std::string& x_path, const std::string& z_path);

struct ScenarioSpec {
  std::string name;
  std::string variable;  // sweep variable name, written to the CSV
  Sweep sweep;
  std::vector<std::pair<std::string, double>> params;
  ObservablePair observables;
  std::size_t dim_a = 2;

  double param(std::string_view key) const;
  // Only keys present in the defaults may be overridden.
  void set_param(std::string_view key, double value);
};

const std::vector<std::string>& scenario_names();
ScenarioSpec default_scenario(std::string_view name);

// The state a scenario evaluates at sweep value x.
DensityMatrix scenario_state(const ScenarioSpec& spec, double x);

struct TimeSeriesRow {
  double x = 0.0;
  double U = 0.0, Ub1 = 0.0, Ub2 = 0.0, Ub3 = 0.0;
  double Con = 0.0;  // NaN unless two qubits
  double D = 0.0, C = 0.0, I = 0.0;
};

// Tolerances used to check scenario rows: 1e-4 for the optimizer-based bounds
// with a qubit A, 1e-3 with a qutrit A.
BoundTolerances scenario_tolerances(std::size_t dim_a);

// Rows in sweep order. Points are evaluated on `threads` workers (0: one
// per hardware thread); the output does not depend on the count. Throws
// BoundViolation if any row breaks an inequality.
std::vector<TimeSeriesRow> run_scenario(const ScenarioSpec& spec, const OptimizerConfig& cfg, unsigned threads = 0);

inline constexpr std::string_view kVersion = "0.3.1";

// Metadata lines, header `x,U,Ub1,Ub2,Ub3,Con,D,C,I`, 12 significant digits.
std::string format_csv(const ScenarioSpec& spec, const OptimizerConfig& cfg, const std::vector<TimeSeriesRow>& rows);

struct VerifyOptions {
  int n = 2000;
  Dims dims{2, 2};
  std::uint64_t seed = 7;
  OptimizerConfig cfg;
  BoundTolerances tol;
  double single_tol = 1e-9;
  unsigned threads = 0;
};

struct VerifyReport {
  int n = 0;
  int violations = 0;
  double slack_b1 = 0.0;  // min over states of U - U_b1
  double slack_b2 = 0.0;
  double slack_b3 = 0.0;
  double slack_single = 0.0;  // min of H(X) + H(Z) - 2 S(A)
  int worst_index = -1;      // state with the largest violation, if any
  std::string worst;         // serialized state and observables
};

// Hilbert-Schmidt random states with random non-degenerate observable pairs.
// State i draws from its own stream seeded by (seed, i).
VerifyReport verify(const VerifyOptions& opt);

// Every BoundReport field with 9 decimals, and the tightest bound.
std::string format_report(const BoundReport& r);

// Name of the largest bound; ties within 1e-6 are listed after it.
std::string tightest_bound(const BoundReport& r);

}  // namespace eur
