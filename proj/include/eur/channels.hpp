#pragma once

#include <vector>

#include "eur/qmat.hpp"
#include "eur/states.hpp"

namespace eur {

// Operator-sum channel; Σ K†K = 1 to 1e-10.
class KrausChannel {
 public:
  static KrausChannel from_ops(std::vector<Matrix> ops, double tol = 1e-10);
  const std::vector<Matrix>& ops() const noexcept { return ops_; }
  std::size_t dim() const noexcept { return ops_.front().cols(); }

 private:
  explicit KrausChannel(std::vector<Matrix> ops) : ops_(std::move(ops)) {}
  std::vector<Matrix> ops_;
};

DensityMatrix apply_kraus(const DensityMatrix& rho, const KrausChannel& ch);

enum class NoiseKind { amplitude, phase };

// Single-qubit factors, with p the damping probability:
//   amplitude: K0 = diag(1, √(1-p)), K1 = [[0, √p], [0, 0]]
//   phase:     K0 = diag(1, √(1-p)), K1 = diag(0, √p)
std::vector<Matrix> qubit_kraus(NoiseKind kind, double p);

// {K_u ⊗ K_v}: independent damping on A (pA) and B (pB). pB = 0 is the
// one-sided channel.
KrausChannel local_channel(NoiseKind kind, double p_a, double p_b);

// Closed forms for a Bell-diagonal input under two-sided damping with the same p.
DensityMatrix ad_closed_form(const BellDiagonalParams& c, double p);
DensityMatrix pd_closed_form(const BellDiagonalParams& c, double p);

// Markovian damping probability for rate gamma after time t: 1 - e^{-Γt}.
double markov_damping(double rate, double t);

// Excited-state survival of a qubit in a Lorentzian (damped Jaynes-Cummings)
// reservoir, strong-coupling branch:
//   p_t = e^{-τt} [cos(Δt/2) + (τ/Δ) sin(Δt/2)]²,  Δ = √(2γ₀τ - τ²)
// Requires gamma0 > tau/2.
double jc_survival(double t, double gamma0, double tau);

// bell_like(alpha) after independent amplitude damping with decay 1 - p_t.
DensityMatrix jc_state(double alpha, double p_t);

// Σ_{j,k} p_j p_k (U_j⊗U_k) ρ0 (U_j⊗U_k)†, p_2 = 1 - p_1, phases φ_1 = 0,
// φ_2 = π, and in the basis (|1>, |0>)
//   U_j = [[cos gt, e^{-iφ_j} sin gt], [-e^{iφ_j} sin gt, cos gt]].
DensityMatrix random_field_state(const DensityMatrix& rho0, double gt, double p1);

// Single-qubit random-field propagator in the computational basis (|0>, |1>).
Matrix random_field_unitary(double gt, double phase);

// Bell-diagonal state with c1, c2 decaying as e^{-2γt} and c3 fixed.
DensityMatrix mazzola_state(const BellDiagonalParams& c, double gamma, double t);

// Parameters of the dynamical models, for range checks in one place.
struct NoiseParams {
  double p = 0.0;       // damping probability
  double gamma0 = 1.0;  // reservoir coupling rate
  double tau = 0.01;    // reservoir spectral width
  double g = 1.0;       // field coupling
  double p1 = 0.5;      // probability of field phase 0
  double gamma = 1.0;   // dephasing rate
  double t = 0.0;

  void validate(bool jaynes_cummings) const;
};

}  // namespace eur
