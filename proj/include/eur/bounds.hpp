#pragma once

#include <optional>
#include <span>
#include <string>

#include "eur/correlations.hpp"
#include "eur/entropy.hpp"
#include "eur/qmat.hpp"

namespace eur {

// Observables must be non-degenerate: eigenvalue gaps above this.
inline constexpr double kDegeneracyGap = 1e-9;

struct DegenerateObservable : ValidationError {
  using ValidationError::ValidationError;
};

// Non-degenerate Hermitian observable with its eigensystem.
class Observable {
 public:
  // Throws ValidationError for non-Hermitian input, DegenerateObservable when
  // two eigenvalues are closer than kDegeneracyGap.
  static Observable from_matrix(const Matrix& m, double tol = kDefaultTol);

  const Matrix& matrix() const noexcept { return mat_; }
  const EigenSystem& eigensystem() const noexcept { return eig_; }
  double degeneracy_gap() const noexcept { return gap_; }
  std::size_t dim() const noexcept { return mat_.rows(); }

 private:
  Observable(Matrix m, EigenSystem es, double gap) : mat_(std::move(m)), eig_(std::move(es)), gap_(gap) {}
  Matrix mat_;
  EigenSystem eig_;
  double gap_;
};

// Rank-1 eigenprojectors of the observable.
ProjectiveMeasurement observable_measurement(const Observable& o);

// c = max_{i,j} |<x_i|z_j>|^2
double complementarity(const Observable& x, const Observable& z);

// max_i tr(E_i) over a POVM; 1 for rank-1 projective measurements.
double povm_max_trace(std::span<const Matrix> povm);

// Checks E_i >= 0 and Σ E_i = 1 (tol 1e-9).
void validate_povm(std::span<const Matrix> povm, std::size_t dim);

// log2(1/c(X)) + log2(1/c(Z)) + 2 S(ρ_A): lower bound on H(X) + H(Z) for a
// single-system state.
double single_system_bound(const DensityMatrix& rho_a, std::span<const Matrix> x, std::span<const Matrix> z);

// S(X|B) + S(Z|B)
double uncertainty_sum(const DensityMatrix& rho, const Observable& x, const Observable& z);

// One evaluation of the uncertainty and its three memory-assisted bounds,
// with every intermediate quantity kept so downstream output never
// recomputes with a different configuration.
struct BoundReport {
  double U = 0.0;
  double U_b1 = 0.0;  // log2(1/c) + S(A|B)
  double U_b2 = 0.0;  // U_b1 + max(0, D_A - J_A)
  double U_b3 = 0.0;  // 2 S(A|B) + 2 D_A
  double c = 0.0;
  double S_AB = 0.0;
  double S_B = 0.0;
  double S_cond = 0.0;
  double I = 0.0;
  double J_A = 0.0;
  double D_A = 0.0;
  std::optional<double> concurrence;  // two qubits only
};

BoundReport evaluate_bounds(const DensityMatrix& rho, const Observable& x, const Observable& z,
                            const OptimizerConfig& cfg = {});

struct BoundTolerances {
  double berta = 1e-9;
  double pati = 1e-4;
  double universal = 1e-4;
};

// Which inequalities (if any) the report violates beyond tolerance; empty
// string when all hold.
std::string bound_violations(const BoundReport& r, const BoundTolerances& tol);

// Pauli observables σ_1..σ_3 for a qubit; for a qutrit the same matrices
// embedded in the {|0>, |1>} block (eigenvalues 1, -1, 0).
Observable spin_observable(int k, std::size_t dim);

}  // namespace eur
