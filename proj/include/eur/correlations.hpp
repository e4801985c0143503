#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "eur/entropy.hpp"
#include "eur/qmat.hpp"

namespace eur {

// Search settings for the classical-correlation optimizer.
//   grid_points  - points per angle of the qubit Bloch grid; for a qutrit A,
//                  grid_points * 8 random bases are screened instead.
//   refine_iters - cap on coordinate sweeps of the local refinement.
//   restarts     - number of screened candidates refined locally. The qubit
//                  search refines min(restarts, 4) grid maxima.
//   seed         - drives the qutrit screening; results are bit-identical for
//                  a fixed seed.
struct OptimizerConfig {
  int grid_points = 64;
  int refine_iters = 200;
  int restarts = 8;
  std::uint64_t seed = 0;

  void validate() const;
};

// S(ρ_B) - Σ_j p_j S(ρ_B|j)
double holevo_quantity(const DensityMatrix& rho, const ProjectiveMeasurement& m);

// Orthonormal qubit basis whose first vector has Bloch angles (theta, phi).
Matrix qubit_basis(double theta, double phi);

// exp(i Σ_k a_k λ_k) with the Gell-Mann matrices λ_1..λ_8; columns are the
// measurement basis for a qutrit.
Matrix qutrit_basis(std::span<const double, 8> coeffs);

// The k-th Gell-Mann matrix, k in 1..8.
Matrix gell_mann(int k);

struct ClassicalCorrelation {
  double value = 0.0;
  Matrix basis;  // columns: the optimal rank-1 measurement found
};

// Best Holevo quantity over rank-1 projective measurements on A (dA in {2,3}).
// Lower estimate of the optimum, accurate to the optimizer resolution.
ClassicalCorrelation optimize_classical_correlation(const DensityMatrix& rho, const OptimizerConfig& cfg = {});
double classical_correlation(const DensityMatrix& rho, const OptimizerConfig& cfg = {});

// Closed form for Bell-diagonal states: Σ± (1±c)/2 log2(1±c), c = max |c_i|.
double bell_diagonal_classical_closed(double c1, double c2, double c3);

struct CorrelationSummary {
  double mutual = 0.0;
  double classical = 0.0;
  double discord = 0.0;
};

// Mutual information, classical correlation and discord from one optimizer run.
CorrelationSummary correlations(const DensityMatrix& rho, const OptimizerConfig& cfg = {});

double discord(const DensityMatrix& rho, const OptimizerConfig& cfg = {});

// Two-qubit X states only (entries off the diagonal and anti-diagonal must
// vanish to 1e-10).
double concurrence_x(const DensityMatrix& rho);

// General two-qubit concurrence from the spectrum of sqrt(ρ) ρ~ sqrt(ρ).
double concurrence(const DensityMatrix& rho);

}  // namespace eur
