#pragma once

#include <span>
#include <vector>

#include "eur/qmat.hpp"

namespace eur {

// All entropies are in bits.

// Validated outcome distribution. Entries may sit up to tol outside [0, 1]
// from roundoff; they are clipped on use.
struct ProbabilityDistribution {
  std::vector<double> probs;

  static ProbabilityDistribution validated(std::vector<double> probs, double tol = kDefaultTol);
};

double shannon(const ProbabilityDistribution& p);
double shannon(std::span<const double> probs, double tol = kDefaultTol);

// -Σ λ log2 λ over a (possibly unnormalized) spectrum; entries below 1e-12
// in magnitude count as zero. No validation: internal building block.
double spectrum_entropy(std::span<const double> spectrum);

double von_neumann(const DensityMatrix& rho);
// Raw Hermitian PSD matrix, trace need not be one (returns -Σ λ log λ).
double von_neumann(const Matrix& m);

// S(AB) - S(B)
double conditional_entropy(const DensityMatrix& rho);

double mutual_information(const DensityMatrix& rho);

// Complete family of orthogonal projectors on subsystem A. Ranks may exceed
// one (needed for the single-system POVM inequality); observables produce
// rank-1 families.
class ProjectiveMeasurement {
 public:
  static ProjectiveMeasurement from_projectors(std::vector<Matrix> projectors, double tol = 1e-10);
  // Rank-1 projectors onto the columns of a unitary.
  static ProjectiveMeasurement from_basis(const Matrix& unitary, double tol = 1e-10);

  std::size_t dim() const noexcept { return projectors_.front().rows(); }
  std::size_t size() const noexcept { return projectors_.size(); }
  const std::vector<Matrix>& projectors() const noexcept { return projectors_; }
  const Matrix& operator[](std::size_t i) const { return projectors_[i]; }

 private:
  explicit ProjectiveMeasurement(std::vector<Matrix> p) : projectors_(std::move(p)) {}
  std::vector<Matrix> projectors_;
};

struct MeasurementOutcome {
  ProbabilityDistribution probs;
  std::vector<DensityMatrix> conditional_states;  // states of B, one per outcome
  DensityMatrix post_state;                       // Σ (Π_i⊗1) ρ (Π_i⊗1)
};

// Outcomes with probability below this get the maximally mixed conditional.
inline constexpr double kNegligibleOutcome = 1e-14;

MeasurementOutcome measure_on_A(const DensityMatrix& rho, const ProjectiveMeasurement& m);

// S(X|B) = S(ρ^X) - S(ρ_B), from the post-measurement state.
double measured_conditional_entropy(const DensityMatrix& rho, const ProjectiveMeasurement& m);

// Σ p_i S(ρ_B|i) + H(P) - S(ρ_B). Same quantity by a different route; the
// two are compared in tests.
double measured_conditional_entropy_decomposed(const DensityMatrix& rho, const ProjectiveMeasurement& m);

// Outcome distribution of measuring a single-system state (or the A marginal).
ProbabilityDistribution outcome_distribution(const DensityMatrix& rho_a, std::span<const Matrix> povm);

}  // namespace eur
