#pragma once

#include <array>

#include "eur/qmat.hpp"

namespace eur {

// Bell basis, fixed once:
//   |φ±> = (|00> ± |11>)/√2,  |ψ±> = (|01> ± |10>)/√2
// and the alternative labels |1±> = |ψ±>, |2±> = |φ±>.
enum class BellState { phi_plus, phi_minus, psi_plus, psi_minus };
std::array<cplx, 4> bell_vector(BellState s);

// ¼(1 + Σ c_i σ_i⊗σ_i); the triple must give a non-negative spectrum.
struct BellDiagonalParams {
  double c1 = 0.0, c2 = 0.0, c3 = 0.0;

  // Weights on (φ+, φ-, ψ+, ψ-).
  std::array<double, 4> spectrum() const;
  void validate() const;
};

enum class QuditKind { qutrit, ququart };

// α on the |a,2> (and |a,3>) levels, β on φ+, φ-, ψ+, γ on ψ-.
struct QubitQuditParams {
  double alpha = 0.0, beta = 0.0, gamma = 0.0;
  QuditKind kind = QuditKind::qutrit;

  // Solves the normalization for β.
  static QubitQuditParams from_alpha_gamma(QuditKind kind, double alpha, double gamma);
  void validate() const;
};

// d = 2: (1-f)/4 1 + f |ψ-><ψ-|.  d = 3: (1-f)/6 Π_sym + f/3 Π_anti.
DensityMatrix werner(int d, double f);

// f φ_d + (1-f)/(d²-1) (1 - φ_d), φ_d the projector on Σ_i |ii>/√d.
DensityMatrix isotropic(int d, double f);

DensityMatrix bell_diagonal(const BellDiagonalParams& p);

// Dims (2, 3) or (2, 4), qubit first.
DensityMatrix qubit_qudit(const QubitQuditParams& p);

// Projector on α|00> + √(1-α²)|11>.
DensityMatrix bell_like(double alpha);

// Weights on (|1+>, |1->, |2+>, |2->), i.e. (ψ+, ψ-, φ+, φ-).
DensityMatrix bell_mixture(const std::array<double, 4>& weights);

// Correlation triple of a Bell mixture with the given weights.
BellDiagonalParams bell_coordinates(const std::array<double, 4>& weights);

// (Tr ρ σ1⊗σ1, Tr ρ σ2⊗σ2, Tr ρ σ3⊗σ3) of a two-qubit state.
BellDiagonalParams pauli_correlations(const DensityMatrix& rho);

// Bell weights of dR|2+> + b(1-R)|2-> + bR|1+> + d(1-R)|1-> with b + d = 1.
std::array<double, 4> bdr_bell_weights(double b, double d, double r);

}  // namespace eur
