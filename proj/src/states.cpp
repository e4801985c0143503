#include "eur/states.hpp"

#include <cmath>

#include <fmt/format.h>

namespace eur {

namespace {

void require_unit_interval(const char* what, double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw ValidationError(fmt::format("{} = {} outside [0, 1]", what, x));
}

constexpr double kStateTol = 1e-12;

}  // namespace

std::array<cplx, 4> bell_vector(BellState s) {
  const double r = 1.0 / std::sqrt(2.0);
  switch (s) {
    case BellState::phi_plus: return {r, 0.0, 0.0, r};
    case BellState::phi_minus: return {r, 0.0, 0.0, -r};
    case BellState::psi_plus: return {0.0, r, r, 0.0};
    case BellState::psi_minus: return {0.0, r, -r, 0.0};
  }
  return {};
}

std::array<double, 4> BellDiagonalParams::spectrum() const {
  return {(1 + c1 - c2 + c3) / 4, (1 - c1 + c2 + c3) / 4, (1 + c1 + c2 - c3) / 4, (1 - c1 - c2 - c3) / 4};
}

void BellDiagonalParams::validate() const {
  for (double c : {c1, c2, c3}) {
    if (!(std::abs(c) <= 1.0 + kStateTol)) throw ValidationError(fmt::format("correlation coefficient {} outside [-1, 1]", c));
  }
  for (double l : spectrum()) {
    if (l < -kStateTol) throw ValidationError(fmt::format("({}, {}, {}) gives a negative Bell weight {}", c1, c2, c3, l));
  }
}

QubitQuditParams QubitQuditParams::from_alpha_gamma(QuditKind kind, double alpha, double gamma) {
  const double na = kind == QuditKind::qutrit ? 2.0 : 4.0;
  QubitQuditParams p{alpha, (1.0 - na * alpha - gamma) / 3.0, gamma, kind};
  p.validate();
  return p;
}

void QubitQuditParams::validate() const {
  if (alpha < 0.0 || beta < -kStateTol || gamma < 0.0) {
    throw ValidationError(fmt::format("qubit-qudit weights must be non-negative (alpha {}, beta {}, gamma {})", alpha, beta, gamma));
  }
  const double na = kind == QuditKind::qutrit ? 2.0 : 4.0;
  const double norm = na * alpha + 3.0 * beta + gamma;
  if (std::abs(norm - 1.0) > kStateTol) throw ValidationError(fmt::format("qubit-qudit weights normalize to {}", norm));
}

DensityMatrix werner(int d, double f) {
  require_unit_interval("f", f);
  if (d == 2) {
    Matrix m = (1.0 - f) / 4.0 * Matrix::identity(4) + f * Matrix::projector(bell_vector(BellState::psi_minus));
    return validate_density(m, {2, 2}, kStateTol);
  }
  if (d == 3) {
    Matrix swap(9, 9);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) swap(i * 3 + j, j * 3 + i) = 1.0;
    const Matrix id = Matrix::identity(9);
    const Matrix sym = 0.5 * (id + swap);
    const Matrix anti = 0.5 * (id - swap);
    return validate_density((1.0 - f) / 6.0 * sym + f / 3.0 * anti, {3, 3}, kStateTol);
  }
  throw DimensionError(fmt::format("Werner states are provided for d = 2 or 3, got {}", d));
}

DensityMatrix isotropic(int d, double f) {
  require_unit_interval("f", f);
  if (d != 2 && d != 3) throw DimensionError(fmt::format("isotropic states are provided for d = 2 or 3, got {}", d));
  const std::size_t n = static_cast<std::size_t>(d);
  std::vector<cplx> v(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0 / std::sqrt(static_cast<double>(d));
  const Matrix phi = Matrix::projector(v);
  const Matrix rest = Matrix::identity(n * n) - phi;
  return validate_density(f * phi + (1.0 - f) / (d * d - 1.0) * rest, {n, n}, kStateTol);
}

DensityMatrix bell_diagonal(const BellDiagonalParams& p) {
  p.validate();
  Matrix m = Matrix::identity(4);
  const double c[3] = {p.c1, p.c2, p.c3};
  for (int k = 1; k <= 3; ++k) m += c[k - 1] * kron(pauli(k), pauli(k));
  m *= 0.25;
  // clip the roundoff-level negative weights allowed by validate()
  return validate_density(m, {2, 2}, 1e-11);
}

DensityMatrix qubit_qudit(const QubitQuditParams& p) {
  p.validate();
  const std::size_t db = p.kind == QuditKind::qutrit ? 3 : 4;
  const std::size_t n = 2 * db;
  auto ket = [&](std::size_t a, std::size_t b) {
    std::vector<cplx> v(n, 0.0);
    v[a * db + b] = 1.0;
    return v;
  };
  auto bell = [&](BellState s) {
    const auto b2 = bell_vector(s);
    std::vector<cplx> v(n, 0.0);
    for (std::size_t a = 0; a < 2; ++a)
      for (std::size_t b = 0; b < 2; ++b) v[a * db + b] = b2[a * 2 + b];
    return v;
  };
  Matrix m(n, n);
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 2; b < db; ++b) m += p.alpha * Matrix::projector(ket(a, b));
  for (BellState s : {BellState::phi_plus, BellState::phi_minus, BellState::psi_plus}) {
    m += std::max(p.beta, 0.0) * Matrix::projector(bell(s));
  }
  m += p.gamma * Matrix::projector(bell(BellState::psi_minus));
  return validate_density(m * (1.0 / m.trace().real()), {2, db}, kStateTol);
}

DensityMatrix bell_like(double alpha) {
  require_unit_interval("alpha", alpha);
  const std::array<cplx, 4> v{alpha, 0.0, 0.0, std::sqrt(std::max(0.0, 1.0 - alpha * alpha))};
  return validate_density(Matrix::projector(v), {2, 2}, kStateTol);
}

DensityMatrix bell_mixture(const std::array<double, 4>& w) {
  double sum = 0.0;
  for (double x : w) {
    if (x < 0.0) throw ValidationError(fmt::format("Bell weight {} is negative", x));
    sum += x;
  }
  if (std::abs(sum - 1.0) > kStateTol) throw ValidationError(fmt::format("Bell weights sum to {}", sum));
  const BellState order[4] = {BellState::psi_plus, BellState::psi_minus, BellState::phi_plus, BellState::phi_minus};
  Matrix m(4, 4);
  for (int k = 0; k < 4; ++k) m += w[k] * Matrix::projector(bell_vector(order[k]));
  return validate_density(m, {2, 2}, kStateTol);
}

BellDiagonalParams bell_coordinates(const std::array<double, 4>& w) {
  const double psp = w[0], psm = w[1], php = w[2], phm = w[3];
  return {php - phm + psp - psm, -php + phm + psp - psm, php + phm - psp - psm};
}

BellDiagonalParams pauli_correlations(const DensityMatrix& rho) {
  if (rho.dims() != Dims{2, 2}) throw DimensionError("Pauli correlations need two qubits");
  double c[3];
  for (int k = 1; k <= 3; ++k) c[k - 1] = (kron(pauli(k), pauli(k)) * rho.matrix()).trace().real();
  return {c[0], c[1], c[2]};
}

std::array<double, 4> bdr_bell_weights(double b, double d, double r) {
  require_unit_interval("b", b);
  require_unit_interval("d", d);
  require_unit_interval("R", r);
  if (std::abs(b + d - 1.0) > kStateTol) throw ValidationError(fmt::format("b + d = {} must equal 1", b + d));
  return {b * r, d * (1.0 - r), d * r, b * (1.0 - r)};
}

}  // namespace eur
