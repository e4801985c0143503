#include "eur/channels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

namespace eur {

namespace {

void require_probability(const char* what, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError(fmt::format("{} = {} outside [0, 1]", what, p));
}

}  // namespace

KrausChannel KrausChannel::from_ops(std::vector<Matrix> ops, double tol) {
  if (ops.empty()) throw ValidationError("channel needs at least one Kraus operator");
  const std::size_t n = ops.front().cols();
  Matrix sum(n, n);
  for (const Matrix& k : ops) {
    if (k.rows() != ops.front().rows() || k.cols() != n) throw DimensionError("Kraus operators differ in shape");
    sum += k.adjoint() * k;
  }
  const double err = max_abs_diff(sum, Matrix::identity(n));
  if (err > tol) throw ValidationError(fmt::format("Kraus operators violate completeness by {:.3g}", err));
  return KrausChannel(std::move(ops));
}

DensityMatrix apply_kraus(const DensityMatrix& rho, const KrausChannel& ch) {
  if (ch.dim() != rho.side()) throw DimensionError("channel and state dimensions differ");
  const std::size_t out_side = ch.ops().front().rows();
  Matrix out(out_side, out_side);
  for (const Matrix& k : ch.ops()) out += k * rho.matrix() * k.adjoint();
  return DensityMatrix::trusted(std::move(out), rho.dims(), rho.tol());
}

std::vector<Matrix> qubit_kraus(NoiseKind kind, double p) {
  require_probability("p", p);
  const double s = std::sqrt(p), r = std::sqrt(1.0 - p);
  Matrix k0{{1.0, 0.0}, {0.0, r}};
  Matrix k1 = kind == NoiseKind::amplitude ? Matrix{{0.0, s}, {0.0, 0.0}} : Matrix{{0.0, 0.0}, {0.0, s}};
  return {std::move(k0), std::move(k1)};
}

KrausChannel local_channel(NoiseKind kind, double p_a, double p_b) {
  const auto ka = qubit_kraus(kind, p_a);
  const auto kb = qubit_kraus(kind, p_b);
  std::vector<Matrix> ops;
  for (const Matrix& u : ka)
    for (const Matrix& v : kb) ops.push_back(kron(u, v));
  return KrausChannel::from_ops(std::move(ops));
}

DensityMatrix ad_closed_form(const BellDiagonalParams& c, double p) {
  c.validate();
  require_probability("p", p);
  const double q = 1.0 - p;
  const double mid = ((1.0 - c.c3) + (1.0 + c.c3) * p) * q;
  Matrix m(4, 4);
  m(0, 0) = (1.0 + p) * (1.0 + p) + q * q * c.c3;
  m(1, 1) = mid;
  m(2, 2) = mid;
  m(3, 3) = q * q * (1.0 + c.c3);
  m(0, 3) = m(3, 0) = q * (c.c1 - c.c2);
  m(1, 2) = m(2, 1) = q * (c.c1 + c.c2);
  return DensityMatrix::trusted(0.25 * m, {2, 2});
}

DensityMatrix pd_closed_form(const BellDiagonalParams& c, double p) {
  c.validate();
  require_probability("p", p);
  const double q = 1.0 - p;
  Matrix m(4, 4);
  m(0, 0) = m(3, 3) = 1.0 + c.c3;
  m(1, 1) = m(2, 2) = 1.0 - c.c3;
  m(0, 3) = m(3, 0) = q * (c.c1 - c.c2);
  m(1, 2) = m(2, 1) = q * (c.c1 + c.c2);
  return DensityMatrix::trusted(0.25 * m, {2, 2});
}

double markov_damping(double rate, double t) {
  if (rate < 0.0 || t < 0.0) throw ValidationError("damping rate and time must be non-negative");
  return -std::expm1(-rate * t);
}

double jc_survival(double t, double gamma0, double tau) {
  if (!(gamma0 > 0.0 && tau > 0.0)) throw ValidationError("gamma0 and tau must be positive");
  if (!(gamma0 > tau / 2.0)) {
    throw ValidationError(fmt::format("weak coupling (gamma0 = {} <= tau/2 = {}) is not supported", gamma0, tau / 2.0));
  }
  if (t < 0.0) throw ValidationError("time must be non-negative");
  const double delta = std::sqrt(2.0 * gamma0 * tau - tau * tau);
  const double bracket = std::cos(delta * t / 2.0) + (tau / delta) * std::sin(delta * t / 2.0);
  return std::clamp(std::exp(-tau * t) * bracket * bracket, 0.0, 1.0);
}

DensityMatrix jc_state(double alpha, double p_t) {
  require_probability("p_t", p_t);
  const double decay = 1.0 - p_t;
  return apply_kraus(bell_like(alpha), local_channel(NoiseKind::amplitude, decay, decay));
}

Matrix random_field_unitary(double gt, double phase) {
  const double c = std::cos(gt), s = std::sin(gt);
  // (|1>, |0>) ordering [[c, e^{-iφ}s], [-e^{iφ}s, c]] rewritten for (|0>, |1>)
  return Matrix{{c, -std::polar(s, phase)}, {std::polar(s, -phase), c}};
}

DensityMatrix random_field_state(const DensityMatrix& rho0, double gt, double p1) {
  if (rho0.dims() != Dims{2, 2}) throw DimensionError("random-field model needs two qubits");
  require_probability("p1", p1);
  const double w[2] = {p1, 1.0 - p1};
  const Matrix u[2] = {random_field_unitary(gt, 0.0), random_field_unitary(gt, std::numbers::pi)};
  Matrix out(4, 4);
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k) {
      if (w[j] * w[k] == 0.0) continue;
      const Matrix uu = kron(u[j], u[k]);
      out += (w[j] * w[k]) * (uu * rho0.matrix() * uu.adjoint());
    }
  return DensityMatrix::trusted(std::move(out), rho0.dims(), rho0.tol());
}

DensityMatrix mazzola_state(const BellDiagonalParams& c, double gamma, double t) {
  if (gamma < 0.0 || t < 0.0) throw ValidationError("dephasing rate and time must be non-negative");
  const double decay = std::exp(-2.0 * gamma * t);
  return bell_diagonal({c.c1 * decay, c.c2 * decay, c.c3});
}

void NoiseParams::validate(bool jaynes_cummings) const {
  require_probability("p", p);
  require_probability("p1", p1);
  if (!(gamma0 > 0.0 && tau > 0.0 && g > 0.0 && gamma > 0.0)) throw ValidationError("rates must be positive");
  if (t < 0.0) throw ValidationError("time must be non-negative");
  if (jaynes_cummings && !(gamma0 > tau / 2.0)) {
    throw ValidationError("Jaynes-Cummings model requires strong coupling (gamma0 > tau/2)");
  }
}

}  // namespace eur
