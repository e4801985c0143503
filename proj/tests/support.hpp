#pragma once

// Shared helpers for the tests. Everything here is written without the
// library's own numerics where it is used as an oracle.

#include <cmath>
#include <array>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "eur/qmat.hpp"

namespace testing {

using eur::cplx;
using eur::Matrix;

inline double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

// Binary entropy.
inline double h2(double p) { return -xlog2x(p) - xlog2x(1.0 - p); }

inline double entropy_of(std::initializer_list<double> spectrum) {
  double s = 0.0;
  for (double v : spectrum) s -= xlog2x(v);
  return s;
}

inline Matrix gaussian(std::size_t r, std::size_t c, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix m(r, c);
  for (cplx& z : m.entries()) {
    const double re = g(rng);
    z = cplx(re, g(rng));
  }
  return m;
}

inline Matrix random_hermitian(std::size_t d, std::mt19937_64& rng) {
  const Matrix a = gaussian(d, d, rng);
  return 0.5 * (a + a.adjoint());
}

// Haar unitary by Gram-Schmidt on a Gaussian matrix.
inline Matrix random_unitary(std::size_t d, std::mt19937_64& rng) {
  Matrix a = gaussian(d, d, rng);
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t j = 0; j < k; ++j) {
      cplx dot = 0.0;
      for (std::size_t i = 0; i < d; ++i) dot += std::conj(a(i, j)) * a(i, k);
      for (std::size_t i = 0; i < d; ++i) a(i, k) -= dot * a(i, j);
    }
    double n = 0.0;
    for (std::size_t i = 0; i < d; ++i) n += std::norm(a(i, k));
    n = std::sqrt(n);
    for (std::size_t i = 0; i < d; ++i) a(i, k) /= n;
  }
  return a;
}

// G G† / tr, G Gaussian: Hilbert-Schmidt random state.
inline Matrix random_state_matrix(std::size_t d, std::mt19937_64& rng) {
  const Matrix g = gaussian(d, d, rng);
  Matrix m = g * g.adjoint();
  m *= 1.0 / m.trace().real();
  return m;
}

inline eur::DensityMatrix random_state(eur::Dims dims, std::mt19937_64& rng) {
  return eur::validate_density(random_state_matrix(dims.total(), rng), dims);
}

// Random valid X state in the computational basis.
inline Matrix random_x_state(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double d[4];
  double sum = 0.0;
  for (double& v : d) sum += (v = u(rng) + 1e-3);
  for (double& v : d) v /= sum;
  const cplx z = std::polar(u(rng) * std::sqrt(d[0] * d[3]), 2.0 * std::numbers::pi * u(rng));
  const cplx w = std::polar(u(rng) * std::sqrt(d[1] * d[2]), 2.0 * std::numbers::pi * u(rng));
  Matrix m(4, 4);
  for (int i = 0; i < 4; ++i) m(i, i) = d[i];
  m(0, 3) = z;
  m(3, 0) = std::conj(z);
  m(1, 2) = w;
  m(2, 1) = std::conj(w);
  return m;
}

// Uniform random point of the Bell-diagonal tetrahedron via Dirichlet weights.
inline std::array<double, 4> random_simplex(std::mt19937_64& rng) {
  std::exponential_distribution<double> e;
  std::array<double, 4> w{};
  double s = 0.0;
  for (double& v : w) s += (v = e(rng));
  for (double& v : w) v /= s;
  return w;
}

// The singlet written out by hand.
inline Matrix singlet() {
  Matrix m(4, 4);
  m(1, 1) = m(2, 2) = 0.5;
  m(1, 2) = m(2, 1) = -0.5;
  return m;
}

inline Matrix sx() { return Matrix{{0.0, 1.0}, {1.0, 0.0}}; }
inline Matrix sy() { return Matrix{{0.0, cplx(0, -1)}, {cplx(0, 1), 0.0}}; }
inline Matrix sz() { return Matrix{{1.0, 0.0}, {0.0, -1.0}}; }

inline double max_abs(const Matrix& a, const Matrix& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
  return m;
}

}  // namespace testing
