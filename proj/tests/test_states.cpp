#include <doctest.h>

#include <cmath>

#include "eur/bounds.hpp"
#include "eur/correlations.hpp"
#include "eur/entropy.hpp"
#include "eur/states.hpp"
#include "support.hpp"

using namespace eur;
using testing::max_abs;
using testing::xlog2x;

namespace {

// Re-validation at a tight tolerance must not change anything.
void check_valid(const DensityMatrix& rho) {
  const DensityMatrix again = validate_density(rho.matrix(), rho.dims(), 1e-12);
  CHECK(max_abs(again.matrix(), rho.matrix()) < 1e-12);
}

Matrix embed_singlet_2x3() {
  Matrix m(6, 6);
  // |01> -> index 1, |10> -> index 3 with dB = 3
  m(1, 1) = m(3, 3) = 0.5;
  m(1, 3) = m(3, 1) = -0.5;
  return m;
}

}  // namespace

TEST_SUITE("states") {
  TEST_CASE("Werner states") {
    CHECK(max_abs(werner(2, 0).matrix(), 0.25 * Matrix::identity(4)) < 1e-15);
    CHECK(max_abs(werner(2, 1).matrix(), testing::singlet()) < 1e-15);
    const DensityMatrix w3 = werner(3, 1);
    CHECK(std::abs(von_neumann(w3) - std::log2(3.0)) < 1e-12);
    const auto spec = eigvals_hermitian(w3.matrix());
    for (std::size_t k = 0; k < 6; ++k) CHECK(std::abs(spec[k]) < 1e-12);
    for (std::size_t k = 6; k < 9; ++k) CHECK(std::abs(spec[k] - 1.0 / 3) < 1e-12);
    // f = 0: uniform on the 6-dimensional symmetric subspace
    CHECK(std::abs(von_neumann(werner(3, 0)) - std::log2(6.0)) < 1e-12);
    CHECK_THROWS_AS(werner(4, 0.5), DimensionError);
    CHECK_THROWS_AS(werner(2, 1.5), ValidationError);
  }

  TEST_CASE("isotropic states") {
    CHECK(max_abs(isotropic(2, 0.25).matrix(), 0.25 * Matrix::identity(4)) < 1e-15);
    const DensityMatrix pure = isotropic(2, 1.0);
    CHECK(std::abs(von_neumann(pure)) < 1e-10);
    CHECK(std::abs(pure.matrix()(0, 3) - 0.5) < 1e-15);
    for (double f : {0.1, 0.4, 0.7, 0.95}) {
      const double s_ab = -xlog2x(1 - f) + (1 - f) * std::log2(3.0) - xlog2x(f);
      CHECK(std::abs(von_neumann(isotropic(2, f)) - s_ab) < 1e-12);
      // with a c = 1/2 pair the first bound reduces to S(AB)
      const BoundReport r = evaluate_bounds(isotropic(2, f), spin_observable(1, 2), spin_observable(3, 2));
      CHECK(std::abs(r.U_b1 - s_ab) < 1e-12);
    }
    // d = 2 isotropic is Bell-diagonal with c = g(1, -1, 1), g = (4f - 1)/3
    for (double f : {0.0, 0.3, 0.6, 1.0}) {
      const double g = (4 * f - 1) / 3;
      CHECK(max_abs(isotropic(2, f).matrix(), bell_diagonal({g, -g, g}).matrix()) < 1e-12);
    }
    CHECK(std::abs(von_neumann(isotropic(3, 1.0))) < 1e-10);
    CHECK(max_abs(isotropic(3, 1.0 / 9).matrix(), Matrix::identity(9) * (1.0 / 9)) < 1e-15);
  }

  TEST_CASE("Bell-diagonal states") {
    CHECK(max_abs(bell_diagonal({0, 0, 0}).matrix(), 0.25 * Matrix::identity(4)) < 1e-15);
    CHECK(max_abs(bell_diagonal({-1, -1, -1}).matrix(), testing::singlet()) < 1e-15);
    const auto spec = eigvals_hermitian(bell_diagonal({-0.8, -0.8, -0.8}).matrix());
    CHECK(std::abs(spec[0] - 0.05) < 1e-12);
    CHECK(std::abs(spec[2] - 0.05) < 1e-12);
    CHECK(std::abs(spec[3] - 0.85) < 1e-12);
    CHECK(max_abs(bell_diagonal({-0.8, -0.8, -0.8}).matrix(), werner(2, 0.8).matrix()) < 1e-12);
    CHECK_THROWS_AS(bell_diagonal({1, 1, 1}), ValidationError);
    CHECK_THROWS_AS(bell_diagonal({1.2, 0, 0}), ValidationError);
  }

  TEST_CASE("spectrum order follows the Bell basis") {
    const BellDiagonalParams c{0.3, -0.5, 0.1};
    const auto w = c.spectrum();
    const BellState order[4] = {BellState::phi_plus, BellState::phi_minus, BellState::psi_plus, BellState::psi_minus};
    const Matrix rho = bell_diagonal(c).matrix();
    for (int k = 0; k < 4; ++k) {
      const auto v = bell_vector(order[k]);
      Matrix col(4, 1, std::vector<cplx>(v.begin(), v.end()));
      CHECK(std::abs((col.adjoint() * rho * col)(0, 0).real() - w[static_cast<std::size_t>(k)]) < 1e-14);
    }
  }

  TEST_CASE("qubit-qudit families") {
    const QubitQuditParams s{0.0, 0.0, 1.0, QuditKind::qutrit};
    CHECK(max_abs(qubit_qudit(s).matrix(), embed_singlet_2x3()) < 1e-15);

    const auto q3 = QubitQuditParams::from_alpha_gamma(QuditKind::qutrit, 0.25, 0.1);
    CHECK(std::abs(q3.beta - 0.4 / 3) < 1e-15);
    const auto q4 = QubitQuditParams::from_alpha_gamma(QuditKind::ququart, 0.1, 0.3);
    CHECK(std::abs(q4.beta - 0.1) < 1e-15);
    CHECK(qubit_qudit(q4).dims() == Dims{2, 4});
    CHECK_THROWS_AS(QubitQuditParams::from_alpha_gamma(QuditKind::qutrit, 0.25, 0.6), ValidationError);

    // A marginal is maximally mixed across both sweeps
    for (double g = 0.0; g <= 0.5; g += 0.05) {
      const DensityMatrix r3 = qubit_qudit(QubitQuditParams::from_alpha_gamma(QuditKind::qutrit, 0.25, g));
      CHECK(max_abs(partial_trace(r3, Subsystem::A).matrix(), 0.5 * Matrix::identity(2)) < 1e-12);
      check_valid(r3);
    }
    for (double g = 0.0; g <= 0.6; g += 0.05) {
      const DensityMatrix r4 = qubit_qudit(QubitQuditParams::from_alpha_gamma(QuditKind::ququart, 0.1, g));
      CHECK(max_abs(partial_trace(r4, Subsystem::A).matrix(), 0.5 * Matrix::identity(2)) < 1e-12);
      check_valid(r4);
    }
  }

  TEST_CASE("Bell-like pure states") {
    const double r = 1.0 / std::sqrt(2.0);
    const auto phi = bell_vector(BellState::phi_plus);
    CHECK(max_abs(bell_like(r).matrix(), Matrix::projector(phi)) < 1e-15);
    CHECK(max_abs(bell_like(1.0).matrix(), Matrix::diagonal({1, 0, 0, 0})) < 1e-15);
    const double a = 1.0 / std::sqrt(10.0);
    CHECK(std::abs(concurrence(bell_like(a)) - 0.6) < 1e-9);
    CHECK(std::abs(2 * a * std::sqrt(1 - a * a) - 0.6) < 1e-15);
  }

  TEST_CASE("Bell mixtures") {
    const DensityMatrix mix = bell_mixture({0.9, 0.1, 0, 0});
    const auto psp = bell_vector(BellState::psi_plus), psm = bell_vector(BellState::psi_minus);
    CHECK(max_abs(mix.matrix(), 0.9 * Matrix::projector(psp) + 0.1 * Matrix::projector(psm)) < 1e-15);
    const DensityMatrix pure = bell_mixture({1, 0, 0, 0});
    CHECK(std::abs(concurrence(pure) - 1.0) < 1e-9);
    CHECK(max_abs(bell_mixture({0.25, 0.25, 0.25, 0.25}).matrix(), 0.25 * Matrix::identity(4)) < 1e-15);
    CHECK_THROWS_AS(bell_mixture({0.5, 0.6, 0, 0}), ValidationError);
    CHECK_THROWS_AS(bell_mixture({1.1, -0.1, 0, 0}), ValidationError);
  }

  TEST_CASE("Bell coordinates agree with Pauli expectations and round-trip") {
    std::mt19937_64 rng(51);
    for (int t = 0; t < 100; ++t) {
      const auto w = testing::random_simplex(rng);
      const BellDiagonalParams c = bell_coordinates(w);
      const BellDiagonalParams e = pauli_correlations(bell_mixture(w));
      CHECK(std::abs(c.c1 - e.c1) < 1e-12);
      CHECK(std::abs(c.c2 - e.c2) < 1e-12);
      CHECK(std::abs(c.c3 - e.c3) < 1e-12);
      CHECK(max_abs(bell_diagonal(c).matrix(), bell_mixture(w).matrix()) < 1e-12);
      // spectrum() is the same weights in (φ+, φ-, ψ+, ψ-) order
      const auto s = c.spectrum();
      CHECK(std::abs(s[0] - w[2]) < 1e-12);
      CHECK(std::abs(s[1] - w[3]) < 1e-12);
      CHECK(std::abs(s[2] - w[0]) < 1e-12);
      CHECK(std::abs(s[3] - w[1]) < 1e-12);
    }
  }

  TEST_CASE("one-sided initial state weights") {
    const auto w = bdr_bell_weights(0.7, 0.3, 0.7);
    CHECK(std::abs(w[0] + w[1] + w[2] + w[3] - 1.0) < 1e-15);
    CHECK(std::abs(w[0] - 0.49) < 1e-15);  // bR on |1+>
    CHECK(std::abs(w[1] - 0.09) < 1e-15);  // d(1-R) on |1->
    CHECK(std::abs(w[2] - 0.21) < 1e-15);  // dR on |2+>
    CHECK(std::abs(w[3] - 0.21) < 1e-15);  // b(1-R) on |2->
    CHECK_THROWS_AS(bdr_bell_weights(0.7, 0.4, 0.5), ValidationError);
  }

  TEST_CASE("every constructor output is a valid state at 1e-12") {
    for (double f = 0.0; f <= 1.0; f += 0.125) {
      check_valid(werner(2, f));
      check_valid(werner(3, f));
      check_valid(isotropic(2, f));
      check_valid(isotropic(3, f));
      check_valid(bell_like(f));
    }
    check_valid(bell_diagonal({1, -0.6, 0.6}));
    check_valid(bell_mixture({0.9, 0.1, 0, 0}));
  }
}
