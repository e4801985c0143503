#include "eur/entropy.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace eur {

ProbabilityDistribution ProbabilityDistribution::validated(std::vector<double> probs, double tol) {
  if (probs.empty()) throw ValidationError("empty probability distribution");
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= -tol && p <= 1.0 + tol)) throw ValidationError(fmt::format("probability {} outside [0, 1]", p));
    sum += p;
  }
  if (std::abs(sum - 1.0) > tol) throw ValidationError(fmt::format("probabilities sum to {}", sum));
  return ProbabilityDistribution{std::move(probs)};
}

double spectrum_entropy(std::span<const double> spectrum) {
  double h = 0.0;
  for (double x : spectrum) {
    if (x > 1e-12) h -= x * std::log2(x);
  }
  return h;
}

double shannon(const ProbabilityDistribution& p) { return spectrum_entropy(p.probs); }

double shannon(std::span<const double> probs, double tol) {
  return shannon(ProbabilityDistribution::validated(std::vector<double>(probs.begin(), probs.end()), tol));
}

double von_neumann(const Matrix& m) {
  const auto vals = eigvals_hermitian(m);
  return spectrum_entropy(vals);
}

double von_neumann(const DensityMatrix& rho) { return von_neumann(rho.matrix()); }

double conditional_entropy(const DensityMatrix& rho) {
  return von_neumann(rho) - von_neumann(partial_trace(rho.matrix(), rho.dims(), Subsystem::B));
}

double mutual_information(const DensityMatrix& rho) {
  const Matrix ra = partial_trace(rho.matrix(), rho.dims(), Subsystem::A);
  const Matrix rb = partial_trace(rho.matrix(), rho.dims(), Subsystem::B);
  return von_neumann(ra) + von_neumann(rb) - von_neumann(rho);
}

ProjectiveMeasurement ProjectiveMeasurement::from_projectors(std::vector<Matrix> projectors, double tol) {
  if (projectors.empty()) throw ValidationError("measurement needs at least one projector");
  const std::size_t d = projectors.front().rows();
  Matrix sum(d, d);
  for (std::size_t i = 0; i < projectors.size(); ++i) {
    const Matrix& p = projectors[i];
    if (!p.is_square() || p.rows() != d) throw DimensionError("projectors differ in shape");
    if (!is_hermitian(p, tol)) throw ValidationError("projector is not Hermitian");
    for (std::size_t j = i; j < projectors.size(); ++j) {
      const Matrix prod = p * projectors[j];
      const Matrix expect = i == j ? p : Matrix(d, d);
      if (max_abs_diff(prod, expect) > tol) {
        throw ValidationError(i == j ? "element is not idempotent" : "projectors are not mutually orthogonal");
      }
    }
    sum += p;
  }
  if (max_abs_diff(sum, Matrix::identity(d)) > tol) throw ValidationError("projectors do not sum to identity");
  return ProjectiveMeasurement(std::move(projectors));
}

ProjectiveMeasurement ProjectiveMeasurement::from_basis(const Matrix& unitary, double tol) {
  std::vector<Matrix> ps;
  ps.reserve(unitary.cols());
  for (std::size_t k = 0; k < unitary.cols(); ++k) ps.push_back(Matrix::projector(unitary.column(k)));
  return from_projectors(std::move(ps), tol);
}

namespace {

void check_acts_on_a(const DensityMatrix& rho, const ProjectiveMeasurement& m) {
  if (m.dim() != rho.dims().a) {
    throw DimensionError(fmt::format("measurement acts on dimension {}, subsystem A has {}", m.dim(), rho.dims().a));
  }
}

// (Π⊗1) ρ (Π⊗1) without forming the Kronecker product.
Matrix sandwich_a(const Matrix& rho, Dims dims, const Matrix& proj) {
  const std::size_t da = dims.a, db = dims.b, n = dims.total();
  Matrix left(n, n);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j) {
      const cplx pij = proj(i, j);
      if (pij == cplx(0.0, 0.0)) continue;
      for (std::size_t k = 0; k < db; ++k)
        for (std::size_t c = 0; c < n; ++c) left(i * db + k, c) += pij * rho(j * db + k, c);
    }
  Matrix out(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t i = 0; i < da; ++i)
      for (std::size_t j = 0; j < da; ++j) {
        const cplx pji = proj(j, i);
        if (pji == cplx(0.0, 0.0)) continue;
        for (std::size_t k = 0; k < db; ++k) out(r, i * db + k) += left(r, j * db + k) * pji;
      }
  return out;
}

}  // namespace

MeasurementOutcome measure_on_A(const DensityMatrix& rho, const ProjectiveMeasurement& m) {
  check_acts_on_a(rho, m);
  const Dims dims = rho.dims();
  std::vector<double> probs;
  std::vector<DensityMatrix> conds;
  Matrix post(dims.total(), dims.total());
  for (const Matrix& proj : m.projectors()) {
    Matrix branch = sandwich_a(rho.matrix(), dims, proj);
    post += branch;
    Matrix rb = partial_trace(branch, dims, Subsystem::B);
    const double p = rb.trace().real();
    probs.push_back(p);
    if (p < kNegligibleOutcome) {
      conds.push_back(DensityMatrix::trusted(Matrix::identity(dims.b), Dims{dims.b, 1}, rho.tol()));
    } else {
      conds.push_back(DensityMatrix::trusted(std::move(rb), Dims{dims.b, 1}, rho.tol()));
    }
  }
  return MeasurementOutcome{ProbabilityDistribution::validated(std::move(probs), std::max(rho.tol(), 1e-9)), std::move(conds),
                            DensityMatrix::trusted(std::move(post), dims, rho.tol())};
}

double measured_conditional_entropy(const DensityMatrix& rho, const ProjectiveMeasurement& m) {
  check_acts_on_a(rho, m);
  Matrix post(rho.side(), rho.side());
  for (const Matrix& proj : m.projectors()) post += sandwich_a(rho.matrix(), rho.dims(), proj);
  return von_neumann(post) - von_neumann(partial_trace(rho.matrix(), rho.dims(), Subsystem::B));
}

double measured_conditional_entropy_decomposed(const DensityMatrix& rho, const ProjectiveMeasurement& m) {
  const MeasurementOutcome out = measure_on_A(rho, m);
  double avg = 0.0;
  for (std::size_t i = 0; i < out.conditional_states.size(); ++i) {
    avg += out.probs.probs[i] * von_neumann(out.conditional_states[i]);
  }
  return avg + shannon(out.probs) - von_neumann(partial_trace(rho.matrix(), rho.dims(), Subsystem::B));
}

ProbabilityDistribution outcome_distribution(const DensityMatrix& rho_a, std::span<const Matrix> povm) {
  std::vector<double> probs;
  probs.reserve(povm.size());
  for (const Matrix& e : povm) {
    if (e.rows() != rho_a.side()) throw DimensionError("POVM element does not match state dimension");
    probs.push_back((e * rho_a.matrix()).trace().real());
  }
  return ProbabilityDistribution::validated(std::move(probs), std::max(rho_a.tol(), 1e-9));
}

}  // namespace eur
