#include "eur/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace eur {

Observable Observable::from_matrix(const Matrix& m, double tol) {
  if (!m.is_square()) throw DimensionError("observable must be square");
  if (!is_hermitian(m, tol)) throw ValidationError("observable is not Hermitian");
  EigenSystem es = eig_hermitian(m, tol);
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < es.values.size(); ++k) gap = std::min(gap, es.values[k] - es.values[k - 1]);
  if (gap <= kDegeneracyGap) {
    throw DegenerateObservable(fmt::format("observable is degenerate (eigenvalue gap {:.3g})", gap));
  }
  return Observable(m, std::move(es), gap);
}

ProjectiveMeasurement observable_measurement(const Observable& o) {
  return ProjectiveMeasurement::from_basis(o.eigensystem().vectors);
}

double complementarity(const Observable& x, const Observable& z) {
  if (x.dim() != z.dim()) throw DimensionError("observables act on different dimensions");
  const Matrix overlaps = x.eigensystem().vectors.adjoint() * z.eigensystem().vectors;
  double c = 0.0;
  for (const cplx& o : overlaps.entries()) c = std::max(c, std::norm(o));
  return c;
}

double povm_max_trace(std::span<const Matrix> povm) {
  double c = 0.0;
  for (const Matrix& e : povm) c = std::max(c, e.trace().real());
  return c;
}

void validate_povm(std::span<const Matrix> povm, std::size_t dim) {
  if (povm.empty()) throw ValidationError("empty POVM");
  Matrix sum(dim, dim);
  for (const Matrix& e : povm) {
    if (!e.is_square() || e.rows() != dim) throw DimensionError("POVM element has the wrong shape");
    if (!is_hermitian(e, 1e-9)) throw ValidationError("POVM element is not Hermitian");
    if (eigvals_hermitian(e).front() < -1e-9) throw ValidationError("POVM element is not positive");
    sum += e;
  }
  if (max_abs_diff(sum, Matrix::identity(dim)) > 1e-9) throw ValidationError("POVM elements do not sum to identity");
}

double single_system_bound(const DensityMatrix& rho_a, std::span<const Matrix> x, std::span<const Matrix> z) {
  validate_povm(x, rho_a.side());
  validate_povm(z, rho_a.side());
  return -std::log2(povm_max_trace(x)) - std::log2(povm_max_trace(z)) + 2.0 * von_neumann(rho_a);
}

double uncertainty_sum(const DensityMatrix& rho, const Observable& x, const Observable& z) {
  return measured_conditional_entropy(rho, observable_measurement(x)) +
         measured_conditional_entropy(rho, observable_measurement(z));
}

BoundReport evaluate_bounds(const DensityMatrix& rho, const Observable& x, const Observable& z,
                            const OptimizerConfig& cfg) {
  if (x.dim() != rho.dims().a || z.dim() != rho.dims().a) {
    throw DimensionError("observables must act on subsystem A");
  }
  BoundReport r;
  r.U = uncertainty_sum(rho, x, z);
  r.c = complementarity(x, z);
  r.S_AB = von_neumann(rho);
  r.S_B = von_neumann(partial_trace(rho.matrix(), rho.dims(), Subsystem::B));
  r.S_cond = r.S_AB - r.S_B;

  const CorrelationSummary corr = correlations(rho, cfg);
  r.I = corr.mutual;
  r.J_A = corr.classical;
  r.D_A = corr.discord;

  r.U_b1 = -std::log2(r.c) + r.S_cond;
  r.U_b2 = r.U_b1 + std::max(0.0, r.D_A - r.J_A);
  r.U_b3 = 2.0 * r.S_cond + 2.0 * r.D_A;
  if (rho.dims() == Dims{2, 2}) r.concurrence = concurrence(rho);
  return r;
}

std::string bound_violations(const BoundReport& r, const BoundTolerances& tol) {
  std::string out;
  auto check = [&](const char* name, double bound, double t) {
    if (r.U - bound < -t) out += fmt::format("{}U={:.12g} < {}={:.12g}", out.empty() ? "" : "; ", r.U, name, bound);
  };
  check("Ub1", r.U_b1, tol.berta);
  check("Ub2", r.U_b2, tol.pati);
  check("Ub3", r.U_b3, tol.universal);
  return out;
}

Observable spin_observable(int k, std::size_t dim) {
  if (dim == 2) return Observable::from_matrix(pauli(k));
  if (dim == 3) {
    const Matrix p = pauli(k);
    Matrix m(3, 3);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) m(i, j) = p(i, j);
    return Observable::from_matrix(m);
  }
  throw DimensionError(fmt::format("no built-in spin observables for dimension {}", dim));
}

}  // namespace eur
