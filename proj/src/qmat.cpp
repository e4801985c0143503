#include "eur/qmat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

namespace eur {

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, cplx(0.0, 0.0)) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw DimensionError(fmt::format("matrix {}x{} given {} entries", rows_, cols_, entries_.size()));
  }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<cplx>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  entries_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("ragged matrix initializer");
    entries_.insert(entries_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> values) {
  Matrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

Matrix Matrix::diagonal(std::initializer_list<double> values) {
  return diagonal(std::span<const double>(values.begin(), values.size()));
}

Matrix Matrix::projector(std::span<const cplx> v) {
  const std::size_t n = v.size();
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = v[i] * std::conj(v[j]);
  return m;
}

std::vector<cplx> Matrix::column(std::size_t c) const {
  std::vector<cplx> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

Matrix Matrix::adjoint() const {
  Matrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

Matrix Matrix::conj() const {
  Matrix out = *this;
  for (auto& z : out.entries_) z = std::conj(z);
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

cplx Matrix::trace() const {
  cplx t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double Matrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : entries_) s += std::norm(z);
  return std::sqrt(s);
}

Matrix& Matrix::operator+=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw DimensionError("matrix sum shape mismatch");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw DimensionError("matrix difference shape mismatch");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
  return *this;
}

Matrix& Matrix::operator*=(cplx s) {
  for (auto& z : entries_) z *= s;
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) {
    throw DimensionError(fmt::format("matrix product {}x{} * {}x{}", a.rows_, a.cols_, b.rows_, b.cols_));
  }
  Matrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx(0.0, 0.0)) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  const std::size_t rb = b.rows(), cb = b.cols();
  Matrix out(a.rows() * rb, a.cols() * cb);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      for (std::size_t k = 0; k < rb; ++k)
        for (std::size_t l = 0; l < cb; ++l) out(i * rb + k, j * cb + l) = aij * b(k, l);
    }
  return out;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("max_abs_diff shape mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
  return m;
}

bool is_hermitian(const Matrix& m, double tol) {
  if (!m.is_square()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j)
      if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) return false;
  return true;
}

Matrix pauli(int k) {
  using namespace std::complex_literals;
  switch (k) {
    case 0: return Matrix::identity(2);
    case 1: return Matrix{{0.0, 1.0}, {1.0, 0.0}};
    case 2: return Matrix{{0.0, -1.0i}, {1.0i, 0.0}};
    case 3: return Matrix{{1.0, 0.0}, {0.0, -1.0}};
    default: throw DimensionError(fmt::format("no Pauli matrix with index {}", k));
  }
}

namespace {

constexpr int kMaxSweeps = 100;

double off_diagonal_norm2(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j) s += std::norm(a(i, j));
  return 2.0 * s;
}

// Runs cyclic Jacobi on a (Hermitian) working copy; accumulates rotations
// into v when non-null. On return the diagonal of a holds the eigenvalues.
void jacobi(Matrix& a, Matrix* v) {
  const std::size_t n = a.rows();
  const double scale2 = std::max(a.frobenius_norm() * a.frobenius_norm(), 1e-300);
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm2(a) <= 1e-30 * scale2) return;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double r = std::abs(apq);
        if (r < 1e-300) continue;
        const cplx phase = apq / r;  // e^{iφ}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * r);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const cplx ph_conj = std::conj(phase);
        // A <- A G with G = [[c, s], [-s e^{-iφ}, c e^{-iφ}]] on columns (p, q)
        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * ph_conj * akq;
          a(k, q) = s * akp + c * ph_conj * akq;
        }
        // A <- G† A on rows (p, q)
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * phase * aqk;
          a(q, k) = s * apk + c * phase * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        if (v != nullptr) {
          for (std::size_t k = 0; k < n; ++k) {
            const cplx vkp = (*v)(k, p), vkq = (*v)(k, q);
            (*v)(k, p) = c * vkp - s * ph_conj * vkq;
            (*v)(k, q) = s * vkp + c * ph_conj * vkq;
          }
        }
      }
    }
  }
  if (off_diagonal_norm2(a) > 1e-24 * scale2) throw NumericalError("Jacobi eigensolver did not converge");
}

Matrix hermitized(const Matrix& m) {
  Matrix h = m;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) h(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
  return h;
}

void gram_schmidt_columns(Matrix& v, std::size_t first, std::size_t last) {
  const std::size_t n = v.rows();
  for (std::size_t k = first; k < last; ++k) {
    for (std::size_t j = first; j < k; ++j) {
      cplx dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) dot += std::conj(v(i, j)) * v(i, k);
      for (std::size_t i = 0; i < n; ++i) v(i, k) -= dot * v(i, j);
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) norm += std::norm(v(i, k));
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < n; ++i) v(i, k) /= norm;
  }
}

}  // namespace

EigenSystem eig_hermitian(const Matrix& m, double tol) {
  if (!m.is_square()) throw DimensionError("eig_hermitian needs a square matrix");
  if (!is_hermitian(m, tol)) throw ValidationError("eig_hermitian: matrix is not Hermitian");
  const std::size_t n = m.rows();
  Matrix a = hermitized(m);
  Matrix v = Matrix::identity(n);
  jacobi(a, &v);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  EigenSystem es{std::vector<double>(n), Matrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    es.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) es.vectors(i, k) = v(i, order[k]);
  }
  // Degenerate clusters: any orthonormal basis is valid, so just make sure it is one.
  std::size_t start = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    if (k == n || es.values[k] - es.values[k - 1] >= 1e-9) {
      if (k - start > 1) gram_schmidt_columns(es.vectors, start, k);
      start = k;
    }
  }
  return es;
}

std::vector<double> eigvals_hermitian(const Matrix& m) {
  if (!m.is_square()) throw DimensionError("eigvals_hermitian needs a square matrix");
  const std::size_t n = m.rows();
  if (n == 1) return {m(0, 0).real()};
  if (n == 2) {
    const double a = m(0, 0).real(), d = m(1, 1).real();
    const double mean = 0.5 * (a + d);
    const double half = 0.5 * (a - d);
    const double rad = std::sqrt(half * half + std::norm(0.5 * (m(0, 1) + std::conj(m(1, 0)))));
    return {mean - rad, mean + rad};
  }
  Matrix a = hermitized(m);
  jacobi(a, nullptr);
  std::vector<double> vals(n);
  for (std::size_t i = 0; i < n; ++i) vals[i] = a(i, i).real();
  std::sort(vals.begin(), vals.end());
  return vals;
}

Matrix expi_hermitian(const Matrix& h) {
  const EigenSystem es = eig_hermitian(h);
  return apply_spectral(es, [](double x) { return std::polar(1.0, x); });
}

DensityMatrix DensityMatrix::trusted(Matrix m, Dims dims, double tol) {
  if (!m.is_square() || m.rows() != dims.total()) throw DimensionError("state side does not match dims");
  Matrix h = hermitized(m);
  const double tr = h.trace().real();
  if (!(tr > 0.0)) throw NumericalError("state has non-positive trace");
  h *= 1.0 / tr;
  return DensityMatrix(std::move(h), dims, tol);
}

DensityMatrix validate_density(const Matrix& m, Dims dims, double tol) {
  if (!m.is_square() || m.rows() != dims.total()) {
    throw DimensionError(fmt::format("state is {}x{} but dims are {}x{}", m.rows(), m.cols(), dims.a, dims.b));
  }
  if (!is_hermitian(m, tol)) throw ValidationError("state is not Hermitian");
  const cplx tr = m.trace();
  if (std::abs(tr - cplx(1.0, 0.0)) > tol) {
    throw ValidationError(fmt::format("state trace {} deviates from 1", tr.real()));
  }
  const EigenSystem es = eig_hermitian(m, tol);
  if (es.values.front() < -tol) {
    throw ValidationError(fmt::format("state has negative eigenvalue {}", es.values.front()));
  }
  Matrix h;
  if (es.values.front() < 0.0) {
    h = apply_spectral(es, [](double x) { return cplx(std::max(x, 0.0), 0.0); });
  } else {
    h = hermitized(m);
  }
  h *= 1.0 / h.trace().real();
  return DensityMatrix(std::move(h), dims, tol);
}

Matrix partial_trace(const Matrix& m, Dims dims, Subsystem keep) {
  if (!m.is_square() || m.rows() != dims.total()) throw DimensionError("partial_trace: dims do not match matrix");
  const std::size_t da = dims.a, db = dims.b;
  if (keep == Subsystem::A) {
    Matrix out(da, da);
    for (std::size_t i = 0; i < da; ++i)
      for (std::size_t j = 0; j < da; ++j) {
        cplx s = 0.0;
        for (std::size_t k = 0; k < db; ++k) s += m(i * db + k, j * db + k);
        out(i, j) = s;
      }
    return out;
  }
  Matrix out(db, db);
  for (std::size_t k = 0; k < db; ++k)
    for (std::size_t l = 0; l < db; ++l) {
      cplx s = 0.0;
      for (std::size_t i = 0; i < da; ++i) s += m(i * db + k, i * db + l);
      out(k, l) = s;
    }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem keep) {
  const Dims d = rho.dims();
  Matrix red = partial_trace(rho.matrix(), d, keep);
  return DensityMatrix::trusted(std::move(red), Dims{keep == Subsystem::A ? d.a : d.b, 1}, rho.tol());
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix::trusted(kron(a.matrix(), b.matrix()), Dims{a.side(), b.side()}, std::max(a.tol(), b.tol()));
}

std::string to_string(const Matrix& m, int precision) {
  std::string s;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const cplx z = m(i, j);
      s += fmt::format("{}{:.{}g}{:+.{}g}i", j ? " " : "", z.real(), precision, z.imag(), precision);
    }
    s += '\n';
  }
  return s;
}

}  // namespace eur
