#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace eur {

using cplx = std::complex<double>;

inline constexpr double kDefaultTol = 1e-9;

// Error hierarchy shared by every module. The CLI maps these onto exit codes.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DimensionError : Error {
  using Error::Error;
};
struct ValidationError : Error {
  using Error::Error;
};
struct NumericalError : Error {
  using Error::Error;
};

// Dense row-major complex matrix. Sized for the small operators used here
// (side <= 16), so everything is eager and by value.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
  Matrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static Matrix identity(std::size_t n);
  static Matrix zeros(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
  static Matrix diagonal(std::span<const double> values);
  static Matrix diagonal(std::initializer_list<double> values);
  // |v><v|
  static Matrix projector(std::span<const cplx> v);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return entries_.empty(); }

  cplx& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  std::span<const cplx> entries() const noexcept { return entries_; }
  std::span<cplx> entries() noexcept { return entries_; }

  std::vector<cplx> column(std::size_t c) const;

  Matrix adjoint() const;
  Matrix conj() const;
  Matrix transpose() const;
  cplx trace() const;
  double frobenius_norm() const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(cplx s);
  Matrix& operator*=(double s) { return *this *= cplx(s, 0.0); }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, cplx s) { return a *= s; }
  friend Matrix operator*(cplx s, Matrix a) { return a *= s; }
  friend Matrix operator*(Matrix a, double s) { return a *= s; }
  friend Matrix operator*(double s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> entries_;
};

// (A⊗B)[i*rB + k, j*cB + l] = A[i,j] * B[k,l]
Matrix kron(const Matrix& a, const Matrix& b);

// Largest entrywise modulus of a - b; shapes must match.
double max_abs_diff(const Matrix& a, const Matrix& b);

bool is_hermitian(const Matrix& m, double tol = kDefaultTol);

// Pauli matrices: 0 -> identity, 1 -> x, 2 -> y, 3 -> z.
Matrix pauli(int k);

// Eigen-decomposition of a Hermitian matrix. Values ascend; column k of
// `vectors` is the unit eigenvector for values[k].
struct EigenSystem {
  std::vector<double> values;
  Matrix vectors;
};

// Cyclic complex Jacobi. Throws ValidationError on non-Hermitian input and
// NumericalError if the sweep budget runs out.
EigenSystem eig_hermitian(const Matrix& m, double tol = kDefaultTol);

// Eigenvalues only (ascending). Skips vector accumulation; the hot path for
// entropies of small conditional states.
std::vector<double> eigvals_hermitian(const Matrix& m);

// V * diag(f(λ)) * V† for Hermitian m.
template <typename F>
Matrix apply_spectral(const EigenSystem& es, F&& f) {
  const std::size_t n = es.values.size();
  Matrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const cplx fk = f(es.values[k]);
    for (std::size_t i = 0; i < n; ++i) {
      const cplx vik = es.vectors(i, k) * fk;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * std::conj(es.vectors(j, k));
    }
  }
  return out;
}

// exp(i H) for Hermitian H.
Matrix expi_hermitian(const Matrix& h);

// ---------------------------------------------------------------------------
// Bipartite states

enum class Subsystem { A, B };

struct Dims {
  std::size_t a = 1;
  std::size_t b = 1;
  std::size_t total() const noexcept { return a * b; }
  friend bool operator==(const Dims&, const Dims&) = default;
};

// A validated state: Hermitian, unit trace, positive semidefinite, with
// subsystem dimensions. Single-system states carry dims {d, 1}.
// Only constructible through validate_density (or the unchecked factory used
// by code paths that have already established the invariants).
class DensityMatrix {
 public:
  const Matrix& matrix() const noexcept { return mat_; }
  Dims dims() const noexcept { return dims_; }
  std::size_t side() const noexcept { return mat_.rows(); }
  double tol() const noexcept { return tol_; }

  const cplx& operator()(std::size_t r, std::size_t c) const { return mat_(r, c); }

  // For producers whose output is positive by construction (Kraus maps,
  // convex mixtures of validated states). Still Hermitizes and renormalizes.
  static DensityMatrix trusted(Matrix m, Dims dims, double tol = kDefaultTol);

 private:
  DensityMatrix(Matrix m, Dims dims, double tol) : mat_(std::move(m)), dims_(dims), tol_(tol) {}
  friend DensityMatrix validate_density(const Matrix& m, Dims dims, double tol);

  Matrix mat_;
  Dims dims_;
  double tol_ = kDefaultTol;
};

// Checks hermiticity, trace and spectrum against `tol`. Eigenvalues in
// [-tol, 0) are clipped to zero and the result renormalized.
DensityMatrix validate_density(const Matrix& m, Dims dims, double tol = kDefaultTol);

// Reduced state on `keep`; result has dims {d_keep, 1}.
DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem keep);
Matrix partial_trace(const Matrix& m, Dims dims, Subsystem keep);

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

std::string to_string(const Matrix& m, int precision = 6);

}  // namespace eur
