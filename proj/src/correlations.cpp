#include "eur/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <fmt/format.h>

namespace eur {

void OptimizerConfig::validate() const {
  if (grid_points < 2 || refine_iters < 1 || restarts < 1) {
    throw ValidationError(fmt::format("optimizer settings must be positive (grid {}, refine {}, restarts {})", grid_points,
                                      refine_iters, restarts));
  }
}

double holevo_quantity(const DensityMatrix& rho, const ProjectiveMeasurement& m) {
  const MeasurementOutcome out = measure_on_A(rho, m);
  double avg = 0.0;
  for (std::size_t i = 0; i < out.conditional_states.size(); ++i) {
    avg += out.probs.probs[i] * von_neumann(out.conditional_states[i]);
  }
  return von_neumann(partial_trace(rho.matrix(), rho.dims(), Subsystem::B)) - avg;
}

Matrix qubit_basis(double theta, double phi) {
  const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
  const cplx e = std::polar(1.0, phi);
  return Matrix{{c, -std::conj(e) * s}, {e * s, c}};
}

Matrix gell_mann(int k) {
  using namespace std::complex_literals;
  Matrix m(3, 3);
  switch (k) {
    case 1: m(0, 1) = 1.0; m(1, 0) = 1.0; break;
    case 2: m(0, 1) = -1.0i; m(1, 0) = 1.0i; break;
    case 3: m(0, 0) = 1.0; m(1, 1) = -1.0; break;
    case 4: m(0, 2) = 1.0; m(2, 0) = 1.0; break;
    case 5: m(0, 2) = -1.0i; m(2, 0) = 1.0i; break;
    case 6: m(1, 2) = 1.0; m(2, 1) = 1.0; break;
    case 7: m(1, 2) = -1.0i; m(2, 1) = 1.0i; break;
    case 8: {
      const double r = 1.0 / std::sqrt(3.0);
      m(0, 0) = r; m(1, 1) = r; m(2, 2) = -2.0 * r;
      break;
    }
    default: throw DimensionError(fmt::format("no Gell-Mann matrix with index {}", k));
  }
  return m;
}

Matrix qutrit_basis(std::span<const double, 8> coeffs) {
  Matrix h(3, 3);
  for (int k = 0; k < 8; ++k) h += coeffs[k] * gell_mann(k + 1);
  return expi_hermitian(h);
}

namespace {

// Holevo quantity for rank-1 bases, with the A-blocks of ρ precomputed so an
// evaluation costs dA conditional spectra and nothing else.
class HolevoEvaluator {
 public:
  explicit HolevoEvaluator(const DensityMatrix& rho) : da_(rho.dims().a), db_(rho.dims().b) {
    blocks_.reserve(da_ * da_);
    for (std::size_t i = 0; i < da_; ++i)
      for (std::size_t j = 0; j < da_; ++j) {
        Matrix blk(db_, db_);
        for (std::size_t b = 0; b < db_; ++b)
          for (std::size_t c = 0; c < db_; ++c) blk(b, c) = rho(i * db_ + b, j * db_ + c);
        blocks_.push_back(std::move(blk));
      }
    s_b_ = von_neumann(partial_trace(rho.matrix(), rho.dims(), Subsystem::B));
  }

  double operator()(const Matrix& basis) const {
    double loss = 0.0;
    Matrix r(db_, db_);
    for (std::size_t k = 0; k < da_; ++k) {
      std::fill(r.entries().begin(), r.entries().end(), cplx(0.0, 0.0));
      for (std::size_t i = 0; i < da_; ++i) {
        const cplx vi = std::conj(basis(i, k));
        for (std::size_t j = 0; j < da_; ++j) {
          const cplx w = vi * basis(j, k);
          const auto src = blocks_[i * da_ + j].entries();
          auto dst = r.entries();
          for (std::size_t e = 0; e < src.size(); ++e) dst[e] += w * src[e];
        }
      }
      const double p = r.trace().real();
      if (p <= 1e-300) continue;
      const auto mu = eigvals_hermitian(r);
      // p S(R/p) = H(μ) + p log2 p
      loss += spectrum_entropy(mu) + p * std::log2(p);
    }
    return s_b_ - loss;
  }

  std::size_t da() const { return da_; }

 private:
  std::size_t da_, db_;
  std::vector<Matrix> blocks_;
  double s_b_ = 0.0;
};

constexpr double kInvPhi = 0.6180339887498949;

// Golden-section maximization of f on [lo, hi]; returns (argmax, max).
template <typename F>
std::pair<double, double> golden_max(F&& f, double lo, double hi, double width) {
  double a = lo, b = hi;
  double x1 = b - kInvPhi * (b - a), x2 = a + kInvPhi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > width) {
    if (f1 < f2) {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + kInvPhi * (b - a); f2 = f(x2);
    } else {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - kInvPhi * (b - a); f1 = f(x1);
    }
  }
  return f1 >= f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

using Vec3 = std::array<double, 3>;

Vec3 normalized(Vec3 v) {
  const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  return {v[0] / n, v[1] / n, v[2] / n};
}

Matrix basis_from_direction(const Vec3& n) {
  return qubit_basis(std::acos(std::clamp(n[2], -1.0, 1.0)), std::atan2(n[1], n[0]));
}

// Two unit vectors spanning the tangent plane at n.
std::pair<Vec3, Vec3> tangent_frame(const Vec3& n) {
  const Vec3 helper = std::abs(n[0]) < 0.9 ? Vec3{1.0, 0.0, 0.0} : Vec3{0.0, 1.0, 0.0};
  const double d = helper[0] * n[0] + helper[1] * n[1] + helper[2] * n[2];
  const Vec3 e1 = normalized({helper[0] - d * n[0], helper[1] - d * n[1], helper[2] - d * n[2]});
  const Vec3 e2 = {n[1] * e1[2] - n[2] * e1[1], n[2] * e1[0] - n[0] * e1[2], n[0] * e1[1] - n[1] * e1[0]};
  return {e1, e2};
}

ClassicalCorrelation optimize_qubit(const HolevoEvaluator& holevo, const OptimizerConfig& cfg) {
  const int g = cfg.grid_points;
  const double dtheta = (std::numbers::pi / 2.0) / (g - 1);
  const double dphi = 2.0 * std::numbers::pi / g;

  // Hemisphere grid: n and -n give the same measurement.
  struct Candidate {
    double value;
    Vec3 n;
  };
  std::vector<Candidate> grid;
  grid.reserve(static_cast<std::size_t>(g) * g);
  for (int i = 0; i < g; ++i) {
    const double theta = i * dtheta;
    for (int j = 0; j < (i == 0 ? 1 : g); ++j) {
      const double phi = j * dphi;
      const Vec3 n{std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
      grid.push_back({holevo(qubit_basis(theta, phi)), n});
    }
  }
  const std::size_t starts = std::min<std::size_t>(std::min(cfg.restarts, 4), grid.size());
  std::partial_sort(grid.begin(), grid.begin() + starts, grid.end(),
                    [](const Candidate& x, const Candidate& y) { return x.value > y.value; });

  ClassicalCorrelation best{grid.front().value, basis_from_direction(grid.front().n)};
  for (std::size_t s = 0; s < starts; ++s) {
    Vec3 n = grid[s].n;
    double fn = grid[s].value;
    double h = 2.0 * std::max(dtheta, dphi);
    for (int sweep = 0; sweep < cfg.refine_iters && h > 1e-10; ++sweep) {
      double moved = 0.0;
      const auto [e1, e2] = tangent_frame(n);
      for (const Vec3& e : {e1, e2}) {
        auto along = [&](double t) {
          return normalized({n[0] + t * e[0], n[1] + t * e[1], n[2] + t * e[2]});
        };
        const auto [t, ft] = golden_max([&](double t) { return holevo(basis_from_direction(along(t))); }, -h, h, 1e-3 * h);
        if (ft > fn) {
          n = along(t);
          fn = ft;
          moved = std::max(moved, std::abs(t));
        }
      }
      if (moved < 0.5 * h) h *= 0.5;
    }
    if (fn > best.value) best = {fn, basis_from_direction(n)};
  }
  return best;
}

// exp(i t λ_k): λ_1..λ_7 satisfy λ^3 = λ, λ_8 is diagonal.
Matrix gell_mann_rotation(int k, double t) {
  using namespace std::complex_literals;
  if (k == 8) {
    const double r = 1.0 / std::sqrt(3.0);
    Matrix m(3, 3);
    m(0, 0) = std::polar(1.0, t * r);
    m(1, 1) = std::polar(1.0, t * r);
    m(2, 2) = std::polar(1.0, -2.0 * t * r);
    return m;
  }
  const Matrix l = gell_mann(k);
  return Matrix::identity(3) + (1.0i * std::sin(t)) * l + (std::cos(t) - 1.0) * (l * l);
}

ClassicalCorrelation optimize_qutrit(const HolevoEvaluator& holevo, const OptimizerConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);

  struct Candidate {
    double value;
    Matrix basis;
  };
  std::vector<Candidate> pool;
  const std::size_t screened = static_cast<std::size_t>(cfg.grid_points) * 8;
  pool.reserve(screened + 1);
  pool.push_back({holevo(Matrix::identity(3)), Matrix::identity(3)});
  for (std::size_t i = 0; i < screened; ++i) {
    std::array<double, 8> a{};
    for (double& x : a) x = angle(rng);
    Matrix u = qutrit_basis(a);
    pool.push_back({holevo(u), std::move(u)});
  }
  const std::size_t starts = std::min<std::size_t>(cfg.restarts, pool.size());
  std::partial_sort(pool.begin(), pool.begin() + starts, pool.end(),
                    [](const Candidate& x, const Candidate& y) { return x.value > y.value; });

  ClassicalCorrelation best{pool.front().value, pool.front().basis};
  for (std::size_t s = 0; s < starts; ++s) {
    Matrix u = pool[s].basis;
    double fu = pool[s].value;
    double h = 0.5;
    for (int sweep = 0; sweep < cfg.refine_iters && h > 1e-9; ++sweep) {
      double moved = 0.0;
      for (int k = 1; k <= 8; ++k) {
        const auto [t, ft] = golden_max([&](double t) { return holevo(u * gell_mann_rotation(k, t)); }, -h, h, 1e-3 * h);
        if (ft > fu) {
          u = u * gell_mann_rotation(k, t);
          fu = ft;
          moved = std::max(moved, std::abs(t));
        }
      }
      if (moved < 0.5 * h) h *= 0.5;
    }
    if (fu > best.value) best = {fu, u};
  }
  return best;
}

}  // namespace

ClassicalCorrelation optimize_classical_correlation(const DensityMatrix& rho, const OptimizerConfig& cfg) {
  cfg.validate();
  const std::size_t da = rho.dims().a;
  if (da != 2 && da != 3) {
    throw DimensionError(fmt::format("classical correlation supports subsystem A of dimension 2 or 3, got {}", da));
  }
  const HolevoEvaluator holevo(rho);
  ClassicalCorrelation res = da == 2 ? optimize_qubit(holevo, cfg) : optimize_qutrit(holevo, cfg);
  res.value = std::max(res.value, 0.0);
  return res;
}

double classical_correlation(const DensityMatrix& rho, const OptimizerConfig& cfg) {
  return optimize_classical_correlation(rho, cfg).value;
}

double bell_diagonal_classical_closed(double c1, double c2, double c3) {
  const double l[4] = {(1 + c1 - c2 + c3) / 4, (1 - c1 + c2 + c3) / 4, (1 + c1 + c2 - c3) / 4, (1 - c1 - c2 - c3) / 4};
  for (double x : l) {
    if (x < -1e-12) throw ValidationError(fmt::format("({}, {}, {}) is not a valid Bell-diagonal state", c1, c2, c3));
  }
  const double c = std::min(1.0, std::max({std::abs(c1), std::abs(c2), std::abs(c3)}));
  auto xlogx = [](double x) { return x > 0.0 ? x * std::log2(x) : 0.0; };
  return 0.5 * (xlogx(1.0 - c) + xlogx(1.0 + c));
}

CorrelationSummary correlations(const DensityMatrix& rho, const OptimizerConfig& cfg) {
  CorrelationSummary s;
  s.mutual = mutual_information(rho);
  s.classical = classical_correlation(rho, cfg);
  const double d = s.mutual - s.classical;
  if (d < -1e-6) {
    throw NumericalError(fmt::format("classical correlation {} exceeds mutual information {}", s.classical, s.mutual));
  }
  s.discord = std::max(d, 0.0);
  return s;
}

double discord(const DensityMatrix& rho, const OptimizerConfig& cfg) { return correlations(rho, cfg).discord; }

namespace {

void require_two_qubits(const DensityMatrix& rho) {
  if (rho.dims() != Dims{2, 2}) throw DimensionError("concurrence is defined here for two qubits only");
}

}  // namespace

double concurrence_x(const DensityMatrix& rho) {
  require_two_qubits(rho);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      if (i == j || i + j == 3) continue;
      if (std::abs(rho(i, j)) > 1e-10) throw ValidationError("state is not of X form");
    }
  const auto re = [&](std::size_t i) { return std::max(rho(i, i).real(), 0.0); };
  const double l1 = std::abs(rho(0, 3)) - std::sqrt(re(1) * re(2));
  const double l2 = std::abs(rho(1, 2)) - std::sqrt(re(0) * re(3));
  return std::min(1.0, 2.0 * std::max({0.0, l1, l2}));
}

double concurrence(const DensityMatrix& rho) {
  require_two_qubits(rho);
  const Matrix yy = kron(pauli(2), pauli(2));
  const Matrix tilde = yy * rho.matrix().conj() * yy;
  const EigenSystem es = eig_hermitian(rho.matrix());
  const Matrix sqrt_rho = apply_spectral(es, [](double x) { return cplx(std::sqrt(std::max(x, 0.0)), 0.0); });
  const Matrix m = sqrt_rho * tilde * sqrt_rho;
  auto vals = eigvals_hermitian(m);
  std::vector<double> mu(vals.size());
  std::transform(vals.begin(), vals.end(), mu.begin(), [](double x) { return std::sqrt(std::max(x, 0.0)); });
  std::sort(mu.begin(), mu.end(), std::greater<>());
  return std::clamp(mu[0] - mu[1] - mu[2] - mu[3], 0.0, 1.0);
}

}  // namespace eur
