#include "speedlimit/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include <lapacke.h>

#include "speedlimit/error.hpp"

namespace speedlimit {
namespace {

constexpr double kHermiticityTolerance = 1e-10;
constexpr double kPhaseThreshold = 1e-8;
constexpr double kEigenCheckTolerance = 1e-8;

void require_same(const char* context, Eigen::Index lhs, Eigen::Index rhs) {
  if (lhs != rhs) {
    throw DimensionError(context, static_cast<std::size_t>(lhs),
                         static_cast<std::size_t>(rhs));
  }
}

// Rotates v so that its first significant component is real and positive.
void fix_phase(Eigen::Ref<Vector> v) {
  const double scale = v.cwiseAbs().maxCoeff();
  if (scale == 0.0) return;
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    const double mag = std::abs(v[k]);
    if (mag > kPhaseThreshold * scale) {
      v *= std::conj(v[k]) / mag;
      v[k] = Complex(mag, 0.0);
      return;
    }
  }
}

// Randomised O(n^2) check that z is unitary and diagonalises b; guards
// against silently wrong output from the LAPACK backend.
void verify_eigenpairs(const Matrix& b, const Matrix& z, const RealVector& values) {
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> normal;
  Vector x(z.cols());
  for (auto& v : x) v = {normal(rng), normal(rng)};
  x.normalize();
  const Vector zx = z * x;
  const double orthonormality = (z.adjoint() * zx - x).norm();
  const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
  const double residual = (b * zx - z * values.cwiseProduct(x)).norm() / scale;
  if (!(orthonormality < kEigenCheckTolerance) || !(residual < kEigenCheckTolerance)) {
    throw NumericalError("eigensolver output failed verification (orthonormality " +
                         std::to_string(orthonormality) + ", residual " +
                         std::to_string(residual) + ")");
  }
}

}  // namespace

InnerProductSpace::InnerProductSpace(RealVector weights)
    : weights_(std::move(weights)) {
  if (weights_.size() == 0) {
    throw DomainError("inner product space needs a positive dimension");
  }
  if ((weights_.array() < 0.0).any() || !weights_.allFinite()) {
    throw DomainError("inner product weights must be finite and nonnegative");
  }
  if (weights_.maxCoeff() <= 0.0) {
    throw DomainError("inner product weights must not all vanish");
  }
}

InnerProductSpace InnerProductSpace::uniform(Eigen::Index dimension,
                                             double weight) {
  return InnerProductSpace(RealVector::Constant(dimension, weight));
}

bool InnerProductSpace::strictly_positive() const {
  return (weights_.array() > 0.0).all();
}

Complex InnerProductSpace::inner_product(const Vector& f,
                                         const Vector& g) const {
  require_same("inner_product(f, g)", f.size(), g.size());
  require_same("inner_product(f, weights)", f.size(), weights_.size());
  Complex sum{0.0, 0.0};
  for (Eigen::Index k = 0; k < f.size(); ++k) {
    sum += weights_[k] * std::conj(f[k]) * g[k];
  }
  return sum;
}

double InnerProductSpace::squared_norm(const Vector& f) const {
  require_same("squared_norm", f.size(), weights_.size());
  double sum = 0.0;
  for (Eigen::Index k = 0; k < f.size(); ++k) {
    sum += weights_[k] * std::norm(f[k]);
  }
  return sum;
}

Complex inner_product(const Vector& f, const Vector& g,
                      const InnerProductSpace& space) {
  return space.inner_product(f, g);
}

double hermiticity_defect(const Matrix& matrix,
                          const InnerProductSpace& space) {
  require_same("hermiticity_defect(rows, cols)", matrix.rows(), matrix.cols());
  require_same("hermiticity_defect(matrix, space)", matrix.rows(),
               space.dimension());
  const Matrix weighted = space.weights().asDiagonal() * matrix;
  const double scale = weighted.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  return (weighted - weighted.adjoint()).cwiseAbs().maxCoeff() / scale;
}

HermitianOperator::HermitianOperator(Matrix matrix, InnerProductSpace space)
    : matrix_(std::move(matrix)), space_(std::move(space)) {
  require_same("HermitianOperator(rows, cols)", matrix_.rows(), matrix_.cols());
  require_same("HermitianOperator(matrix, space)", matrix_.rows(),
               space_.dimension());
  if (!matrix_.allFinite()) {
    throw DomainError("operator matrix contains non-finite entries");
  }
  const double defect = hermiticity_defect(matrix_, space_);
  if (defect > kHermiticityTolerance) {
    throw DomainError("operator is not self-adjoint under its inner product "
                      "(relative defect " + std::to_string(defect) + ")");
  }
}

Vector HermitianOperator::apply(const Vector& f) const {
  require_same("HermitianOperator::apply", f.size(), matrix_.cols());
  return matrix_ * f;
}

double HermitianOperator::norm() const {
  if (matrix_.size() == 0) return 0.0;
  return matrix_.cwiseAbs().colwise().sum().maxCoeff();
}

double self_adjointness_residual(const HermitianOperator& op, int trials,
                                 std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  const auto& space = op.space();
  const Eigen::Index n = op.dimension();
  auto random_unit = [&] {
    Vector v(n);
    for (Eigen::Index k = 0; k < n; ++k) v[k] = Complex(gauss(rng), gauss(rng));
    return Vector(v / std::sqrt(space.squared_norm(v)));
  };
  double worst = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    const Vector f = random_unit();
    const Vector g = random_unit();
    const Complex lhs = space.inner_product(f, op.apply(g));
    const Complex rhs = space.inner_product(op.apply(f), g);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

std::shared_ptr<const Eigensystem> eigensystem(const HermitianOperator& op) {
  const auto& space = op.space();
  if (!space.strictly_positive()) {
    throw DomainError(
        "spectral decomposition needs strictly positive inner product weights");
  }
  const Eigen::Index n = op.dimension();
  const RealVector sqrt_w = space.weights().cwiseSqrt();
  const RealVector inv_sqrt_w = sqrt_w.cwiseInverse();

  // B = W^{1/2} A W^{-1/2} is Hermitian in the plain sense.
  Matrix b = sqrt_w.asDiagonal() * op.matrix() * inv_sqrt_w.asDiagonal();
  b = (0.5 * (b + b.adjoint())).eval();
  const Matrix b_copy = b;

  RealVector values(n);
  Matrix z(n, n);
  std::vector<lapack_int> support(2 * static_cast<std::size_t>(n));
  lapack_int found = 0;
  const lapack_int info = LAPACKE_zheevr(
      LAPACK_COL_MAJOR, 'V', 'A', 'L', static_cast<lapack_int>(n),
      reinterpret_cast<lapack_complex_double*>(b.data()),
      static_cast<lapack_int>(b.outerStride()), 0.0, 0.0, 0, 0, 0.0, &found,
      values.data(), reinterpret_cast<lapack_complex_double*>(z.data()),
      static_cast<lapack_int>(z.outerStride()), support.data());
  if (info > 0 || found != n) {
    throw NumericalError("Hermitian eigensolver failed (info " +
                         std::to_string(info) + ", " + std::to_string(found) +
                         " of " + std::to_string(n) + " eigenpairs)");
  }
  if (info < 0) {
    throw NumericalError("Hermitian eigensolver rejected argument " +
                         std::to_string(-info));
  }
  verify_eigenpairs(b_copy, z, values);

  auto result = std::make_shared<Eigensystem>(
      Eigensystem{std::move(values), inv_sqrt_w.asDiagonal() * z, space});
  for (Eigen::Index k = 0; k < n; ++k) fix_phase(result->vectors.col(k));
  return result;
}

SpectralDecomposition::SpectralDecomposition(
    std::shared_ptr<const Eigensystem> basis, Vector coefficients)
    : basis_(std::move(basis)), coefficients_(std::move(coefficients)) {
  if (!basis_) throw DomainError("spectral decomposition without a basis");
  require_same("SpectralDecomposition(coefficients, basis)",
               coefficients_.size(), basis_->values.size());
}

Vector SpectralDecomposition::reconstruct() const {
  return basis_->vectors * coefficients_;
}

double SpectralDecomposition::moment(int k) const {
  double sum = 0.0;
  const auto& lambda = basis_->values;
  for (Eigen::Index n = 0; n < coefficients_.size(); ++n) {
    sum += std::norm(coefficients_[n]) * std::pow(lambda[n], k);
  }
  return sum;
}

SpectralDecomposition expand(std::shared_ptr<const Eigensystem> basis,
                             const Vector& initial) {
  if (!basis) throw DomainError("expand() without a basis");
  require_same("expand(initial, basis)", initial.size(), basis->values.size());
  Vector weighted = basis->space.weights().cast<Complex>().cwiseProduct(initial);
  Vector coefficients = basis->vectors.adjoint() * weighted;
  return SpectralDecomposition(std::move(basis), std::move(coefficients));
}

SpectralDecomposition spectral_decompose(const HermitianOperator& op,
                                         const Vector& initial) {
  require_same("spectral_decompose(initial, operator)", initial.size(),
               op.dimension());
  return expand(eigensystem(op), initial);
}

Vector evolve_coefficients(const SpectralDecomposition& decomp, double t,
                           EvolutionMode mode) {
  if (mode == EvolutionMode::decaying && t < 0.0) {
    throw DomainError("decaying evolution is only defined for t >= 0");
  }
  const auto& lambda = decomp.eigenvalues();
  const auto& c = decomp.coefficients();
  Vector out(c.size());
  for (Eigen::Index n = 0; n < c.size(); ++n) {
    const Complex factor = mode == EvolutionMode::unitary
                               ? std::polar(1.0, -lambda[n] * t)
                               : Complex(std::exp(-lambda[n] * t), 0.0);
    out[n] = c[n] * factor;
  }
  return out;
}

Vector evolve_spectral(const SpectralDecomposition& decomp, double t,
                       EvolutionMode mode) {
  if (t == 0.0) return decomp.reconstruct();
  return decomp.eigenvectors() * evolve_coefficients(decomp, t, mode);
}

OverlapCurve overlap_curve(const SpectralDecomposition& decomp,
                           std::span<const double> times, EvolutionMode mode) {
  OverlapCurve curve;
  const auto& lambda = decomp.eigenvalues();
  const auto& c = decomp.coefficients();
  const Eigen::Index n = c.size();
  RealVector weight(n);
  for (Eigen::Index k = 0; k < n; ++k) weight[k] = std::norm(c[k]);
  curve.norm0 = weight.sum();
  curve.times.assign(times.begin(), times.end());
  curve.overlaps.reserve(times.size());
  for (const double t : times) {
    if (mode == EvolutionMode::decaying && t < 0.0) {
      throw DomainError("decaying overlap is only defined for t >= 0");
    }
    RealVector re(n);
    RealVector im = RealVector::Zero(n);
    for (Eigen::Index k = 0; k < n; ++k) {
      if (mode == EvolutionMode::unitary) {
        re[k] = weight[k] * std::cos(lambda[k] * t);
        im[k] = -weight[k] * std::sin(lambda[k] * t);
      } else {
        re[k] = weight[k] * std::exp(-lambda[k] * t);
      }
    }
    curve.overlaps.push_back(re.sum());
    curve.max_imaginary_residue =
        std::max(curve.max_imaginary_residue, std::abs(im.sum()));
  }
  return curve;
}

}  // namespace speedlimit
