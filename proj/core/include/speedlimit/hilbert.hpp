#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace speedlimit {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

/// Weighted l2 space: <f|g> = sum_k w_k conj(f_k) g_k.
///
/// Weights are quadrature weights of the underlying grid. They must be
/// nonnegative with at least one strictly positive entry.
class InnerProductSpace {
 public:
  explicit InnerProductSpace(RealVector weights);

  static InnerProductSpace uniform(Eigen::Index dimension, double weight = 1.0);

  Eigen::Index dimension() const { return weights_.size(); }
  const RealVector& weights() const { return weights_; }
  bool strictly_positive() const;

  Complex inner_product(const Vector& f, const Vector& g) const;
  double squared_norm(const Vector& f) const;

 private:
  RealVector weights_;
};

Complex inner_product(const Vector& f, const Vector& g,
                      const InnerProductSpace& space);

/// Dense operator that is self-adjoint on its inner-product space, i.e.
/// diag(w) * A is a Hermitian matrix. Construction rejects matrices whose
/// relative Hermiticity defect exceeds 1e-10.
class HermitianOperator {
 public:
  HermitianOperator(Matrix matrix, InnerProductSpace space);

  const Matrix& matrix() const { return matrix_; }
  const InnerProductSpace& space() const { return space_; }
  Eigen::Index dimension() const { return matrix_.rows(); }

  Vector apply(const Vector& f) const;

  /// Max absolute column sum; an upper bound on the spectral norm when the
  /// weights are uniform.
  double norm() const;

 private:
  Matrix matrix_;
  InnerProductSpace space_;
};

/// max |<W A - (W A)^H>_ij| / max |(W A)_ij|; zero for the null matrix.
double hermiticity_defect(const Matrix& matrix, const InnerProductSpace& space);

/// Largest |<f|A g> - <A f|g>| over random pairs of unit vectors.
double self_adjointness_residual(const HermitianOperator& op, int trials,
                                 std::uint64_t seed);

/// Eigenpairs of a HermitianOperator. Eigenvalues ascend; eigenvectors are
/// orthonormal under the operator's inner product and carry a phase
/// convention (first component above 1e-8 * max magnitude is real positive).
struct Eigensystem {
  RealVector values;
  Matrix vectors;
  InnerProductSpace space;
};

std::shared_ptr<const Eigensystem> eigensystem(const HermitianOperator& op);

/// An eigensystem together with the expansion coefficients c_n = <n|psi>
/// of one designated initial state.
class SpectralDecomposition {
 public:
  SpectralDecomposition(std::shared_ptr<const Eigensystem> basis,
                        Vector coefficients);

  const RealVector& eigenvalues() const { return basis_->values; }
  const Matrix& eigenvectors() const { return basis_->vectors; }
  const InnerProductSpace& space() const { return basis_->space; }
  const Vector& coefficients() const { return coefficients_; }
  const std::shared_ptr<const Eigensystem>& basis() const { return basis_; }

  /// sum_n c_n |n>
  Vector reconstruct() const;

  /// sum_n |c_n|^2 lambda_n^k
  double moment(int k) const;

  /// sum_n |c_n|^2
  double squared_norm() const { return moment(0); }

 private:
  std::shared_ptr<const Eigensystem> basis_;
  Vector coefficients_;
};

SpectralDecomposition spectral_decompose(const HermitianOperator& op,
                                         const Vector& initial);

/// Expands a new state in an existing eigensystem.
SpectralDecomposition expand(std::shared_ptr<const Eigensystem> basis,
                             const Vector& initial);

enum class EvolutionMode { unitary, decaying };

/// unitary: c_n -> c_n exp(-i lambda_n t); decaying: c_n -> c_n exp(-lambda_n t).
/// Decaying mode rejects t < 0.
Vector evolve_coefficients(const SpectralDecomposition& decomp, double t,
                           EvolutionMode mode);
Vector evolve_spectral(const SpectralDecomposition& decomp, double t,
                       EvolutionMode mode);

/// <psi|psi(t)> sampled on a time list, with <psi|psi>.
struct OverlapCurve {
  std::vector<double> times;
  std::vector<double> overlaps;
  double norm0 = 0.0;
  /// Largest |Im <psi|psi(t)>| seen while building the curve.
  double max_imaginary_residue = 0.0;
};

OverlapCurve overlap_curve(const SpectralDecomposition& decomp,
                           std::span<const double> times, EvolutionMode mode);

}  // namespace speedlimit
