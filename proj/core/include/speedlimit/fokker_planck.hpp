#pragma once

#include <vector>

#include "speedlimit/hilbert.hpp"
#include "speedlimit/polynomial.hpp"

namespace speedlimit {

/// Drift potential W(x) of dP/dt = d/dx[(2 W'(x) + d/dx) P] sampled on the
/// interior nodes of [x_min, x_max] (walls at the ends, spacing
/// (x_max - x_min) / (n + 1)).
///
/// W must be an even-degree polynomial with positive leading coefficient and
/// exp(-2W) must vanish at the outermost nodes (below 1e-10 of its peak).
class DriftPotential {
 public:
  DriftPotential(Polynomial w, double x_min, double x_max, int points);

  const Polynomial& polynomial() const { return w_; }
  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  int points() const { return points_; }
  double h() const { return (x_max_ - x_min_) / (points_ + 1); }
  double x(int i) const { return x_min_ + (i + 1) * h(); }

  RealVector nodes() const;
  RealVector values() const;
  InnerProductSpace space() const;

  /// exp(-2W) normalised to unit mass on the grid.
  RealVector stationary_density() const;

 private:
  Polynomial w_;
  double x_min_, x_max_;
  int points_;
};

/// H_F = -d^2/dx^2 + W'^2 - W'' with a symmetric central stencil and zero
/// closure.
HermitianOperator build_hf(const DriftPotential& w, int stencil_order = 6);

/// psi = exp(+W) P where P > 1e-14 max(P), zero elsewhere. Throws
/// NumericalError naming the nodes where exp(W) P would overflow.
Vector fp_to_schrodinger(const RealVector& density, const DriftPotential& w);

/// P = exp(-W) Re(psi).
RealVector schrodinger_to_fp(const Vector& psi, const DriftPotential& w);

struct FpOverlapInputs {
  double norm0 = 0.0;
  double overlap_t = 0.0;
  double mean_hf = 0.0;   // <psi|H_F|psi>
  double mean_hf2 = 0.0;  // <psi|H_F^2|psi>
};

/// Spectral decomposition of H_F for psi0. The spectrum must be nonnegative
/// to within 1e-10 * ||H_F||; eigenvalues inside that band are set to zero.
SpectralDecomposition decompose_hf(const HermitianOperator& hf, const Vector& psi0);

FpOverlapInputs fp_overlap_inputs(const SpectralDecomposition& decomp, double t);
FpOverlapInputs fp_overlap_inputs(const Vector& psi0, const HermitianOperator& hf,
                                  double t);

}  // namespace speedlimit
