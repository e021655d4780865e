#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "speedlimit/bounds.hpp"
#include "speedlimit/hilbert.hpp"
#include "speedlimit/polynomial.hpp"

namespace speedlimit {

/// Uniform mesh of interior nodes on the phase-space box
/// [x_min, x_max] x [p_min, p_max]. The box edges are zero-density walls, so
/// the trapezoid rule on the box reduces to uniform weights dx * dp on the
/// nodes. Node (i, j) sits at (x_min + (i+1) dx, p_min + (j+1) dp) and has
/// flat index i * np + j.
class PhaseGrid {
 public:
  PhaseGrid(double x_min, double x_max, double p_min, double p_max, int nx,
            int np);

  /// Grid whose first and last nodes land exactly on the given spans.
  static PhaseGrid with_node_span(double x_lo, double x_hi, double p_lo,
                                  double p_hi, int nx, int np);

  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  double p_min() const { return p_min_; }
  double p_max() const { return p_max_; }
  int nx() const { return nx_; }
  int np() const { return np_; }
  double dx() const { return (x_max_ - x_min_) / (nx_ + 1); }
  double dp() const { return (p_max_ - p_min_) / (np_ + 1); }
  double x(int i) const { return x_min_ + (i + 1) * dx(); }
  double p(int j) const { return p_min_ + (j + 1) * dp(); }
  Eigen::Index size() const { return Eigen::Index{nx_} * np_; }
  Eigen::Index index(int i, int j) const { return Eigen::Index{i} * np_ + j; }
  bool on_boundary(int i, int j) const {
    return i == 0 || j == 0 || i == nx_ - 1 || j == np_ - 1;
  }

  InnerProductSpace space() const;
  double integrate(const RealVector& values) const;

 private:
  double x_min_, x_max_, p_min_, p_max_;
  int nx_, np_;
};

/// Nonnegative density on a PhaseGrid with unit mass (to 1e-6) and a
/// vanishing rim (outermost nodes below 1e-10 of the peak).
class PhaseDistribution {
 public:
  PhaseDistribution(PhaseGrid grid, RealVector values);

  const PhaseGrid& grid() const { return grid_; }
  const RealVector& values() const { return values_; }
  double mass() const { return grid_.integrate(values_); }
  Vector as_state() const { return values_.cast<Complex>(); }

 private:
  PhaseGrid grid_;
  RealVector values_;
};

/// rho(x, p) = sqrt(ab)/pi exp(-a (x-e)^2 - b (p-f)^2)
struct GaussianParams {
  double a = 1.0;
  double b = 1.0;
  double e = 0.0;
  double f = 0.0;

  double sigma_x() const;
  double sigma_p() const;
  double operator()(double x, double p) const;
};

/// H(x, p) = T(p) + V(x).
class SeparableHamiltonian {
 public:
  SeparableHamiltonian(Polynomial kinetic, Polynomial potential);

  /// H = d p^2 + c x^2 with c, d > 0.
  static SeparableHamiltonian harmonic(double c, double d);

  const Polynomial& kinetic() const { return kinetic_; }
  const Polynomial& potential() const { return potential_; }
  double operator()(double x, double p) const { return kinetic_(p) + potential_(x); }

  /// (c, d) when H is exactly d p^2 + c x^2 with c, d > 0.
  std::optional<std::pair<double, double>> harmonic_coefficients() const;

 private:
  Polynomial kinetic_;
  Polynomial potential_;
};

inline constexpr int kDefaultStencilOrder = 6;
/// Half-width of the node span around a Gaussian, in standard deviations.
inline constexpr double kDomainSigmas = 7.0;
/// Smallest half-width a Gaussian may need inside the node span.
inline constexpr double kRequiredSigmas = 6.0;

PhaseDistribution gaussian_state(const PhaseGrid& grid, const GaussianParams& g);

/// Matrix of i{H, .} = i (V'(x) d/dp - T'(p) d/dx) with antisymmetric
/// central differences and zero closure. The result is Hermitian under the
/// grid's quadrature inner product.
HermitianOperator build_liouvillian(const SeparableHamiltonian& h,
                                    const PhaseGrid& grid,
                                    int stencil_order = kDefaultStencilOrder);

/// Pointwise rho^alpha, alpha > 0, not renormalised.
Vector power_state(const PhaseDistribution& rho, double alpha);

/// order 1: <rho|L|rho> (zero for real rho); order 2: <L rho|L rho>.
double l_moment(const Vector& rho_alpha, const HermitianOperator& liouvillian,
                int order);

/// Exact <rho|L^2|rho> for a Gaussian under H = d p^2 + c x^2.
double harmonic_l2_closed_form(const GaussianParams& g, double c, double d);

/// Phase-space flow of H = d p^2 + c x^2 (angular frequency 2 sqrt(cd)).
struct HarmonicFlow {
  double c;
  double d;

  double omega() const;
  /// Image of (x, p) after time t (negative t flows backward).
  std::pair<double, double> operator()(double x, double p, double t) const;
};

/// rho(z, t) = rho(flow_{-t}(z), 0) sampled on the grid.
PhaseDistribution harmonic_evolve_exact(const GaussianParams& g, double c,
                                        double d, double t,
                                        const PhaseGrid& grid);

/// Grid that holds the whole harmonic orbit of rho^alpha_min with a
/// kDomainSigmas margin on each side.
PhaseGrid harmonic_orbit_grid(const GaussianParams& g, double c, double d,
                              double alpha_min, int nx, int np);

struct ScaleScanOptions {
  GaussianParams base{1.0, 1.0, 1.0, 0.0};
  double c = 1.0;
  double d = 1.0;
  double alpha = 1.0;
  double t = 0.5;
  /// Node spacing is chosen so sigma spans this many cells (capped by
  /// max_points); ignored when fixed_grid is set.
  double cells_per_sigma = 3.0;
  int max_points = 56;
  std::optional<PhaseGrid> fixed_grid;
  int stencil_order = kDefaultStencilOrder;
  double stationary_tolerance = 1e-8;
};

struct ScaleScanEntry {
  double scale = 1.0;
  BoundValue bound;
  bool refused = false;
  std::string reason;
  int nx = 0;
  int np = 0;
};

/// ML-type bound at fixed t for the Gaussians (s a, s b, e, f), s in scales.
/// Scales whose width falls under three grid cells are flagged as refused.
std::vector<ScaleScanEntry> single_particle_limit_scan(
    std::span<const double> scales, const ScaleScanOptions& options);

}  // namespace speedlimit
