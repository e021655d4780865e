#include "speedlimit/liouville.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "speedlimit/error.hpp"
#include "speedlimit/stencil.hpp"

namespace speedlimit {
namespace {

constexpr int kMinPoints = 8;
constexpr double kMassTolerance = 1e-6;
constexpr double kRimTolerance = 1e-10;

std::string fmt_box(double lo, double hi) {
  return "[" + std::to_string(lo) + ", " + std::to_string(hi) + "]";
}

struct Moments2d {
  double cx, cp;    // center
  double vxx, vpp;  // variances
};

// Center and marginal variances of a Gaussian (widths scaled by 1/alpha)
// after harmonic flow for time t.
Moments2d flowed_moments(const GaussianParams& g, const HarmonicFlow& flow,
                         double alpha, double t) {
  const double w = flow.omega();
  const double cs = std::cos(w * t);
  const double sn = std::sin(w * t);
  const double mxp = 2.0 * flow.d / w * sn;
  const double mpx = -2.0 * flow.c / w * sn;
  const double vx0 = 1.0 / (2.0 * alpha * g.a);
  const double vp0 = 1.0 / (2.0 * alpha * g.b);
  return {cs * g.e + mxp * g.f, mpx * g.e + cs * g.f,
          cs * cs * vx0 + mxp * mxp * vp0, mpx * mpx * vx0 + cs * cs * vp0};
}

}  // namespace

PhaseGrid::PhaseGrid(double x_min, double x_max, double p_min, double p_max,
                     int nx, int np)
    : x_min_(x_min), x_max_(x_max), p_min_(p_min), p_max_(p_max), nx_(nx), np_(np) {
  if (nx < kMinPoints || np < kMinPoints) {
    throw DomainError("phase grid needs at least 8 points per axis, got " +
                      std::to_string(nx) + " x " + std::to_string(np));
  }
  if (!(x_max > x_min) || !(p_max > p_min) || !std::isfinite(x_max - x_min) ||
      !std::isfinite(p_max - p_min)) {
    throw DomainError("phase grid bounds must satisfy x_max > x_min and "
                      "p_max > p_min");
  }
}

PhaseGrid PhaseGrid::with_node_span(double x_lo, double x_hi, double p_lo,
                                    double p_hi, int nx, int np) {
  if (nx < kMinPoints || np < kMinPoints) {
    throw DomainError("phase grid needs at least 8 points per axis");
  }
  const double dx = (x_hi - x_lo) / (nx - 1);
  const double dp = (p_hi - p_lo) / (np - 1);
  return PhaseGrid(x_lo - dx, x_hi + dx, p_lo - dp, p_hi + dp, nx, np);
}

InnerProductSpace PhaseGrid::space() const {
  return InnerProductSpace::uniform(size(), dx() * dp());
}

double PhaseGrid::integrate(const RealVector& values) const {
  if (values.size() != size()) {
    throw DimensionError("PhaseGrid::integrate", static_cast<std::size_t>(values.size()),
                         static_cast<std::size_t>(size()));
  }
  return values.sum() * dx() * dp();
}

PhaseDistribution::PhaseDistribution(PhaseGrid grid, RealVector values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw DimensionError("PhaseDistribution(values, grid)",
                         static_cast<std::size_t>(values_.size()),
                         static_cast<std::size_t>(grid_.size()));
  }
  if (!values_.allFinite() || (values_.array() < 0.0).any()) {
    throw DomainError("phase-space density must be finite and nonnegative");
  }
  const double m = mass();
  if (std::abs(m - 1.0) > kMassTolerance) {
    throw DomainError("phase-space density has mass " + std::to_string(m) +
                      ", expected 1 within 1e-6");
  }
  const double peak = values_.maxCoeff();
  double rim = 0.0;
  for (int i = 0; i < grid_.nx(); ++i) {
    for (int j = 0; j < grid_.np(); ++j) {
      if (grid_.on_boundary(i, j)) rim = std::max(rim, values_[grid_.index(i, j)]);
    }
  }
  if (rim >= kRimTolerance * peak) {
    throw DomainError("density does not vanish at the grid rim (rim/peak = " +
                      std::to_string(rim / peak) +
                      "); enlarge the phase-space domain");
  }
}

double GaussianParams::sigma_x() const { return 1.0 / std::sqrt(2.0 * a); }
double GaussianParams::sigma_p() const { return 1.0 / std::sqrt(2.0 * b); }

double GaussianParams::operator()(double x, double p) const {
  const double dx = x - e;
  const double dp = p - f;
  return std::sqrt(a * b) / std::numbers::pi * std::exp(-a * dx * dx - b * dp * dp);
}

SeparableHamiltonian::SeparableHamiltonian(Polynomial kinetic, Polynomial potential)
    : kinetic_(std::move(kinetic)), potential_(std::move(potential)) {}

SeparableHamiltonian SeparableHamiltonian::harmonic(double c, double d) {
  if (!(c > 0.0) || !(d > 0.0)) {
    throw DomainError("harmonic Hamiltonian needs c > 0 and d > 0, got c = " +
                      std::to_string(c) + ", d = " + std::to_string(d));
  }
  return SeparableHamiltonian(Polynomial({0.0, 0.0, d}), Polynomial({0.0, 0.0, c}));
}

std::optional<std::pair<double, double>>
SeparableHamiltonian::harmonic_coefficients() const {
  auto pure_quadratic = [](const Polynomial& poly) -> std::optional<double> {
    if (poly.degree() != 2) return std::nullopt;
    const auto& k = poly.coefficients();
    if (k[0] != 0.0 || k[1] != 0.0 || !(k[2] > 0.0)) return std::nullopt;
    return k[2];
  };
  const auto d = pure_quadratic(kinetic_);
  const auto c = pure_quadratic(potential_);
  if (!c || !d) return std::nullopt;
  return std::pair{*c, *d};
}

PhaseDistribution gaussian_state(const PhaseGrid& grid, const GaussianParams& g) {
  if (!(g.a > 0.0) || !(g.b > 0.0)) {
    throw DomainError("Gaussian widths need a > 0 and b > 0");
  }
  const double hx = kRequiredSigmas * g.sigma_x();
  const double hp = kRequiredSigmas * g.sigma_p();
  const double x_lo = grid.x(0), x_hi = grid.x(grid.nx() - 1);
  const double p_lo = grid.p(0), p_hi = grid.p(grid.np() - 1);
  if (g.e - hx < x_lo || g.e + hx > x_hi || g.f - hp < p_lo || g.f + hp > p_hi) {
    throw DomainError("Gaussian 6-sigma box x " + fmt_box(g.e - hx, g.e + hx) +
                      ", p " + fmt_box(g.f - hp, g.f + hp) +
                      " exceeds the grid nodes x " + fmt_box(x_lo, x_hi) +
                      ", p " + fmt_box(p_lo, p_hi) +
                      "; use a larger phase-space domain");
  }
  RealVector values(grid.size());
  for (int i = 0; i < grid.nx(); ++i) {
    for (int j = 0; j < grid.np(); ++j) {
      values[grid.index(i, j)] = g(grid.x(i), grid.p(j));
    }
  }
  return PhaseDistribution(grid, std::move(values));
}

HermitianOperator build_liouvillian(const SeparableHamiltonian& h,
                                    const PhaseGrid& grid, int stencil_order) {
  const auto coeffs = first_derivative_coefficients(stencil_order);
  const Polynomial dv = h.potential().derivative();
  const Polynomial dt = h.kinetic().derivative();
  const int nx = grid.nx();
  const int np = grid.np();
  const double inv_dx = 1.0 / grid.dx();
  const double inv_dp = 1.0 / grid.dp();

  // A = V'(x) D_p - T'(p) D_x is real antisymmetric; L = i A.
  Matrix l = Matrix::Zero(grid.size(), grid.size());
  for (int i = 0; i < nx; ++i) {
    const double vx = dv(grid.x(i));
    for (int j = 0; j < np; ++j) {
      const double tp = dt(grid.p(j));
      const Eigen::Index row = grid.index(i, j);
      for (std::size_t m = 1; m <= coeffs.size(); ++m) {
        const int off = static_cast<int>(m);
        const double cp = vx * coeffs[m - 1] * inv_dp;
        const double cx = tp * coeffs[m - 1] * inv_dx;
        if (j + off < np) l(row, grid.index(i, j + off)) += Complex(0.0, cp);
        if (j - off >= 0) l(row, grid.index(i, j - off)) -= Complex(0.0, cp);
        if (i + off < nx) l(row, grid.index(i + off, j)) -= Complex(0.0, cx);
        if (i - off >= 0) l(row, grid.index(i - off, j)) += Complex(0.0, cx);
      }
    }
  }
  return HermitianOperator(std::move(l), grid.space());
}

Vector power_state(const PhaseDistribution& rho, double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw DomainError("rho^alpha needs alpha > 0 (got " + std::to_string(alpha) +
                      "); nonpositive powers of a decaying density are not "
                      "square integrable");
  }
  if (alpha == 1.0) return rho.as_state();
  return rho.values().array().pow(alpha).matrix().cast<Complex>();
}

double l_moment(const Vector& rho_alpha, const HermitianOperator& liouvillian,
                int order) {
  const auto& space = liouvillian.space();
  const Vector applied = liouvillian.apply(rho_alpha);
  switch (order) {
    case 1: return space.inner_product(rho_alpha, applied).real();
    case 2: return space.squared_norm(applied);
    default:
      throw DomainError("l_moment supports order 1 or 2, got " +
                        std::to_string(order));
  }
}

double harmonic_l2_closed_form(const GaussianParams& g, double c, double d) {
  if (!(g.a > 0.0) || !(g.b > 0.0)) {
    throw DomainError("harmonic_l2_closed_form needs a > 0 and b > 0");
  }
  const double a = g.a, b = g.b, e = g.e, f = g.f;
  const double mismatch = a * d - b * c;
  const double numerator = mismatch * mismatch + 4.0 * a * a * b * d * d * f * f +
                           4.0 * a * b * b * c * c * e * e;
  return numerator / (2.0 * std::numbers::pi * std::sqrt(a * b));
}

double HarmonicFlow::omega() const { return 2.0 * std::sqrt(c * d); }

std::pair<double, double> HarmonicFlow::operator()(double x, double p,
                                                   double t) const {
  const double w = omega();
  const double cs = std::cos(w * t);
  const double sn = std::sin(w * t);
  return {cs * x + 2.0 * d / w * sn * p, cs * p - 2.0 * c / w * sn * x};
}

PhaseDistribution harmonic_evolve_exact(const GaussianParams& g, double c,
                                        double d, double t,
                                        const PhaseGrid& grid) {
  const HarmonicFlow flow{c, d};
  if (!(c > 0.0) || !(d > 0.0)) {
    throw DomainError("harmonic flow needs c > 0 and d > 0");
  }
  RealVector values(grid.size());
  for (int i = 0; i < grid.nx(); ++i) {
    for (int j = 0; j < grid.np(); ++j) {
      const auto [x0, p0] = flow(grid.x(i), grid.p(j), -t);
      values[grid.index(i, j)] = g(x0, p0);
    }
  }
  return PhaseDistribution(grid, std::move(values));
}

PhaseGrid harmonic_orbit_grid(const GaussianParams& g, double c, double d,
                              double alpha_min, int nx, int np) {
  if (!(alpha_min > 0.0)) throw DomainError("alpha_min must be positive");
  if (!(c > 0.0) || !(d > 0.0)) {
    throw DomainError("harmonic orbit needs c > 0 and d > 0");
  }
  const double w = 2.0 * std::sqrt(c * d);
  const double rx = std::hypot(g.e, 2.0 * d / w * g.f);
  const double rp = std::hypot(g.f, 2.0 * c / w * g.e);
  const double vx = 1.0 / (2.0 * alpha_min * g.a);
  const double vp = 1.0 / (2.0 * alpha_min * g.b);
  const double sx = std::sqrt(std::max(vx, (2.0 * d / w) * (2.0 * d / w) * vp));
  const double sp = std::sqrt(std::max(vp, (2.0 * c / w) * (2.0 * c / w) * vx));
  const double hx = rx + kDomainSigmas * sx;
  const double hp = rp + kDomainSigmas * sp;
  return PhaseGrid::with_node_span(-hx, hx, -hp, hp, nx, np);
}

std::vector<ScaleScanEntry> single_particle_limit_scan(
    std::span<const double> scales, const ScaleScanOptions& options) {
  const HarmonicFlow flow{options.c, options.d};
  const auto hamiltonian = SeparableHamiltonian::harmonic(options.c, options.d);
  if (!(options.t >= 0.0)) throw DomainError("scan time must be nonnegative");

  std::vector<ScaleScanEntry> out;
  out.reserve(scales.size());
  for (const double s : scales) {
    ScaleScanEntry entry;
    entry.scale = s;
    if (!(s > 0.0)) throw DomainError("scale factors must be positive");
    const GaussianParams g{s * options.base.a, s * options.base.b,
                           options.base.e, options.base.f};

    // Envelope of rho^alpha over the window [0, t].
    constexpr int kSamples = 65;
    double x_lo = 1e300, x_hi = -1e300, p_lo = 1e300, p_hi = -1e300;
    double sx_min = 1e300, sp_min = 1e300;
    for (int k = 0; k < kSamples; ++k) {
      const double tk = options.t * k / (kSamples - 1);
      const auto m = flowed_moments(g, flow, options.alpha, tk);
      const double sx = std::sqrt(m.vxx), sp = std::sqrt(m.vpp);
      x_lo = std::min(x_lo, m.cx - kDomainSigmas * sx);
      x_hi = std::max(x_hi, m.cx + kDomainSigmas * sx);
      p_lo = std::min(p_lo, m.cp - kDomainSigmas * sp);
      p_hi = std::max(p_hi, m.cp + kDomainSigmas * sp);
      sx_min = std::min(sx_min, sx);
      sp_min = std::min(sp_min, sp);
    }

    PhaseGrid grid = [&] {
      if (options.fixed_grid) return *options.fixed_grid;
      auto points = [&](double span, double sigma) {
        const double cells = span / (sigma / options.cells_per_sigma);
        return std::clamp(static_cast<int>(std::ceil(cells)) + 1, kMinPoints,
                          options.max_points);
      };
      return PhaseGrid::with_node_span(x_lo, x_hi, p_lo, p_hi,
                                       points(x_hi - x_lo, sx_min),
                                       points(p_hi - p_lo, sp_min));
    }();
    entry.nx = grid.nx();
    entry.np = grid.np();

    if (sx_min < 3.0 * grid.dx() || sp_min < 3.0 * grid.dp()) {
      entry.refused = true;
      entry.reason = "under-resolved: width " + std::to_string(std::min(sx_min, sp_min)) +
                     " spans fewer than 3 grid cells";
      entry.bound = {BoundStatus::no_bound, std::nan(""), entry.reason};
      out.push_back(std::move(entry));
      continue;
    }

    try {
      const auto rho = gaussian_state(grid, g);
      const Vector state = power_state(rho, options.alpha);
      const auto liouvillian = build_liouvillian(hamiltonian, grid, options.stencil_order);
      const auto decomp = spectral_decompose(liouvillian, state);
      const double times[] = {options.t};
      const auto curve = overlap_curve(decomp, times, EvolutionMode::unitary);
      BoundInputs in;
      in.norm0 = curve.norm0;
      in.overlap_t = curve.overlaps.front();
      in.moment2 = decomp.moment(2);
      in.stationary_tolerance = options.stationary_tolerance;
      entry.bound = csl_ml_type(in);
    } catch (const DomainError& err) {
      entry.refused = true;
      entry.reason = err.what();
      entry.bound = {BoundStatus::no_bound, std::nan(""), entry.reason};
    }
    out.push_back(std::move(entry));
  }
  return out;
}

}  // namespace speedlimit
