#include "speedlimit/fokker_planck.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "speedlimit/error.hpp"
#include "speedlimit/stencil.hpp"

namespace speedlimit {
namespace {

constexpr double kRimTolerance = 1e-10;
constexpr double kDensityCutoff = 1e-14;
constexpr double kSpectrumTolerance = 1e-10;
const double kMaxExponent = std::log(std::numeric_limits<double>::max()) - 1.0;

void require_size(const char* context, Eigen::Index got, int expected) {
  if (got != expected) {
    throw DimensionError(context, static_cast<std::size_t>(got),
                         static_cast<std::size_t>(expected));
  }
}

}  // namespace

DriftPotential::DriftPotential(Polynomial w, double x_min, double x_max, int points)
    : w_(std::move(w)), x_min_(x_min), x_max_(x_max), points_(points) {
  if (points_ < 8) throw DomainError("drift grid needs at least 8 points");
  if (!(x_max_ > x_min_)) throw DomainError("drift grid needs x_max > x_min");
  const int deg = w_.degree();
  if (deg < 2 || deg % 2 != 0 || !(w_.leading_coefficient() > 0.0)) {
    throw DomainError("drift potential must be an even-degree polynomial with "
                      "positive leading coefficient (confining)");
  }
  // exp(-2W) relative to its peak, in log space.
  const RealVector v = values();
  const double w_min = v.minCoeff();
  const double rim = std::max(v[0], v[points_ - 1]);
  if (!(2.0 * (rim - w_min) > -std::log(kRimTolerance))) {
    throw DomainError("exp(-2W) does not vanish at the grid rim; enlarge the "
                      "spatial domain");
  }
}

RealVector DriftPotential::nodes() const {
  RealVector out(points_);
  for (int i = 0; i < points_; ++i) out[i] = x(i);
  return out;
}

RealVector DriftPotential::values() const {
  RealVector out(points_);
  for (int i = 0; i < points_; ++i) out[i] = w_(x(i));
  return out;
}

InnerProductSpace DriftPotential::space() const {
  return InnerProductSpace::uniform(points_, h());
}

RealVector DriftPotential::stationary_density() const {
  const RealVector v = values();
  const double w_min = v.minCoeff();
  RealVector p = (-2.0 * (v.array() - w_min)).exp().matrix();
  return p / (p.sum() * h());
}

HermitianOperator build_hf(const DriftPotential& w, int stencil_order) {
  const Polynomial dw = w.polynomial().derivative();
  const Polynomial d2w = dw.derivative();
  RealMatrix hf = -second_derivative_matrix(w.points(), w.h(), stencil_order);
  for (int i = 0; i < w.points(); ++i) {
    const double x = w.x(i);
    const double slope = dw(x);
    hf(i, i) += slope * slope - d2w(x);
  }
  return HermitianOperator(hf.cast<Complex>(), w.space());
}

Vector fp_to_schrodinger(const RealVector& density, const DriftPotential& w) {
  require_size("fp_to_schrodinger", density.size(), w.points());
  if ((density.array() < 0.0).any() || !density.allFinite()) {
    throw DomainError("probability density must be finite and nonnegative");
  }
  Vector psi = Vector::Zero(density.size());
  const double peak = density.maxCoeff();
  if (peak == 0.0) return psi;
  const double cutoff = kDensityCutoff * peak;
  std::string offending;
  for (int i = 0; i < w.points(); ++i) {
    if (density[i] <= cutoff) continue;
    const double exponent = w.polynomial()(w.x(i)) + std::log(density[i]);
    if (exponent > kMaxExponent) {
      offending += (offending.empty() ? "" : ", ") + std::to_string(i);
      continue;
    }
    psi[i] = std::exp(w.polynomial()(w.x(i))) * density[i];
  }
  if (!offending.empty()) {
    throw NumericalError("exp(W) P overflows at nodes " + offending);
  }
  return psi;
}

RealVector schrodinger_to_fp(const Vector& psi, const DriftPotential& w) {
  require_size("schrodinger_to_fp", psi.size(), w.points());
  RealVector out(psi.size());
  for (int i = 0; i < w.points(); ++i) {
    out[i] = std::exp(-w.polynomial()(w.x(i))) * psi[i].real();
  }
  return out;
}

SpectralDecomposition decompose_hf(const HermitianOperator& hf, const Vector& psi0) {
  auto basis = eigensystem(hf);
  const double floor = -kSpectrumTolerance * hf.norm();
  if (basis->values[0] < floor) {
    throw NumericalError("H_F has a negative eigenvalue " +
                         std::to_string(basis->values[0]) +
                         " beyond the round-off band");
  }
  auto clamped = std::make_shared<Eigensystem>(*basis);
  for (Eigen::Index k = 0; k < clamped->values.size(); ++k) {
    if (clamped->values[k] < 0.0) clamped->values[k] = 0.0;
  }
  return expand(std::move(clamped), psi0);
}

FpOverlapInputs fp_overlap_inputs(const SpectralDecomposition& decomp, double t) {
  if (t < 0.0) throw DomainError("fp_overlap_inputs needs t >= 0");
  const double times[] = {t};
  const auto curve = overlap_curve(decomp, times, EvolutionMode::decaying);
  return {curve.norm0, curve.overlaps.front(), decomp.moment(1), decomp.moment(2)};
}

FpOverlapInputs fp_overlap_inputs(const Vector& psi0, const HermitianOperator& hf,
                                  double t) {
  if (t < 0.0) throw DomainError("fp_overlap_inputs needs t >= 0");
  return fp_overlap_inputs(decompose_hf(hf, psi0), t);
}

}  // namespace speedlimit
