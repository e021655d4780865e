#include "speedlimit/quantum.hpp"

#include <cmath>
#include <random>

#include "speedlimit/error.hpp"

namespace speedlimit {
namespace {

constexpr double kStateNormTolerance = 1e-10;

std::pair<SpectralDecomposition, double> shifted_decomposition(
    const Matrix& h, const Vector& state) {
  if (h.rows() != h.cols() || h.rows() != state.size()) {
    throw DimensionError("quantum system", static_cast<std::size_t>(h.rows()),
                         static_cast<std::size_t>(state.size()));
  }
  HermitianOperator op(h, InnerProductSpace::uniform(h.rows()));
  auto basis = eigensystem(op);
  const double ground = basis->values[0];
  auto shifted = std::make_shared<Eigensystem>(*basis);
  shifted->values.array() -= ground;
  return {expand(std::move(shifted), state), ground};
}

}  // namespace

QuantumSystem::QuantumSystem(Matrix hamiltonian, Vector state, double hbar)
    : QuantumSystem(shifted_decomposition(hamiltonian, state), hbar) {
  if (std::abs(state.squaredNorm() - 1.0) > kStateNormTolerance) {
    throw DomainError("quantum state must be normalised");
  }
}

QuantumSystem::QuantumSystem(std::pair<SpectralDecomposition, double> shifted,
                             double hbar)
    : decomp_(std::move(shifted.first)), ground_(shifted.second), hbar_(hbar) {
  if (!(hbar > 0.0) || !std::isfinite(hbar)) {
    throw DomainError("hbar must be a positive finite number");
  }
}

double QuantumSystem::energy_spread() const {
  const double mean = mean_energy();
  return std::sqrt(std::max(0.0, decomp_.moment(2) - mean * mean));
}

Complex QuantumSystem::overlap(double t) const {
  Complex sum = 0.0;
  const auto& e = energies();
  const auto& c = decomp_.coefficients();
  for (Eigen::Index n = 0; n < e.size(); ++n) {
    sum += std::norm(c[n]) * std::polar(1.0, -e[n] * t / hbar_);
  }
  return sum;
}

BoundInputs QuantumSystem::bound_inputs(double t) const {
  BoundInputs in;
  in.norm0 = decomp_.squared_norm();
  in.overlap_t = overlap(t).real();
  in.moment1 = decomp_.moment(1);
  in.moment2 = decomp_.moment(2);
  in.hbar = hbar_;
  return in;
}

std::optional<double> QuantumSystem::orthogonalization_time(double t_max,
                                                            int samples,
                                                            double tolerance) const {
  if (!(t_max > 0.0) || samples < 3) {
    throw DomainError("orthogonalization search needs t_max > 0 and >= 3 samples");
  }
  auto mag = [this](double t) { return std::abs(overlap(t)); };
  const double step = t_max / (samples - 1);
  double prev = mag(0.0);
  double cur = mag(step);
  for (int k = 1; k + 1 < samples; ++k) {
    const double next = mag((k + 1) * step);
    if (cur <= prev && cur <= next) {
      double lo = (k - 1) * step;
      double hi = (k + 1) * step;
      const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
      double a = hi - phi * (hi - lo);
      double b = lo + phi * (hi - lo);
      double fa = mag(a);
      double fb = mag(b);
      for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
        if (fa <= fb) {
          hi = b;
          b = a;
          fb = fa;
          a = hi - phi * (hi - lo);
          fa = mag(a);
        } else {
          lo = a;
          a = b;
          fa = fb;
          b = lo + phi * (hi - lo);
          fb = mag(b);
        }
      }
      const double t_star = fa <= fb ? a : b;
      if (mag(t_star) < tolerance) return t_star;
    }
    prev = cur;
    cur = next;
  }
  return std::nullopt;
}

std::pair<Matrix, Vector> random_quantum_system(int levels, std::uint64_t seed) {
  if (levels < 2) throw DomainError("a quantum system needs at least 2 levels");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Matrix a(levels, levels);
  for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = {normal(rng), normal(rng)};
  Matrix h = 0.5 * (a + a.adjoint());
  Vector psi(levels);
  for (Eigen::Index i = 0; i < psi.size(); ++i) psi[i] = {normal(rng), normal(rng)};
  psi.normalize();
  return {h, psi};
}

}  // namespace speedlimit
