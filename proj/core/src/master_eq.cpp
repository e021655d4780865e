#include "speedlimit/master_eq.hpp"

#include <cmath>
#include <random>
#include <string>

#include <spdlog/spdlog.h>

namespace speedlimit {
namespace {

constexpr double kConservationTolerance = 1e-12;
constexpr double kProbabilityTolerance = 1e-12;
constexpr double kNullSpaceTolerance = 1e-10;

RealVector null_vector(const RealMatrix& w) {
  Eigen::JacobiSVD<RealMatrix> svd(w, Eigen::ComputeFullV);
  const RealVector& sv = svd.singularValues();
  const double scale = std::max(sv[0], 1.0);
  Eigen::Index nullity = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv[k] <= kNullSpaceTolerance * scale) ++nullity;
  }
  if (nullity != 1) {
    throw DomainError("rate matrix has a " + std::to_string(nullity) +
                      "-dimensional null space; supply pi explicitly or use an "
                      "ergodic chain");
  }
  RealVector v = svd.matrixV().col(sv.size() - 1);
  if (v.sum() < 0.0) v = -v;
  return v / v.sum();
}

}  // namespace

TransitionMatrix::TransitionMatrix(RealMatrix w, std::optional<RealVector> pi)
    : w_(std::move(w)) {
  const Eigen::Index n = w_.rows();
  if (n < 1 || w_.cols() != n) {
    throw DimensionError("rate matrix", static_cast<std::size_t>(w_.rows()),
                         static_cast<std::size_t>(w_.cols()));
  }
  if (!w_.allFinite()) throw DomainError("rate matrix has non-finite entries");
  const double scale = std::max(w_.cwiseAbs().maxCoeff(), 1.0);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double sum = w_.col(j).sum();
    if (std::abs(sum) > kConservationTolerance * scale) {
      throw DomainError("rate matrix column " + std::to_string(j) +
                        " sums to " + std::to_string(sum) + ", not 0");
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i != j && w_(i, j) > 0.0) {
        throw DomainError("rate matrix entry (" + std::to_string(i) + ", " +
                          std::to_string(j) + ") is positive off the diagonal");
      }
    }
  }
  pi_ = pi ? std::move(*pi) : null_vector(w_);
  if (pi_.size() != n) {
    throw DimensionError("stationary distribution", static_cast<std::size_t>(pi_.size()),
                         static_cast<std::size_t>(n));
  }
  if (!(pi_.array() > 0.0).all() || std::abs(pi_.sum() - 1.0) > kProbabilityTolerance) {
    throw DomainError("stationary distribution must be positive and sum to 1");
  }
}

DetailedBalanceReport validate_detailed_balance(const RealMatrix& w,
                                                const RealVector& pi) {
  if (w.rows() != w.cols() || w.rows() != pi.size()) {
    throw DimensionError("validate_detailed_balance",
                         static_cast<std::size_t>(w.rows()),
                         static_cast<std::size_t>(pi.size()));
  }
  DetailedBalanceReport report;
  for (Eigen::Index i = 0; i < w.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < w.cols(); ++j) {
      const double r = std::abs(w(i, j) * pi[j] - w(j, i) * pi[i]);
      if (r > report.max_residual) report = {r, i, j, true};
    }
  }
  report.passed = report.max_residual < kDetailedBalanceTolerance;
  return report;
}

DetailedBalanceError::DetailedBalanceError(const DetailedBalanceReport& report)
    : DomainError("detailed balance fails: residual " +
                  std::to_string(report.max_residual) + " at pair (" +
                  std::to_string(report.i) + ", " + std::to_string(report.j) +
                  "); no speed limit follows for such chains"),
      report_(report) {}

HermitianOperator symmetrize(const TransitionMatrix& w) {
  const auto report = validate_detailed_balance(w.rates(), w.stationary());
  if (!report.passed) throw DetailedBalanceError(report);
  const RealVector root = w.stationary().cwiseSqrt();
  RealMatrix s = root.cwiseInverse().asDiagonal() * w.rates() * root.asDiagonal();
  // Exact symmetry; the defect is bounded by the detailed-balance residual.
  s = 0.5 * (s + s.transpose()).eval();
  return HermitianOperator(s.cast<Complex>(), InnerProductSpace::uniform(s.rows()));
}

MasterEvolution evolve_master(const TransitionMatrix& w, const RealVector& p0,
                              std::span<const double> times) {
  const Eigen::Index n = w.states();
  if (p0.size() != n) {
    throw DimensionError("evolve_master initial state",
                         static_cast<std::size_t>(p0.size()),
                         static_cast<std::size_t>(n));
  }
  if ((p0.array() < 0.0).any() || std::abs(p0.sum() - 1.0) > kProbabilityTolerance) {
    throw DomainError("initial probability vector must be nonnegative with unit sum");
  }
  const auto s = symmetrize(w);
  const RealVector root = w.stationary().cwiseSqrt();
  const Vector q0 = p0.cwiseQuotient(root).cast<Complex>();
  const auto decomp = spectral_decompose(s, q0);

  MasterEvolution out;
  out.times.assign(times.begin(), times.end());
  const auto curve = overlap_curve(decomp, times, EvolutionMode::decaying);
  out.symmetric_overlaps = curve.overlaps;
  out.symmetric_norm0 = curve.norm0;
  out.mean_w = decomp.moment(1);
  out.mean_w2 = decomp.moment(2);

  for (double t : times) {
    RealVector p =
        root.cwiseProduct(evolve_spectral(decomp, t, EvolutionMode::decaying).real());
    for (Eigen::Index k = 0; k < n; ++k) {
      if (p[k] >= 0.0) continue;
      if (p[k] < -kProbabilityTolerance) {
        throw NumericalError("master evolution produced probability " +
                             std::to_string(p[k]) + " at state " +
                             std::to_string(k) + ", t = " + std::to_string(t));
      }
      out.max_clipped = std::max(out.max_clipped, -p[k]);
      p[k] = 0.0;
    }
    out.overlaps.push_back(p0.dot(p));
    out.trajectory.push_back(std::move(p));
  }
  if (out.max_clipped > 0.0) {
    spdlog::debug("evolve_master clipped negatives down to {:.3e}", -out.max_clipped);
  }
  return out;
}

TransitionMatrix random_detailed_balance_chain(int states, std::uint64_t seed) {
  if (states < 2) throw DomainError("a chain needs at least 2 states");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> weight(0.2, 1.0);
  std::uniform_real_distribution<double> conductance(0.1, 2.0);
  RealVector pi(states);
  for (int i = 0; i < states; ++i) pi[i] = weight(rng);
  pi /= pi.sum();
  RealMatrix w = RealMatrix::Zero(states, states);
  for (int i = 0; i < states; ++i) {
    for (int j = i + 1; j < states; ++j) {
      const double k = conductance(rng);
      w(i, j) = -k * pi[i];
      w(j, i) = -k * pi[j];
    }
  }
  for (int j = 0; j < states; ++j) w(j, j) = -w.col(j).sum();
  return TransitionMatrix(std::move(w), std::move(pi));
}

}  // namespace speedlimit
