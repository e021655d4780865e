#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "speedlimit/error.hpp"
#include "speedlimit/hilbert.hpp"

namespace speedlimit {

/// Rate matrix of dP/dt = -W P with its stationary distribution.
///
/// Column sums vanish (to 1e-12 relative to the largest rate), off-diagonal
/// entries are <= 0 and pi is strictly positive with unit sum. When pi is
/// omitted it is taken from the null space of W, which must be
/// one-dimensional.
class TransitionMatrix {
 public:
  explicit TransitionMatrix(RealMatrix w, std::optional<RealVector> pi = std::nullopt);

  const RealMatrix& rates() const { return w_; }
  const RealVector& stationary() const { return pi_; }
  Eigen::Index states() const { return w_.rows(); }

 private:
  RealMatrix w_;
  RealVector pi_;
};

struct DetailedBalanceReport {
  double max_residual = 0.0;  // max |W_ij pi_j - W_ji pi_i|
  Eigen::Index i = 0;
  Eigen::Index j = 0;
  bool passed = true;
};

inline constexpr double kDetailedBalanceTolerance = 1e-10;

DetailedBalanceReport validate_detailed_balance(const RealMatrix& w,
                                                const RealVector& pi);

/// Thrown by symmetrize when detailed balance fails.
class DetailedBalanceError : public DomainError {
 public:
  explicit DetailedBalanceError(const DetailedBalanceReport& report);
  const DetailedBalanceReport& report() const { return report_; }

 private:
  DetailedBalanceReport report_;
};

/// S_ij = W_ij sqrt(pi_j / pi_i), similar to W and symmetric under detailed
/// balance.
HermitianOperator symmetrize(const TransitionMatrix& w);

struct MasterEvolution {
  std::vector<double> times;
  std::vector<RealVector> trajectory;
  /// Plain <P0|P(t)>.
  std::vector<double> overlaps;
  /// Everything below lives in the symmetrised frame q = pi^{-1/2} P.
  std::vector<double> symmetric_overlaps;
  double symmetric_norm0 = 0.0;
  double mean_w = 0.0;      // <q|S|q>
  double mean_w2 = 0.0;     // <q|S^2|q>
  double max_clipped = 0.0; // largest negative probability clipped to zero
};

/// P(t) = D^{1/2} exp(-S t) D^{-1/2} P0 with D = diag(pi). Negative
/// probabilities down to -1e-12 are clipped; anything below is an error.
MasterEvolution evolve_master(const TransitionMatrix& w, const RealVector& p0,
                              std::span<const double> times);

/// Fully connected chain with random pi and random symmetric conductances
/// K_ij, rates W_ij = -K_ij pi_i. Satisfies detailed balance by construction.
TransitionMatrix random_detailed_balance_chain(int states, std::uint64_t seed);

}  // namespace speedlimit
