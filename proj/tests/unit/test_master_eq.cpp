#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "speedlimit/error.hpp"
#include "speedlimit/master_eq.hpp"

using namespace speedlimit;

namespace {

RealMatrix two_state() {
  RealMatrix w(2, 2);
  w << 1.0, -1.0, -1.0, 1.0;
  return w;
}

// Uniform pi, but every state prefers its clockwise neighbour.
RealMatrix biased_ring() {
  RealMatrix w(3, 3);
  w << 3.0, -1.0, -2.0,
      -2.0, 3.0, -1.0,
      -1.0, -2.0, 3.0;
  return w / 3.0;
}

}  // namespace

TEST(TransitionMatrix, ValidatesRates) {
  RealMatrix bad_sum = two_state();
  bad_sum(0, 0) = 2.0;
  EXPECT_THROW(TransitionMatrix{bad_sum}, DomainError);
  RealMatrix positive_off(2, 2);
  positive_off << -1.0, 1.0, 1.0, -1.0;
  EXPECT_THROW(TransitionMatrix{positive_off}, DomainError);
  EXPECT_THROW(TransitionMatrix(RealMatrix::Zero(2, 3)), DimensionError);
  RealVector pi(2);
  pi << 0.7, 0.7;
  EXPECT_THROW(TransitionMatrix(two_state(), pi), DomainError);
  pi << 1.0, 0.0;
  EXPECT_THROW(TransitionMatrix(two_state(), pi), DomainError);
}

TEST(TransitionMatrix, StationaryFromNullSpace) {
  RealMatrix w(2, 2);
  w << 2.0, -1.0, -2.0, 1.0;  // pi = (1/3, 2/3)
  const TransitionMatrix tm(w);
  EXPECT_NEAR(tm.stationary()[0], 1.0 / 3.0, 1e-14);
  EXPECT_NEAR(tm.stationary()[1], 2.0 / 3.0, 1e-14);
}

TEST(TransitionMatrix, ReducibleChainNeedsExplicitPi) {
  RealMatrix w = RealMatrix::Zero(4, 4);
  w.topLeftCorner(2, 2) = two_state();
  w.bottomRightCorner(2, 2) = two_state();
  EXPECT_THROW(TransitionMatrix{w}, DomainError);
  EXPECT_NO_THROW(TransitionMatrix(w, RealVector::Constant(4, 0.25)));
}

TEST(DetailedBalance, TwoStatePassesBiasedRingFails) {
  EXPECT_TRUE(validate_detailed_balance(two_state(), RealVector::Constant(2, 0.5)).passed);
  const auto r = validate_detailed_balance(biased_ring(), RealVector::Constant(3, 1.0 / 3.0));
  EXPECT_FALSE(r.passed);
  EXPECT_NEAR(r.max_residual, 1.0 / 9.0, 1e-15);
  EXPECT_THROW(validate_detailed_balance(two_state(), RealVector::Constant(3, 0.3)),
               DimensionError);
}

TEST(Symmetrize, SymmetricRatesAreUnchanged) {
  const auto s = symmetrize(TransitionMatrix(two_state()));
  EXPECT_LT((s.matrix().real() - two_state()).cwiseAbs().maxCoeff(), 1e-15);
  const auto sys = eigensystem(s);
  EXPECT_NEAR(sys->values[0], 0.0, 1e-14);
  EXPECT_NEAR(sys->values[1], 2.0, 1e-14);
}

TEST(Symmetrize, SimilarToRateMatrix) {
  oracle::Gen gen(9);
  const auto [w, pi] = gen.detailed_balance_chain(5);
  const auto s = symmetrize(TransitionMatrix(w, pi));
  RealVector ours = eigensystem(s)->values;
  Eigen::EigenSolver<RealMatrix> ref(w);
  RealVector theirs = ref.eigenvalues().real();
  std::sort(theirs.data(), theirs.data() + theirs.size());
  EXPECT_LT(ref.eigenvalues().imag().cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LT((ours - theirs).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Symmetrize, BiasedRingThrowsWithReport) {
  try {
    symmetrize(TransitionMatrix(biased_ring(), RealVector::Constant(3, 1.0 / 3.0)));
    FAIL() << "expected DetailedBalanceError";
  } catch (const DetailedBalanceError& e) {
    EXPECT_FALSE(e.report().passed);
    EXPECT_GT(e.report().max_residual, kDetailedBalanceTolerance);
  }
}

TEST(Evolve, StationaryStartStaysPut) {
  oracle::Gen gen(4);
  const auto [w, pi] = gen.detailed_balance_chain(4);
  const double times[] = {0.0, 0.5, 3.0};
  const auto ev = evolve_master(TransitionMatrix(w, pi), pi, times);
  for (const auto& p : ev.trajectory) EXPECT_LT((p - pi).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT(ev.mean_w, 1e-12);
}

TEST(Evolve, TwoStateClosedForm) {
  RealVector p0(2);
  p0 << 1.0, 0.0;
  const double times[] = {0.0, 0.25, 1.0, 5.0};
  const auto ev = evolve_master(TransitionMatrix(two_state()), p0, times);
  for (std::size_t k = 0; k < std::size(times); ++k) {
    EXPECT_LT((ev.trajectory[k] - oracle::two_state_trajectory(times[k])).cwiseAbs().maxCoeff(),
              1e-12);
    EXPECT_NEAR(ev.overlaps[k], oracle::two_state_overlap(times[k]), 1e-12);
  }
  // uniform pi: symmetric frame is the plain frame scaled by 1 / pi
  EXPECT_NEAR(ev.symmetric_norm0, 2.0, 1e-14);
  EXPECT_NEAR(ev.mean_w, 2.0, 1e-14);
  EXPECT_NEAR(ev.mean_w2, 4.0, 1e-13);
}

TEST(Evolve, ConservesProbabilityAndDecaysMonotonically) {
  oracle::Gen gen(21);
  const auto [w, pi] = gen.detailed_balance_chain(6);
  const RealVector p0 = gen.probability(6);
  std::vector<double> times;
  for (int k = 0; k <= 40; ++k) times.push_back(0.1 * k);
  const auto ev = evolve_master(TransitionMatrix(w, pi), p0, times);
  for (std::size_t k = 0; k < times.size(); ++k) {
    EXPECT_NEAR(ev.trajectory[k].sum(), 1.0, 1e-12);
    EXPECT_GE(ev.trajectory[k].minCoeff(), 0.0);
    if (k > 0) {
      EXPECT_LE(ev.symmetric_overlaps[k], ev.symmetric_overlaps[k - 1] + 1e-14);
    }
  }
  const double far[] = {200.0};
  const auto late = evolve_master(TransitionMatrix(w, pi), p0, far);
  EXPECT_LT((late.trajectory[0] - pi).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Evolve, RejectsBadInitialState) {
  const TransitionMatrix tm(two_state());
  const double times[] = {1.0};
  RealVector p(2);
  p << 0.7, 0.7;
  EXPECT_THROW(evolve_master(tm, p, times), DomainError);
  EXPECT_THROW(evolve_master(tm, RealVector::Constant(3, 1.0 / 3.0), times), DimensionError);
}

TEST(RandomChain, SatisfiesDetailedBalanceAndIsReproducible) {
  for (int n = 2; n <= 8; ++n) {
    const auto a = random_detailed_balance_chain(n, 77);
    const auto b = random_detailed_balance_chain(n, 77);
    EXPECT_TRUE(validate_detailed_balance(a.rates(), a.stationary()).passed);
    EXPECT_EQ(a.rates(), b.rates());
  }
  EXPECT_THROW(random_detailed_balance_chain(1, 0), DomainError);
}
