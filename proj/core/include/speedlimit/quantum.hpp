#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "speedlimit/bounds.hpp"
#include "speedlimit/hilbert.hpp"

namespace speedlimit {

/// Pure state |phi> of a finite-dimensional Hamiltonian. Energies are
/// measured from the ground level, so the mean energy is nonnegative.
class QuantumSystem {
 public:
  QuantumSystem(Matrix hamiltonian, Vector state, double hbar = 1.0);

  const SpectralDecomposition& decomposition() const { return decomp_; }
  double hbar() const { return hbar_; }
  double ground_energy() const { return ground_; }

  /// Shifted energies E_n - E_0.
  const RealVector& energies() const { return decomp_.eigenvalues(); }
  double mean_energy() const { return decomp_.moment(1); }
  double energy_spread() const;

  /// <phi|phi(t)> = sum_n |c_n|^2 exp(-i E_n t / hbar).
  Complex overlap(double t) const;

  /// norm0 = 1, overlap_t = Re <phi|phi(t)>, moments of the shifted H.
  BoundInputs bound_inputs(double t) const;

  /// Smallest t in (0, t_max] where |<phi|phi(t)>| vanishes (below
  /// `tolerance`), located on `samples` scan points and refined by
  /// golden-section search on |overlap|.
  std::optional<double> orthogonalization_time(double t_max, int samples = 4096,
                                               double tolerance = 1e-8) const;

 private:
  QuantumSystem(std::pair<SpectralDecomposition, double> shifted, double hbar);

  SpectralDecomposition decomp_;
  double ground_ = 0.0;
  double hbar_ = 1.0;
};

/// Random n x n Hermitian matrix and unit state, reproducible from a seed.
std::pair<Matrix, Vector> random_quantum_system(int levels, std::uint64_t seed);

}  // namespace speedlimit
