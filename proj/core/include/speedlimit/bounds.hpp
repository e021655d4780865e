#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace speedlimit {

/// Outcome of a speed-limit formula.
///
/// `ok` carries a finite tau. `stationary` is the degenerate zero-over-zero
/// case (no motion) and reports tau = 0. `no_bound` means the formula does
/// not constrain anything (zero energy spread, nonpositive mean energy, ...)
/// and tau is NaN.
enum class BoundStatus { ok, stationary, no_bound };

const char* to_string(BoundStatus status);

struct BoundValue {
  BoundStatus status = BoundStatus::ok;
  double tau = 0.0;
  std::string note;

  bool constrains() const { return status != BoundStatus::no_bound; }
};

/// Spectral data a bound is evaluated from. For classical states moment1 is
/// <rho|L|rho> (zero for real rho); for decaying dynamics it is <psi|H|psi>;
/// for quantum states it is the mean energy above the ground state. moment2
/// is the matching second moment. None of them are normalised by norm0.
struct BoundInputs {
  double norm0 = 0.0;
  double overlap_t = 0.0;
  double moment1 = 0.0;
  double moment2 = 0.0;
  double hbar = 1.0;
  /// Numerator and moment2 below this (relative to norm0) count as a
  /// stationary state.
  double stationary_tolerance = 1e-12;
};

// Quantum reference bounds.
BoundValue qsl_mt(double delta_e, double hbar = 1.0);
BoundValue qsl_ml(double mean_e, double hbar = 1.0);
BoundValue qsl_combined(double delta_e, double mean_e, double hbar = 1.0);

// Classical Liouville bounds for the rho^alpha family.
BoundValue csl_ml_type(const BoundInputs& in);
BoundValue csl_mt_type(const BoundInputs& in);

// Imaginary-time (Fokker-Planck) bounds.
BoundValue fp_ml_type(const BoundInputs& in);
BoundValue fp_mt_type(const BoundInputs& in);
BoundValue fp_combined(const BoundInputs& in);

/// Master equation bound; same contract as fp_combined with moments of the
/// symmetrised rate matrix.
BoundValue master_bound(const BoundInputs& in);

/// Ratio below which a classical overlap ratio is clamped into [-1, 1]
/// silently; larger excursions are still clamped but logged.
inline constexpr double kArccosClampTolerance = 1e-9;
inline constexpr double kValiditySlack = 1e-9;

enum class BoundFamily { classical, fokker_planck, master, quantum };

const char* to_string(BoundFamily family);

/// Inputs for one audited curve: a family, a label (e.g. "alpha=0.5") and
/// one BoundInputs per sampled time.
struct AuditSeries {
  BoundFamily family = BoundFamily::classical;
  std::string label;
  std::vector<double> times;
  std::vector<BoundInputs> inputs;
  /// Quantum only: first time the state became orthogonal to its start.
  /// Quantum bounds are audited at the samples with t >= this value, so the
  /// series should contain a sample at the orthogonalization time itself.
  std::optional<double> orthogonalization_time;
};

struct BoundEntry {
  std::string name;
  double t = 0.0;
  BoundValue value;
  double slack = 0.0;  // t - tau; NaN when the bound does not constrain
  bool valid = true;
  double overlap = 0.0;
  double norm0 = 0.0;
};

struct TightnessEntry {
  std::string label;
  double t = 0.0;
  /// tau_MT / tau_ML; NaN when either is zero or unavailable.
  double mt_over_ml = 0.0;
  /// Classical only: tau_MT >= tau_ML held at this sample.
  std::optional<bool> ordering_holds;
};

struct BoundReport {
  std::string scenario_id;
  std::vector<BoundEntry> entries;
  std::vector<TightnessEntry> tightness;

  std::size_t violation_count() const;
  std::size_t ordering_violation_count() const;
  bool all_valid() const { return violation_count() == 0; }
};

/// Evaluates every applicable bound of each series at each sample, records
/// slack and validity, and the MT/ML tightness ratio. Never throws for
/// physics reasons: data errors surface as invalid entries.
BoundReport audit(std::string scenario_id, std::span<const AuditSeries> series);

}  // namespace speedlimit
