#include "speedlimit/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <spdlog/spdlog.h>

#include "speedlimit/error.hpp"

namespace speedlimit {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

BoundValue ok(double tau) { return {BoundStatus::ok, tau, {}}; }

BoundValue stationary() {
  return {BoundStatus::stationary, 0.0, "stationary state: no motion"};
}

BoundValue no_bound(std::string note) {
  return {BoundStatus::no_bound, kNaN, std::move(note)};
}

void require_positive_norm(const BoundInputs& in) {
  if (!(in.norm0 > 0.0) || !std::isfinite(in.norm0)) {
    throw DataError("norm0 must be positive and finite, got " +
                    std::to_string(in.norm0));
  }
  if (!std::isfinite(in.overlap_t) || !std::isfinite(in.moment1) ||
      !std::isfinite(in.moment2)) {
    throw DataError("bound inputs must be finite");
  }
  if (in.moment2 < 0.0) {
    throw DataError("second moment must be nonnegative, got " +
                    std::to_string(in.moment2));
  }
}

// norm0 - overlap_t, validated against the "overlap cannot exceed norm" rule.
double overlap_deficit(const BoundInputs& in) {
  const double deficit = in.norm0 - in.overlap_t;
  if (deficit < -1e-9 * std::max(1.0, in.norm0)) {
    throw DataError("overlap " + std::to_string(in.overlap_t) +
                    " exceeds norm " + std::to_string(in.norm0));
  }
  return std::max(deficit, 0.0);
}

struct ClassicalTerms {
  bool stationary = false;
  double relative_deficit = 0.0;  // 1 - overlap/norm0, clamped into [0, 2]
  double time_scale = 0.0;        // sqrt(norm0 / moment2)
  std::string note;
};

ClassicalTerms classical_terms(const BoundInputs& in) {
  require_positive_norm(in);
  const double deficit = overlap_deficit(in);
  const double tol = in.stationary_tolerance * in.norm0;
  ClassicalTerms terms;
  if (in.moment2 <= tol && deficit <= tol) {
    terms.stationary = true;
    return terms;
  }
  if (in.moment2 == 0.0) {
    throw DataError("overlap decayed although the second moment vanishes");
  }
  double d = deficit / in.norm0;
  if (d > 2.0) {
    const double excursion = d - 2.0;
    if (excursion > kArccosClampTolerance) {
      spdlog::warn("overlap ratio {} clamped to -1 (excursion {:.3e})",
                   1.0 - d, excursion);
    }
    terms.note = "overlap ratio clamped by " + std::to_string(excursion);
    d = 2.0;
  }
  terms.relative_deficit = d;
  terms.time_scale = std::sqrt(in.norm0 / in.moment2);
  return terms;
}

struct DecayTerms {
  bool stationary = false;
  double deficit = 0.0;
};

DecayTerms decay_terms(const BoundInputs& in) {
  require_positive_norm(in);
  if (!(in.overlap_t > 0.0)) {
    throw DataError("decaying overlap must stay positive, got " +
                    std::to_string(in.overlap_t));
  }
  return {false, overlap_deficit(in)};
}

BoundValue decaying_ml(const BoundInputs& in) {
  const auto terms = decay_terms(in);
  const double tol = in.stationary_tolerance * in.norm0;
  if (in.moment1 <= tol && terms.deficit <= tol) return stationary();
  if (!(in.moment1 > 0.0)) {
    throw DataError("overlap decayed although the first moment vanishes");
  }
  // log1p keeps digits near the start; the direct ratio survives deep decay
  // where deficit / norm0 rounds to 1.
  const double fraction = terms.deficit / in.norm0;
  const double log_ratio =
      fraction < 0.5 ? -std::log1p(-fraction) : std::log(in.norm0 / in.overlap_t);
  return ok(log_ratio * in.norm0 / in.moment1);
}

BoundValue decaying_mt(const BoundInputs& in) {
  const auto terms = decay_terms(in);
  const double tol = in.stationary_tolerance * in.norm0;
  if (in.moment2 <= tol && terms.deficit <= tol) return stationary();
  if (!(in.moment2 > 0.0)) {
    throw DataError("overlap decayed although the second moment vanishes");
  }
  // sqrt(norm0) - sqrt(overlap) without cancellation.
  const double root_gap =
      terms.deficit / (std::sqrt(in.norm0) + std::sqrt(in.overlap_t));
  return ok(2.0 * root_gap / std::sqrt(in.moment2));
}

BoundValue larger_of(const BoundValue& a, const BoundValue& b) {
  if (!a.constrains()) return b;
  if (!b.constrains()) return a;
  if (a.status == BoundStatus::stationary && b.status == BoundStatus::stationary) {
    return a;
  }
  return a.tau >= b.tau ? a : b;
}

std::string decorate(const char* base, const std::string& label) {
  return label.empty() ? std::string(base) : std::string(base) + "[" + label + "]";
}

BoundEntry make_entry(std::string name, double t, const BoundInputs& in,
                      BoundValue value) {
  BoundEntry entry;
  entry.name = std::move(name);
  entry.t = t;
  entry.overlap = in.overlap_t;
  entry.norm0 = in.norm0;
  entry.value = std::move(value);
  if (entry.value.constrains()) {
    entry.slack = t - entry.value.tau;
    entry.valid = entry.slack >= -kValiditySlack;
  } else {
    entry.slack = kNaN;
    entry.valid = true;
  }
  return entry;
}

template <typename Fn>
BoundEntry guarded(std::string name, double t, const BoundInputs& in, Fn&& fn) {
  try {
    return make_entry(std::move(name), t, in, fn(in));
  } catch (const Error& err) {
    BoundEntry entry = make_entry(std::move(name), t, in, no_bound(err.what()));
    entry.valid = false;
    return entry;
  }
}

double ratio(const BoundEntry& mt, const BoundEntry& ml) {
  if (mt.value.status != BoundStatus::ok || ml.value.status != BoundStatus::ok ||
      !(ml.value.tau > 0.0)) {
    return kNaN;
  }
  return mt.value.tau / ml.value.tau;
}

}  // namespace

const char* to_string(BoundStatus status) {
  switch (status) {
    case BoundStatus::ok: return "ok";
    case BoundStatus::stationary: return "stationary";
    case BoundStatus::no_bound: return "no_bound";
  }
  return "unknown";
}

const char* to_string(BoundFamily family) {
  switch (family) {
    case BoundFamily::classical: return "classical";
    case BoundFamily::fokker_planck: return "fokker_planck";
    case BoundFamily::master: return "master";
    case BoundFamily::quantum: return "quantum";
  }
  return "unknown";
}

BoundValue qsl_mt(double delta_e, double hbar) {
  if (!(hbar > 0.0)) throw DomainError("hbar must be positive");
  if (!(delta_e > 0.0)) {
    return no_bound("zero energy spread: an eigenstate never orthogonalizes");
  }
  return ok(std::numbers::pi * hbar / (2.0 * delta_e));
}

BoundValue qsl_ml(double mean_e, double hbar) {
  if (!(hbar > 0.0)) throw DomainError("hbar must be positive");
  if (!(mean_e > 0.0)) {
    return no_bound(
        "mean energy must be positive; shift the ground energy to zero");
  }
  return ok(std::numbers::pi * hbar / (2.0 * mean_e));
}

BoundValue qsl_combined(double delta_e, double mean_e, double hbar) {
  return larger_of(qsl_mt(delta_e, hbar), qsl_ml(mean_e, hbar));
}

BoundValue csl_ml_type(const BoundInputs& in) {
  const auto terms = classical_terms(in);
  if (terms.stationary) return stationary();
  // sqrt(2 (norm0 - overlap) / moment2), factored like csl_mt_type so the
  // two share every rounding step except the final arcsine.
  BoundValue value = ok(2.0 * std::sqrt(terms.relative_deficit / 2.0) *
                        terms.time_scale);
  value.note = terms.note;
  return value;
}

BoundValue csl_mt_type(const BoundInputs& in) {
  const auto terms = classical_terms(in);
  if (terms.stationary) return stationary();
  // arccos(1 - d) = 2 asin(sqrt(d / 2)), accurate near d = 0.
  const double angle = 2.0 * std::asin(std::sqrt(terms.relative_deficit / 2.0));
  BoundValue value = ok(angle * terms.time_scale);
  value.note = terms.note;
  return value;
}

BoundValue fp_ml_type(const BoundInputs& in) { return decaying_ml(in); }
BoundValue fp_mt_type(const BoundInputs& in) { return decaying_mt(in); }

BoundValue fp_combined(const BoundInputs& in) {
  return larger_of(decaying_ml(in), decaying_mt(in));
}

BoundValue master_bound(const BoundInputs& in) { return fp_combined(in); }

std::size_t BoundReport::violation_count() const {
  return static_cast<std::size_t>(std::count_if(
      entries.begin(), entries.end(), [](const auto& e) { return !e.valid; }));
}

std::size_t BoundReport::ordering_violation_count() const {
  return static_cast<std::size_t>(
      std::count_if(tightness.begin(), tightness.end(), [](const auto& e) {
        return e.ordering_holds.has_value() && !*e.ordering_holds;
      }));
}

BoundReport audit(std::string scenario_id,
                  std::span<const AuditSeries> series) {
  BoundReport report;
  report.scenario_id = std::move(scenario_id);

  for (const auto& s : series) {
    if (s.times.size() != s.inputs.size()) {
      throw DimensionError("audit series '" + s.label + "' times vs inputs",
                           s.times.size(), s.inputs.size());
    }
    auto push_pair = [&](const char* ml_name, const char* mt_name,
                         const char* combined_name, double t,
                         const BoundInputs& in, auto ml_fn, auto mt_fn,
                         auto combined_fn, bool classical) {
      auto ml = guarded(decorate(ml_name, s.label), t, in, ml_fn);
      auto mt = guarded(decorate(mt_name, s.label), t, in, mt_fn);
      TightnessEntry tight{s.label, t, ratio(mt, ml), std::nullopt};
      if (classical) {
        tight.ordering_holds =
            ml.value.constrains() && mt.value.constrains()
                ? std::optional<bool>(mt.value.tau >= ml.value.tau)
                : std::optional<bool>(ml.valid && mt.valid);
      }
      report.entries.push_back(std::move(ml));
      report.entries.push_back(std::move(mt));
      if (combined_name != nullptr) {
        report.entries.push_back(
            guarded(decorate(combined_name, s.label), t, in, combined_fn));
      }
      report.tightness.push_back(std::move(tight));
    };

    switch (s.family) {
      case BoundFamily::classical:
        for (std::size_t k = 0; k < s.times.size(); ++k) {
          push_pair("csl_ml", "csl_mt", nullptr, s.times[k], s.inputs[k],
                    csl_ml_type, csl_mt_type, csl_ml_type, true);
        }
        break;
      case BoundFamily::fokker_planck:
        for (std::size_t k = 0; k < s.times.size(); ++k) {
          push_pair("fp_ml", "fp_mt", "fp_combined", s.times[k], s.inputs[k],
                    fp_ml_type, fp_mt_type, fp_combined, false);
        }
        break;
      case BoundFamily::master:
        for (std::size_t k = 0; k < s.times.size(); ++k) {
          push_pair("master_ml", "master_mt", "master_combined", s.times[k],
                    s.inputs[k], fp_ml_type, fp_mt_type, master_bound, false);
        }
        break;
      case BoundFamily::quantum: {
        if (!s.orthogonalization_time || s.inputs.empty()) break;
        const double t_orth = *s.orthogonalization_time;
        auto qsl_inputs = [](const BoundInputs& in) {
          const double mean = in.moment1 / in.norm0;
          const double spread =
              std::sqrt(std::max(0.0, in.moment2 / in.norm0 - mean * mean));
          return std::pair{mean, spread};
        };
        auto mt_fn = [&](const BoundInputs& in) {
          return qsl_mt(qsl_inputs(in).second, in.hbar);
        };
        auto ml_fn = [&](const BoundInputs& in) {
          return qsl_ml(qsl_inputs(in).first, in.hbar);
        };
        auto combined_fn = [&](const BoundInputs& in) {
          const auto [mean, spread] = qsl_inputs(in);
          return qsl_combined(spread, mean, in.hbar);
        };
        for (std::size_t k = 0; k < s.times.size(); ++k) {
          if (s.times[k] < t_orth) continue;
          push_pair("qsl_ml", "qsl_mt", "qsl_combined", s.times[k], s.inputs[k],
                    ml_fn, mt_fn, combined_fn, false);
        }
        break;
      }
    }
  }
  return report;
}

}  // namespace speedlimit
