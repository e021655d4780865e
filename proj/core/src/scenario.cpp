#include "speedlimit/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "speedlimit/error.hpp"
#include "speedlimit/fokker_planck.hpp"
#include "speedlimit/master_eq.hpp"
#include "speedlimit/quantum.hpp"
#include "speedlimit/stencil.hpp"
#include "speedlimit/version.hpp"

namespace speedlimit {
namespace {

using nlohmann::json;

std::string join_path(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

// Collects violations while reading a scenario document.
class Reader {
 public:
  std::vector<std::string> errors;

  void fail(const std::string& path, const std::string& message) {
    errors.push_back(path + " " + message);
  }

  const json* section(const json& obj, const std::string& path, const char* key,
                      bool required) {
    const std::string full = join_path(path, key);
    if (!obj.is_object() || !obj.contains(key)) {
      if (required) fail(full, "is required");
      return nullptr;
    }
    const json& v = obj.at(key);
    if (!v.is_object()) {
      fail(full, "must be an object");
      return nullptr;
    }
    return &v;
  }

  std::optional<double> number(const json* obj, const std::string& path,
                               const char* key, std::optional<double> fallback) {
    const std::string full = join_path(path, key);
    if (obj == nullptr || !obj->contains(key)) {
      if (!fallback && obj != nullptr) fail(full, "is required");
      return fallback;
    }
    const json& v = obj->at(key);
    if (!v.is_number()) {
      fail(full, "must be a number");
      return std::nullopt;
    }
    const double x = v.get<double>();
    if (!std::isfinite(x)) {
      fail(full, "must be finite");
      return std::nullopt;
    }
    return x;
  }

  std::optional<int> integer(const json* obj, const std::string& path,
                             const char* key, std::optional<int> fallback) {
    const std::string full = join_path(path, key);
    if (obj == nullptr || !obj->contains(key)) {
      if (!fallback && obj != nullptr) fail(full, "is required");
      return fallback;
    }
    const json& v = obj->at(key);
    if (!v.is_number_integer()) {
      fail(full, "must be an integer");
      return std::nullopt;
    }
    return v.get<int>();
  }

  std::optional<std::vector<double>> numbers(const json* obj, const std::string& path,
                                             const char* key, bool required) {
    const std::string full = join_path(path, key);
    if (obj == nullptr || !obj->contains(key)) {
      if (required && obj != nullptr) fail(full, "is required");
      return std::nullopt;
    }
    const json& v = obj->at(key);
    if (!v.is_array()) {
      fail(full, "must be an array of numbers");
      return std::nullopt;
    }
    std::vector<double> out;
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (!v[k].is_number() || !std::isfinite(v[k].get<double>())) {
        fail(full + "[" + std::to_string(k) + "]", "must be a finite number");
        return std::nullopt;
      }
      out.push_back(v[k].get<double>());
    }
    return out;
  }

  std::optional<RealMatrix> matrix(const json* obj, const std::string& path,
                                   const char* key, bool required) {
    const std::string full = join_path(path, key);
    if (obj == nullptr || !obj->contains(key)) {
      if (required && obj != nullptr) fail(full, "is required");
      return std::nullopt;
    }
    const json& v = obj->at(key);
    if (!v.is_array() || v.empty() || !v[0].is_array()) {
      fail(full, "must be a non-empty array of rows");
      return std::nullopt;
    }
    const std::size_t rows = v.size();
    const std::size_t cols = v[0].size();
    RealMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      if (!v[i].is_array() || v[i].size() != cols) {
        fail(full, "rows must all have " + std::to_string(cols) + " entries");
        return std::nullopt;
      }
      for (std::size_t j = 0; j < cols; ++j) {
        if (!v[i][j].is_number() || !std::isfinite(v[i][j].get<double>())) {
          fail(full + "[" + std::to_string(i) + "][" + std::to_string(j) + "]",
               "must be a finite number");
          return std::nullopt;
        }
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            v[i][j].get<double>();
      }
    }
    return m;
  }

  void positive(const std::optional<double>& v, const std::string& path) {
    if (v && !(*v > 0.0)) fail(path, "must be > 0");
  }
};

RealVector to_vector(const std::vector<double>& v) {
  return Eigen::Map<const RealVector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

LiouvilleConfig parse_liouville(const json& doc, Reader& r) {
  LiouvilleConfig cfg;
  const json* g = r.section(doc, "", "gaussian", true);
  const auto a = r.number(g, "gaussian", "a", std::nullopt);
  const auto b = r.number(g, "gaussian", "b", std::nullopt);
  const auto e = r.number(g, "gaussian", "e", 0.0);
  const auto f = r.number(g, "gaussian", "f", 0.0);
  r.positive(a, "gaussian.a");
  r.positive(b, "gaussian.b");
  cfg.gaussian = {a.value_or(1.0), b.value_or(1.0), e.value_or(0.0), f.value_or(0.0)};

  const json* h = r.section(doc, "", "hamiltonian", true);
  const auto c = r.number(h, "hamiltonian", "c", std::nullopt);
  const auto d = r.number(h, "hamiltonian", "d", std::nullopt);
  r.positive(c, "hamiltonian.c");
  r.positive(d, "hamiltonian.d");
  cfg.c = c.value_or(1.0);
  cfg.d = d.value_or(1.0);

  if (auto alpha = r.numbers(&doc, "", "alpha", false)) {
    if (alpha->empty()) r.fail("alpha", "must not be empty");
    for (std::size_t k = 0; k < alpha->size(); ++k) {
      if (!((*alpha)[k] > 0.0)) r.fail("alpha[" + std::to_string(k) + "]", "must be > 0");
    }
    if (!alpha->empty()) cfg.alpha = *alpha;
  }

  const json* grid = r.section(doc, "", "grid", false);
  static const json empty = json::object();
  const json* gsrc = grid ? grid : &empty;
  const auto nx = r.integer(gsrc, "grid", "nx", 48);
  const auto np = r.integer(gsrc, "grid", "np", 48);
  const auto order = r.integer(gsrc, "grid", "stencil_order", kDefaultStencilOrder);
  if (nx && *nx < 8) r.fail("grid.nx", "must be >= 8");
  if (np && *np < 8) r.fail("grid.np", "must be >= 8");
  if (order && !is_supported_stencil_order(*order)) {
    r.fail("grid.stencil_order", "must be one of 2, 4, 6, 8");
  }
  cfg.nx = nx.value_or(48);
  cfg.np = np.value_or(48);
  cfg.stencil_order = order.value_or(kDefaultStencilOrder);
  const auto tol = r.number(&doc, "", "stationary_tolerance", 1e-8);
  r.positive(tol, "stationary_tolerance");
  cfg.stationary_tolerance = tol.value_or(1e-8);
  return cfg;
}

FokkerPlanckConfig parse_fokker_planck(const json& doc, Reader& r) {
  FokkerPlanckConfig cfg;
  const json* drift = r.section(doc, "", "drift", true);
  auto coeffs = r.numbers(drift, "drift", "coefficients", true);
  const auto x_min = r.number(drift, "drift", "x_min", cfg.x_min);
  const auto x_max = r.number(drift, "drift", "x_max", cfg.x_max);
  const auto points = r.integer(drift, "drift", "points", cfg.points);
  const auto order = r.integer(drift, "drift", "stencil_order", kDefaultStencilOrder);
  if (points && *points < 8) r.fail("drift.points", "must be >= 8");
  if (x_min && x_max && !(*x_max > *x_min)) r.fail("drift.x_max", "must be > drift.x_min");
  if (order && !is_supported_stencil_order(*order)) {
    r.fail("drift.stencil_order", "must be one of 2, 4, 6, 8");
  }
  if (coeffs) {
    const Polynomial w(*coeffs);
    if (w.degree() < 2 || w.degree() % 2 != 0 || !(w.leading_coefficient() > 0.0)) {
      r.fail("drift.coefficients",
             "must describe a confining potential (even degree >= 2, positive "
             "leading coefficient)");
    } else if (x_min && x_max && points && *x_max > *x_min && *points >= 8) {
      try {
        DriftPotential(w, *x_min, *x_max, *points);
      } catch (const DomainError& err) {
        r.fail("drift", err.what());
      }
    }
    cfg.drift = *coeffs;
  }
  cfg.x_min = x_min.value_or(cfg.x_min);
  cfg.x_max = x_max.value_or(cfg.x_max);
  cfg.points = points.value_or(cfg.points);
  cfg.stencil_order = order.value_or(kDefaultStencilOrder);

  const json* init = r.section(doc, "", "initial", false);
  const auto mean = r.number(init, "initial", "mean", 0.0);
  const auto variance = r.number(init, "initial", "variance", 0.5);
  r.positive(variance, "initial.variance");
  cfg.initial_mean = mean.value_or(0.0);
  cfg.initial_variance = variance.value_or(0.5);
  return cfg;
}

MasterConfig parse_master(const json& doc, Reader& r) {
  MasterConfig cfg;
  const json* chain = r.section(doc, "", "chain", true);
  if (chain == nullptr) return cfg;
  cfg.rates = r.matrix(chain, "chain", "rates", false);
  const auto random = r.integer(chain, "chain", "random_states", 0);
  if (random && *random != 0) {
    if (*random < 2) r.fail("chain.random_states", "must be >= 2");
    if (cfg.rates) r.fail("chain", "must give either rates or random_states, not both");
    cfg.random_states = *random;
  } else if (!cfg.rates && !chain->contains("rates")) {
    r.fail("chain.rates", "is required (or set chain.random_states)");
  }
  if (auto pi = r.numbers(chain, "chain", "pi", false)) cfg.pi = to_vector(*pi);
  if (auto p0 = r.numbers(&doc, "", "initial", false)) cfg.initial = to_vector(*p0);

  Eigen::Index n = cfg.rates ? cfg.rates->rows() : cfg.random_states;
  if (cfg.rates) {
    if (cfg.rates->rows() != cfg.rates->cols()) {
      r.fail("chain.rates", "must be square");
    } else {
      try {
        TransitionMatrix(*cfg.rates, cfg.pi);
      } catch (const Error& err) {
        r.fail("chain", err.what());
      }
    }
  } else if (cfg.pi && cfg.random_states > 0) {
    r.fail("chain.pi", "cannot be combined with random_states");
  }
  if (cfg.initial && n > 0) {
    const RealVector& p0 = *cfg.initial;
    if (p0.size() != n) {
      r.fail("initial", "must have one entry per state (" + std::to_string(n) + ")");
    } else if ((p0.array() < 0.0).any() || std::abs(p0.sum() - 1.0) > 1e-12) {
      r.fail("initial", "must be nonnegative and sum to 1");
    }
  }
  return cfg;
}

QuantumConfig parse_quantum(const json& doc, Reader& r) {
  QuantumConfig cfg;
  const json* q = r.section(doc, "", "quantum", true);
  if (q == nullptr) return cfg;
  auto h_re = r.matrix(q, "quantum", "hamiltonian", true);
  auto h_im = r.matrix(q, "quantum", "hamiltonian_imag", false);
  auto s_re = r.numbers(q, "quantum", "state", true);
  auto s_im = r.numbers(q, "quantum", "state_imag", false);
  const auto hbar = r.number(q, "quantum", "hbar", 1.0);
  r.positive(hbar, "quantum.hbar");
  cfg.hbar = hbar.value_or(1.0);
  if (q->contains("search_time")) {
    cfg.search_time = r.number(q, "quantum", "search_time", std::nullopt);
    r.positive(cfg.search_time, "quantum.search_time");
  }
  if (!h_re || !s_re) return cfg;
  const Eigen::Index n = h_re->rows();
  if (h_re->cols() != n || n < 2) {
    r.fail("quantum.hamiltonian", "must be square with at least 2 levels");
    return cfg;
  }
  if (h_im && (h_im->rows() != n || h_im->cols() != n)) {
    r.fail("quantum.hamiltonian_imag", "must match quantum.hamiltonian in shape");
    return cfg;
  }
  cfg.hamiltonian = h_re->cast<Complex>();
  if (h_im) cfg.hamiltonian += Complex(0.0, 1.0) * h_im->cast<Complex>();
  if (hermiticity_defect(cfg.hamiltonian, InnerProductSpace::uniform(n)) > 1e-10) {
    r.fail("quantum.hamiltonian", "must be Hermitian");
  }
  if (static_cast<Eigen::Index>(s_re->size()) != n ||
      (s_im && static_cast<Eigen::Index>(s_im->size()) != n)) {
    r.fail("quantum.state", "must have one amplitude per level (" + std::to_string(n) + ")");
    return cfg;
  }
  cfg.state = to_vector(*s_re).cast<Complex>();
  if (s_im) cfg.state += Complex(0.0, 1.0) * to_vector(*s_im).cast<Complex>();
  const double norm = cfg.state.norm();
  if (!(norm > 0.0)) {
    r.fail("quantum.state", "must be nonzero");
  } else {
    cfg.state /= norm;
  }
  return cfg;
}

template <typename Fn>
auto with_context(const ScenarioConfig& cfg, Fn&& fn) {
  const std::string prefix = "scenario '" + cfg.id + "': ";
  try {
    return fn();
  } catch (const DetailedBalanceError& err) {
    throw DetailedBalanceError(err.report());
  } catch (const ConfigError&) {
    throw;
  } catch (const DimensionError& err) {
    throw DomainError(prefix + err.what());
  } catch (const DomainError& err) {
    throw DomainError(prefix + err.what());
  } catch (const DataError& err) {
    throw DataError(prefix + err.what());
  } catch (const NumericalError& err) {
    throw NumericalError(prefix + err.what());
  }
}

struct SeriesSet {
  std::vector<AuditSeries> series;
  std::vector<Curve> curves;
};

std::string prefixed(const std::string& prefix, const std::string& label) {
  return prefix.empty() ? label : prefix + "/" + label;
}

SeriesSet run_liouville(const LiouvilleConfig& cfg, const std::vector<double>& times,
                        const std::string& prefix) {
  const double alpha_min = *std::min_element(cfg.alpha.begin(), cfg.alpha.end());
  const PhaseGrid grid =
      harmonic_orbit_grid(cfg.gaussian, cfg.c, cfg.d, alpha_min, cfg.nx, cfg.np);
  const PhaseDistribution rho = gaussian_state(grid, cfg.gaussian);
  const HermitianOperator l = build_liouvillian(
      SeparableHamiltonian::harmonic(cfg.c, cfg.d), grid, cfg.stencil_order);
  const auto basis = eigensystem(l);
  // A second moment no larger than its change under the next-lower stencil
  // order is not resolved by the grid; such states count as stationary.
  std::optional<HermitianOperator> coarse;
  if (cfg.stencil_order > 2) {
    coarse.emplace(build_liouvillian(SeparableHamiltonian::harmonic(cfg.c, cfg.d),
                                     grid, cfg.stencil_order - 2));
  }

  SeriesSet out;
  for (double alpha : cfg.alpha) {
    const Vector state = power_state(rho, alpha);
    const auto decomp = expand(basis, state);
    const auto curve = overlap_curve(decomp, times, EvolutionMode::unitary);
    double tolerance = cfg.stationary_tolerance;
    if (coarse) {
      const double resolution =
          std::abs(decomp.moment(2) - l_moment(state, *coarse, 2)) / curve.norm0;
      tolerance = std::max(tolerance, resolution);
    }
    AuditSeries s;
    s.family = BoundFamily::classical;
    s.label = prefixed(prefix, "alpha=" + format_value(alpha));
    s.times = times;
    for (double ov : curve.overlaps) {
      BoundInputs in;
      in.norm0 = curve.norm0;
      in.overlap_t = ov;
      in.moment1 = decomp.moment(1);
      in.moment2 = decomp.moment(2);
      in.stationary_tolerance = tolerance;
      s.inputs.push_back(in);
    }
    out.curves.push_back({s.label, times, curve.overlaps, curve.norm0});
    out.series.push_back(std::move(s));
  }
  return out;
}

SeriesSet run_fokker_planck(const FokkerPlanckConfig& cfg,
                            const std::vector<double>& times,
                            const std::string& prefix) {
  const DriftPotential w(Polynomial(cfg.drift), cfg.x_min, cfg.x_max, cfg.points);
  RealVector p0(cfg.points);
  for (int i = 0; i < cfg.points; ++i) {
    const double z = w.x(i) - cfg.initial_mean;
    p0[i] = std::exp(-z * z / (2.0 * cfg.initial_variance));
  }
  p0 /= p0.sum() * w.h();
  const auto hf = build_hf(w, cfg.stencil_order);
  const auto decomp = decompose_hf(hf, fp_to_schrodinger(p0, w));
  const auto curve = overlap_curve(decomp, times, EvolutionMode::decaying);

  SeriesSet out;
  AuditSeries s;
  s.family = BoundFamily::fokker_planck;
  s.label = prefixed(prefix, "fp");
  s.times = times;
  for (double ov : curve.overlaps) {
    s.inputs.push_back({curve.norm0, ov, decomp.moment(1), decomp.moment(2)});
  }
  out.curves.push_back({s.label, times, curve.overlaps, curve.norm0});
  out.series.push_back(std::move(s));
  return out;
}

SeriesSet run_master(const MasterConfig& cfg, std::uint64_t seed,
                     const std::vector<double>& times, const std::string& prefix) {
  const TransitionMatrix tm = cfg.random_states > 0
                                  ? random_detailed_balance_chain(cfg.random_states, seed)
                                  : TransitionMatrix(*cfg.rates, cfg.pi);
  RealVector p0 = RealVector::Zero(tm.states());
  if (cfg.initial) {
    p0 = *cfg.initial;
  } else {
    p0[0] = 1.0;
  }
  const auto evo = evolve_master(tm, p0, times);

  SeriesSet out;
  AuditSeries s;
  s.family = BoundFamily::master;
  s.label = prefixed(prefix, "master");
  s.times = times;
  for (double ov : evo.symmetric_overlaps) {
    s.inputs.push_back({evo.symmetric_norm0, ov, evo.mean_w, evo.mean_w2});
  }
  out.curves.push_back({s.label, times, evo.symmetric_overlaps, evo.symmetric_norm0});
  out.curves.push_back({prefixed(prefix, "master_plain"), times, evo.overlaps,
                        p0.squaredNorm()});
  out.series.push_back(std::move(s));
  return out;
}

SeriesSet run_quantum(const QuantumConfig& cfg, const TimeGrid& grid,
                      const std::vector<double>& times, const std::string& prefix) {
  const QuantumSystem system(cfg.hamiltonian, cfg.state, cfg.hbar);
  const double horizon = cfg.search_time.value_or(grid.stop);
  AuditSeries s;
  s.family = BoundFamily::quantum;
  s.label = prefixed(prefix, "quantum");
  s.times = times;
  if (horizon > 0.0) s.orthogonalization_time = system.orthogonalization_time(horizon);
  Curve curve{s.label, times, {}, 1.0};
  for (double t : times) curve.overlaps.push_back(system.bound_inputs(t).overlap_t);
  if (s.orthogonalization_time) {
    const double t_orth = *s.orthogonalization_time;
    const auto at = std::lower_bound(s.times.begin(), s.times.end(), t_orth);
    if (at == s.times.end() || *at != t_orth) s.times.insert(at, t_orth);
  }
  for (double t : s.times) s.inputs.push_back(system.bound_inputs(t));
  SeriesSet out;
  out.curves.push_back(std::move(curve));
  out.series.push_back(std::move(s));
  return out;
}

SeriesSet run_series(const ScenarioConfig& cfg, const std::string& prefix) {
  const auto times = cfg.time.values();
  return std::visit(
      [&](const auto& fam) -> SeriesSet {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, LiouvilleConfig>) {
          return run_liouville(fam, times, prefix);
        } else if constexpr (std::is_same_v<T, FokkerPlanckConfig>) {
          return run_fokker_planck(fam, times, prefix);
        } else if constexpr (std::is_same_v<T, MasterConfig>) {
          return run_master(fam, cfg.seed, times, prefix);
        } else {
          return run_quantum(fam, cfg.time, times, prefix);
        }
      },
      cfg.family);
}

}  // namespace

std::vector<double> TimeGrid::values() const {
  std::vector<double> out(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k) {
    out[k] = k + 1 == samples ? stop : start + (stop - start) * k / (samples - 1);
  }
  return out;
}

const char* family_name(const ScenarioConfig& cfg) {
  static constexpr const char* names[] = {"liouville", "fokker_planck", "master",
                                          "quantum"};
  return names[cfg.family.index()];
}

ScenarioConfig parse_scenario(const json& doc) {
  Reader r;
  ScenarioConfig cfg;
  cfg.source = doc;
  if (!doc.is_object()) throw ConfigError({"scenario must be a JSON object"});

  if (doc.contains("id")) {
    if (doc["id"].is_string() && !doc["id"].get<std::string>().empty()) {
      cfg.id = doc["id"].get<std::string>();
      if (cfg.id.find_first_of("/\\") != std::string::npos) {
        r.fail("id", "must not contain path separators");
      }
    } else {
      r.fail("id", "must be a non-empty string");
    }
  }

  const json* time = r.section(doc, "", "time", true);
  const auto start = r.number(time, "time", "start", 0.0);
  const auto stop = r.number(time, "time", "stop", std::nullopt);
  const auto samples = r.integer(time, "time", "samples", std::nullopt);
  if (start && *start < 0.0) r.fail("time.start", "must be >= 0");
  if (samples && *samples < 2) r.fail("time.samples", "must be >= 2");
  if (start && stop && !(*stop > *start)) r.fail("time.stop", "must be > time.start");
  cfg.time = {start.value_or(0.0), stop.value_or(1.0), samples.value_or(2)};

  if (doc.contains("seed")) {
    const auto& seed = doc["seed"];
    if (seed.is_number_unsigned() || (seed.is_number_integer() && seed.get<std::int64_t>() >= 0)) {
      cfg.seed = seed.get<std::uint64_t>();
    } else {
      r.fail("seed", "must be a nonnegative integer");
    }
  }

  if (const json* out = r.section(doc, "", "output", false)) {
    if (out->contains("dir")) {
      if ((*out)["dir"].is_string()) {
        cfg.output_dir = (*out)["dir"].get<std::string>();
      } else {
        r.fail("output.dir", "must be a string");
      }
    }
    if (out->contains("format")) {
      const auto& f = (*out)["format"];
      if (f.is_string() && (f == "json" || f == "csv")) {
        cfg.output_format = parse_output_format(f.get<std::string>());
      } else {
        r.fail("output.format", "must be \"json\" or \"csv\"");
      }
    }
  }

  std::string family;
  if (!doc.contains("family")) {
    r.fail("family", "is required");
  } else if (!doc["family"].is_string()) {
    r.fail("family", "must be a string");
  } else {
    family = doc["family"].get<std::string>();
  }
  if (family == "liouville") {
    cfg.family = parse_liouville(doc, r);
  } else if (family == "fokker_planck") {
    cfg.family = parse_fokker_planck(doc, r);
  } else if (family == "master") {
    cfg.family = parse_master(doc, r);
  } else if (family == "quantum") {
    cfg.family = parse_quantum(doc, r);
  } else if (!family.empty()) {
    r.fail("family", "'" + family +
                         "' is unknown (expected liouville, fokker_planck, master "
                         "or quantum)");
  }

  if (const json* sweep = r.section(doc, "", "sweep", false)) {
    SweepConfig sc;
    const auto& p = sweep->contains("parameter") ? (*sweep)["parameter"] : json();
    if (p == "alpha") {
      sc.parameter = SweepParameter::alpha;
    } else if (p == "scale") {
      sc.parameter = SweepParameter::scale;
    } else {
      r.fail("sweep.parameter", "must be \"alpha\" or \"scale\"");
    }
    if (auto values = r.numbers(sweep, "sweep", "values", true)) {
      if (values->empty()) r.fail("sweep.values", "must not be empty");
      for (std::size_t k = 0; k < values->size(); ++k) {
        if (!((*values)[k] > 0.0)) {
          r.fail("sweep.values[" + std::to_string(k) + "]", "must be > 0");
        }
      }
      sc.values = *values;
    }
    if (family != "liouville") r.fail("sweep", "is only supported for the liouville family");
    cfg.sweep = sc;
  }

  if (!r.errors.empty()) throw ConfigError(std::move(r.errors));
  return cfg;
}

ScenarioConfig parse_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot read scenario file " + path.string()});
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& err) {
    throw ConfigError({path.string() + ": " + err.what()});
  }
  auto cfg = parse_scenario(doc);
  if (!doc.contains("id")) cfg.id = path.stem().string();
  return cfg;
}

RunRecord run_scenario(const ScenarioConfig& cfg) {
  const auto started = std::chrono::steady_clock::now();
  auto set = with_context(cfg, [&] { return run_series(cfg, ""); });
  RunRecord record;
  record.config = cfg.source;
  record.version = std::string(kVersion);
  record.report = audit(cfg.id, set.series);
  record.curves = std::move(set.curves);
  record.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return record;
}

RunRecord run_sweep(const ScenarioConfig& cfg, const SweepConfig& sweep) {
  const auto* base = std::get_if<LiouvilleConfig>(&cfg.family);
  if (base == nullptr) throw DomainError("sweeps are only supported for the liouville family");
  if (sweep.values.empty()) throw DomainError("sweep needs at least one value");
  const auto started = std::chrono::steady_clock::now();

  RunRecord record;
  record.config = cfg.source;
  record.version = std::string(kVersion);
  std::vector<AuditSeries> series;
  if (sweep.parameter == SweepParameter::alpha) {
    ScenarioConfig one = cfg;
    std::get<LiouvilleConfig>(one.family).alpha = sweep.values;
    auto set = with_context(one, [&] { return run_series(one, ""); });
    series = std::move(set.series);
    record.curves = std::move(set.curves);
  } else {
    for (double s : sweep.values) {
      ScenarioConfig one = cfg;
      auto& lc = std::get<LiouvilleConfig>(one.family);
      lc.gaussian.a *= s;
      lc.gaussian.b *= s;
      auto set = with_context(one, [&] {
        return run_series(one, "scale=" + format_value(s));
      });
      for (auto& item : set.series) series.push_back(std::move(item));
      for (auto& c : set.curves) record.curves.push_back(std::move(c));
    }
  }
  record.report = audit(cfg.id, series);
  record.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return record;
}

}  // namespace speedlimit
