// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on failure.
// Usage: acceptance [--criterion N]...

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "oracles.hpp"
#include "speedlimit/bounds.hpp"
#include "speedlimit/error.hpp"
#include "speedlimit/fokker_planck.hpp"
#include "speedlimit/liouville.hpp"
#include "speedlimit/master_eq.hpp"
#include "speedlimit/quantum.hpp"
#include "speedlimit/report.hpp"
#include "speedlimit/scenario.hpp"

namespace fs = std::filesystem;
using namespace speedlimit;
using nlohmann::json;

namespace {

// Tolerances, fixed here and nowhere else.
constexpr double kC1RelativeError = 1e-3;
constexpr double kC1SecondsPerSet = 30.0;
constexpr int kC1Grid = 48;
constexpr double kC2Residual = 1e-9;
constexpr double kC2PairSymmetry = 1e-8;
constexpr double kC2FirstMoment = 1e-8;
constexpr int kC3MinScenarios = 20;
constexpr int kC3MinSamples = 50;
constexpr double kC3Slack = 1e-9;
constexpr int kC4Triples = 10000;
constexpr double kC5Characteristics = 1e-4;
constexpr double kC5FokkerPlanck = 1e-4;
constexpr double kC5Master = 1e-10;
constexpr double kC6Eigenvalue = 1e-3;
constexpr double kC6GroundResidual = 1e-6;
constexpr double kC7Saturation = 1e-9;
constexpr int kC7Systems = 100;
constexpr double kC8Fraction = 0.1;

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

PhaseGrid centred_grid(const GaussianParams& g, int n) {
  const double hx = kDomainSigmas * g.sigma_x();
  const double hp = kDomainSigmas * g.sigma_p();
  return PhaseGrid::with_node_span(g.e - hx, g.e + hx, g.f - hp, g.f + hp, n, n);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------- 1

Outcome criterion1() {
  struct Set {
    GaussianParams g;
    double c, d;
  };
  const Set sets[] = {
      {{2.0, 1.0, 0.0, 0.0}, 1.0, 1.0},
      {{1.0, 1.0, 1.0, 0.0}, 2.0, 1.0},
      {{1.0, 2.0, 0.0, 0.5}, 1.0, 1.0},
      {{1.5, 0.8, 0.4, -0.3}, 0.7, 1.3},
      {{3.0, 2.0, -0.5, 0.2}, 1.0, 2.0},
      {{0.5, 0.5, 0.3, 0.3}, 2.0, 0.5},
  };
  bool pass = true;
  double worst = 0.0, slowest = 0.0;
  std::ostringstream out;
  for (const auto& s : sets) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto grid = centred_grid(s.g, kC1Grid);
    const auto op = build_liouvillian(SeparableHamiltonian::harmonic(s.c, s.d), grid);
    const double m2 = l_moment(power_state(gaussian_state(grid, s.g), 1.0), op, 2);
    const double elapsed = seconds_since(t0);
    const double exact = harmonic_l2_closed_form(s.g, s.c, s.d);
    const double rel = std::abs(m2 - exact) / exact;
    worst = std::max(worst, rel);
    slowest = std::max(slowest, elapsed);
    if (!(rel < kC1RelativeError) || !(elapsed < kC1SecondsPerSet)) pass = false;
    out << " [" << fmt("%.6f", exact) << " rel " << fmt("%.2e", rel) << "]";
  }
  return {pass, std::to_string(std::size(sets)) + " sets on " + std::to_string(kC1Grid) +
                    "x" + std::to_string(kC1Grid) + ", worst rel err " +
                    fmt("%.2e", worst) + " (< 1e-3), slowest " + fmt("%.2f", slowest) +
                    " s (< 30 s);" + out.str()};
}

// ---------------------------------------------------------------- 2

Outcome criterion2() {
  const GaussianParams g{2.0, 1.0, 0.5, 0.0};
  const auto grid = harmonic_orbit_grid(g, 1.0, 1.0, 0.5, kC1Grid, kC1Grid);
  const auto op = build_liouvillian(SeparableHamiltonian::harmonic(1.0, 1.0), grid);
  const double residual = self_adjointness_residual(op, 32, 2718);
  const RealVector v = eigensystem(op)->values;
  const Eigen::Index n = v.size();
  double pair = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) pair = std::max(pair, std::abs(v[k] + v[n - 1 - k]));
  const auto rho = gaussian_state(grid, g);
  double first = 0.0;
  for (double alpha : {0.5, 1.0, 2.0}) {
    first = std::max(first, std::abs(l_moment(power_state(rho, alpha), op, 1)));
  }
  const bool pass = residual < kC2Residual && pair < kC2PairSymmetry && first < kC2FirstMoment;
  return {pass, "self-adjointness residual " + fmt("%.2e", residual) +
                    " (< 1e-9), max |lambda_k + lambda_{n-1-k}| " + fmt("%.2e", pair) +
                    " (< 1e-8), max |<rho^a|L|rho^a>| " + fmt("%.2e", first) +
                    " (< 1e-8) over a in {1/2, 1, 2}"};
}

// ---------------------------------------------------------------- 3, 4

json harmonic_doc(int k, const GaussianParams& g, double c, double d) {
  return {{"id", "harmonic_" + std::to_string(k)},
          {"family", "liouville"},
          {"gaussian", {{"a", g.a}, {"b", g.b}, {"e", g.e}, {"f", g.f}}},
          {"hamiltonian", {{"c", c}, {"d", d}}},
          {"alpha", {0.5, 1.0, 2.0}},
          {"grid", {{"nx", 40}, {"np", 40}}},
          {"time", {{"start", 0.0}, {"stop", 2.0 * kPi / (2.0 * std::sqrt(c * d))},
                    {"samples", 60}}}};
}

std::vector<json> classical_docs() {
  return {harmonic_doc(0, {2.0, 1.0, 0.0, 0.0}, 1.0, 1.0),
          harmonic_doc(1, {1.0, 1.0, 1.0, 0.0}, 2.0, 1.0),
          harmonic_doc(2, {1.5, 0.8, 0.4, -0.3}, 0.7, 1.3),
          harmonic_doc(3, {1.0, 1.0, 0.0, 0.0}, 1.0, 1.0)};
}

std::vector<json> scenario_docs() {
  std::vector<json> docs = classical_docs();
  const double ou_means[] = {0.0, 1.0, -1.5};
  const double ou_vars[] = {0.2, 0.5, 1.0};
  for (int k = 0; k < 3; ++k) {
    docs.push_back({{"id", "ou_" + std::to_string(k)},
                    {"family", "fokker_planck"},
                    {"drift", {{"coefficients", {0.0, 0.0, 0.5}}, {"x_min", -8.0},
                               {"x_max", 8.0}, {"points", 200}}},
                    {"initial", {{"mean", ou_means[k]}, {"variance", ou_vars[k]}}},
                    {"time", {{"start", 0.0}, {"stop", 3.0}, {"samples", 60}}}});
    docs.push_back({{"id", "quartic_" + std::to_string(k)},
                    {"family", "fokker_planck"},
                    {"drift", {{"coefficients", {0.0, 0.0, -0.5, 0.0, 0.25}},
                               {"x_min", -4.0}, {"x_max", 4.0}, {"points", 240}}},
                    {"initial", {{"mean", 0.5 * ou_means[k]}, {"variance", ou_vars[k]}}},
                    {"time", {{"start", 0.0}, {"stop", 3.0}, {"samples", 60}}}});
  }
  for (int n = 2; n <= 8; ++n) {
    docs.push_back({{"id", "chain_" + std::to_string(n)},
                    {"family", "master"},
                    {"seed", 1000 + n},
                    {"chain", {{"random_states", n}}},
                    {"time", {{"start", 0.0}, {"stop", 4.0}, {"samples", 60}}}});
  }
  // Quantum states that do orthogonalize, so their bounds are audited: the
  // time grid reaches 4 t_perp, leaving >= 50 samples after it.
  auto quantum = [&](const std::string& id, const Matrix& h, const Vector& s, double t_perp) {
    json hr = json::array(), hi = json::array();
    for (Eigen::Index i = 0; i < h.rows(); ++i) {
      json rr = json::array(), ri = json::array();
      for (Eigen::Index j = 0; j < h.cols(); ++j) {
        rr.push_back(h(i, j).real());
        ri.push_back(h(i, j).imag());
      }
      hr.push_back(rr);
      hi.push_back(ri);
    }
    json sr = json::array(), si = json::array();
    for (const auto& z : s) {
      sr.push_back(z.real());
      si.push_back(z.imag());
    }
    docs.push_back({{"id", id},
                    {"family", "quantum"},
                    {"quantum", {{"hamiltonian", hr}, {"hamiltonian_imag", hi},
                                 {"state", sr}, {"state_imag", si}}},
                    {"time", {{"start", 0.0}, {"stop", 4.0 * t_perp}, {"samples", 80}}}});
  };
  {
    Matrix h = Matrix::Zero(2, 2);
    h(1, 1) = 1.0;
    quantum("qubit", h, Vector::Ones(2) / std::sqrt(2.0), kPi);
  }
  oracle::Gen gen(4242);
  for (int k = 0; k < 3; ++k) {
    const auto sys = oracle::three_level_system(gen);
    quantum("three_level_" + std::to_string(k), sys.hamiltonian, sys.state, sys.t_perp);
  }
  {
    const Matrix u = gen.unitary(4);
    Matrix h = Matrix::Zero(4, 4);
    for (int k = 0; k < 4; ++k) h(k, k) = 0.7 * k;
    h = u * h * u.adjoint();
    h = 0.5 * (h + h.adjoint()).eval();
    const Vector s = u * (Vector::Ones(4) / 2.0);
    quantum("four_level", h, s, 2.0 * kPi / (4.0 * 0.7));
  }
  return docs;
}

Outcome criterion3() {
  int scenarios = 0, min_samples = 1 << 30;
  std::size_t entries = 0, violations = 0;
  double worst = 1e300;
  std::set<std::string> families;
  std::ostringstream failures;
  for (const auto& doc : scenario_docs()) {
    const auto cfg = parse_scenario(doc);
    const auto rec = run_scenario(cfg);
    std::set<double> times;
    for (const auto& e : rec.report.entries) {
      times.insert(e.t);
      if (e.value.constrains()) worst = std::min(worst, e.slack);
      if (!e.valid || (e.value.constrains() && !(e.slack >= -kC3Slack))) {
        ++violations;
        failures << " " << e.name << "@" << e.t;
      }
    }
    ++scenarios;
    families.insert(family_name(cfg));
    entries += rec.report.entries.size();
    min_samples = std::min(min_samples, static_cast<int>(times.size()));
  }
  const bool pass = scenarios >= kC3MinScenarios && min_samples >= kC3MinSamples &&
                    violations == 0 && families.size() == 4;
  return {pass, std::to_string(scenarios) + " scenarios over " +
                    std::to_string(families.size()) + " families, min " +
                    std::to_string(min_samples) + " audited samples, " +
                    std::to_string(entries) + " bound entries, " +
                    std::to_string(violations) + " violations, min slack " +
                    fmt("%.3e", worst) + failures.str()};
}

Outcome criterion4() {
  oracle::Gen gen(19);
  int triple_violations = 0;
  for (int k = 0; k < kC4Triples; ++k) {
    BoundInputs in;
    in.norm0 = gen.log_uniform(1e-4, 1e4);
    in.overlap_t = in.norm0 * gen.uniform(-1.0, 1.0);
    in.moment2 = gen.log_uniform(1e-6, 1e6);
    if (!(csl_mt_type(in).tau >= csl_ml_type(in).tau)) ++triple_violations;
  }
  std::size_t samples = 0, sample_violations = 0;
  for (const auto& doc : classical_docs()) {
    const auto rec = run_scenario(parse_scenario(doc));
    for (const auto& t : rec.report.tightness) {
      if (!t.ordering_holds) continue;
      ++samples;
      if (!*t.ordering_holds) ++sample_violations;
    }
  }
  const bool pass = triple_violations == 0 && sample_violations == 0 && samples > 0;
  return {pass, std::to_string(kC4Triples) + " random triples: " +
                    std::to_string(triple_violations) + " violations; " +
                    std::to_string(samples) + " classical scenario samples: " +
                    std::to_string(sample_violations) + " violations"};
}

// ---------------------------------------------------------------- 5

Outcome criterion5() {
  // Liouville: one period of H = p^2 + x^2 (omega = 2).
  const GaussianParams g{2.0, 1.0, 0.5, 0.0};
  const auto grid = harmonic_orbit_grid(g, 1.0, 1.0, 1.0, kC1Grid, kC1Grid);
  const auto op = build_liouvillian(SeparableHamiltonian::harmonic(1.0, 1.0), grid);
  const auto decomp = spectral_decompose(op, power_state(gaussian_state(grid, g), 1.0));
  std::vector<double> times;
  for (int k = 0; k <= 16; ++k) times.push_back(kPi * k / 16.0);
  const auto curve = overlap_curve(decomp, times, EvolutionMode::unitary);
  const Polynomial kinetic({0.0, 0.0, 1.0}), potential({0.0, 0.0, 1.0});
  double liouville = 0.0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double ref =
        oracle::characteristics_overlap(grid, g, kinetic, potential, 1.0, times[k], 400);
    liouville = std::max(liouville, std::abs(curve.overlaps[k] - ref));
  }

  // Fokker-Planck: OU, shifted Gaussian, spectral vs explicit Euler.
  const int points = 256;
  const DriftPotential w(Polynomial({0.0, 0.0, 0.5}), -8.0, 8.0, points);
  RealVector p0(points);
  for (int i = 0; i < points; ++i) {
    const double z = w.x(i) - 1.0;
    p0[i] = std::exp(-z * z);
  }
  p0 /= p0.sum() * w.h();
  const auto fp = decompose_hf(build_hf(w), fp_to_schrodinger(p0, w));
  const std::vector<double> fp_times{0.1, 0.25, 0.5, 1.0};
  const auto euler =
      oracle::euler_fp_overlaps({0.0, 0.0, 0.5}, -8.0, 8.0, points, p0, fp_times, 2e-5);
  double fokker = 0.0;
  for (std::size_t k = 0; k < fp_times.size(); ++k) {
    fokker = std::max(fokker, std::abs(fp_overlap_inputs(fp, fp_times[k]).overlap_t - euler[k]));
  }

  // Master: 2-state chain vs closed form.
  RealMatrix rates(2, 2);
  rates << 1.0, -1.0, -1.0, 1.0;
  RealVector start(2);
  start << 1.0, 0.0;
  std::vector<double> m_times;
  for (int k = 0; k <= 50; ++k) m_times.push_back(0.1 * k);
  const auto ev = evolve_master(TransitionMatrix(rates), start, m_times);
  double master = 0.0;
  for (std::size_t k = 0; k < m_times.size(); ++k) {
    master = std::max(master, (ev.trajectory[k] - oracle::two_state_trajectory(m_times[k]))
                                  .cwiseAbs()
                                  .maxCoeff());
  }

  const bool pass =
      liouville < kC5Characteristics && fokker < kC5FokkerPlanck && master < kC5Master;
  return {pass, "Liouville vs characteristics " + fmt("%.2e", liouville) +
                    " (< 1e-4, 17 samples over one period); OU spectral vs Euler " +
                    fmt("%.2e", fokker) + " (< 1e-4); 2-state master vs closed form " +
                    fmt("%.2e", master) + " (< 1e-10)"};
}

// ---------------------------------------------------------------- 6

Outcome criterion6() {
  const DriftPotential w(Polynomial({0.0, 0.0, 0.5}), -8.0, 8.0, 200);
  const auto hf = build_hf(w);
  const RealVector v = eigensystem(hf)->values;
  double worst = 0.0;
  std::ostringstream values;
  for (int n = 0; n < 5; ++n) {
    worst = std::max(worst, std::abs(v[n] - 2.0 * n));
    values << " " << fmt("%.6f", v[n]);
  }
  Vector ground = (-w.values().array()).exp().matrix().cast<Complex>();
  ground /= std::sqrt(w.space().squared_norm(ground));
  const double residual = std::sqrt(w.space().squared_norm(hf.apply(ground)));
  const bool pass = worst < kC6Eigenvalue && residual < kC6GroundResidual;
  return {pass, "lowest eigenvalues" + values.str() + ", max error " + fmt("%.2e", worst) +
                    " (< 1e-3); ||H_F e^-W|| " + fmt("%.2e", residual) + " (< 1e-6)"};
}

// ---------------------------------------------------------------- 7

Outcome criterion7() {
  Matrix h = Matrix::Zero(2, 2);
  h(1, 1) = 1.0;
  const Vector s = Vector::Ones(2) / std::sqrt(2.0);
  const QuantumSystem qubit(h, s);
  const auto t_perp = qubit.orthogonalization_time(10.0);
  const double mt = qsl_mt(qubit.energy_spread()).tau;
  const double expected = kPi / (2.0 * 0.5);
  double saturation = 1e300, expm_overlap = 1e300;
  if (t_perp) {
    saturation = std::max(std::abs(*t_perp - mt), std::abs(mt - expected));
    expm_overlap = std::abs(s.dot(oracle::taylor_expm(Complex(0, -*t_perp) * h) * s));
  }

  oracle::Gen gen(77);
  int exceeded = 0, missing = 0;
  double worst = 1e300, worst_oracle_gap = 0.0;
  for (int k = 0; k < kC7Systems; ++k) {
    const auto sys = oracle::three_level_system(gen);
    const QuantumSystem q(sys.hamiltonian, sys.state);
    const auto observed = q.orthogonalization_time(2.0 * kPi / sys.gap, 8192);
    if (!observed) {
      ++missing;
      continue;
    }
    worst_oracle_gap = std::max(worst_oracle_gap, std::abs(*observed - sys.t_perp));
    const double tau = qsl_combined(q.energy_spread(), q.mean_energy()).tau;
    worst = std::min(worst, *observed - tau);
    if (tau > *observed + kC3Slack) ++exceeded;
  }
  const bool pass = t_perp && saturation < kC7Saturation && expm_overlap < kC7Saturation &&
                    exceeded == 0 && missing == 0;
  return {pass, "qubit t_perp " + (t_perp ? fmt("%.12f", *t_perp) : std::string("none")) +
                    " vs pi hbar/(2 dE) " + fmt("%.12f", expected) + " (gap " +
                    fmt("%.1e", saturation) + ", |<phi|e^-iHt phi>| " +
                    fmt("%.1e", expm_overlap) + "); " + std::to_string(kC7Systems) +
                    " three-level systems: " + std::to_string(exceeded) +
                    " exceed, min t_perp - tau " + fmt("%.3e", worst) +
                    ", t_perp vs analytic " + fmt("%.1e", worst_oracle_gap)};
}

// ---------------------------------------------------------------- 8

Outcome criterion8() {
  const double scales[] = {1.0, 2.0, 4.0, 8.0};
  const auto scan = single_particle_limit_scan(scales, ScaleScanOptions{});
  bool decreasing = true, resolved = true;
  std::ostringstream values;
  for (std::size_t k = 0; k < scan.size(); ++k) {
    const auto& e = scan[k];
    if (e.refused || e.bound.status != BoundStatus::ok) resolved = false;
    if (k > 0 && !(e.bound.tau < scan[k - 1].bound.tau)) decreasing = false;
    values << " s=" << e.scale << ":" << fmt("%.4f", e.bound.tau) << " (" << e.nx << "x"
           << e.np << ")";
  }
  const double ratio = scan.back().bound.tau / scan.front().bound.tau;
  const bool pass = resolved && decreasing && ratio < kC8Fraction;
  return {pass, "ML-type bound at t = 0.5:" + values.str() + "; strictly decreasing " +
                    (decreasing ? "yes" : "no") + ", tau(8)/tau(1) = " + fmt("%.3f", ratio) +
                    " (needs < 0.1)"};
}

// ---------------------------------------------------------------- 9

int run_cli(const std::string& args, const fs::path& log) {
#ifdef SPEEDLIMIT_CLI
  const std::string cmd = std::string(SPEEDLIMIT_CLI) + " " + args + " >" + log.string() +
                          " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
#else
  (void)args;
  (void)log;
  return -1;
#endif
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string without_wall_clock(const std::string& text) {
  std::istringstream in(text);
  std::string line, out;
  const std::string key = std::string("\"") + kWallClockKey + "\":";
  while (std::getline(in, line)) {
    if (line.find(key) == std::string::npos) out += line + "\n";
  }
  return out;
}

bool csv_schema_exact(const std::string& csv, std::size_t expected_rows) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) return false;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    if (fields.size() != 7) return false;
    for (int i : {0, 1, 2, 4, 5}) {
      char* end = nullptr;
      std::strtod(fields[i].c_str(), &end);
      if (end == fields[i].c_str() || *end != '\0') return false;
    }
    if (fields[6] != "true" && fields[6] != "false") return false;
    ++rows;
  }
  return rows == expected_rows;
}

Outcome criterion9() {
  const fs::path dir = fs::temp_directory_path() / "speedlimit_acceptance_c9";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::vector<std::string> problems;

  // In-process determinism.
  for (const auto& doc : {scenario_docs()[0], scenario_docs()[4], scenario_docs().back()}) {
    const auto cfg = parse_scenario(doc);
    const auto a = without_wall_clock(to_json(run_scenario(cfg)).dump(2));
    const auto b = without_wall_clock(to_json(run_scenario(cfg)).dump(2));
    if (a != b) problems.push_back("in-process JSON differs for " + cfg.id);
  }

  // CLI determinism and formats.
  const json chain = {{"id", "c9_chain"},
                      {"family", "master"},
                      {"seed", 5},
                      {"chain", {{"random_states", 5}}},
                      {"time", {{"start", 0.0}, {"stop", 2.0}, {"samples", 11}}}};
  std::ofstream(dir / "chain.json") << chain.dump(2);
  const std::string base = "run --config " + (dir / "chain.json").string();
  const int ja = run_cli(base + " --out " + (dir / "a").string(), dir / "a.log");
  const int jb = run_cli(base + " --out " + (dir / "b").string(), dir / "b.log");
  const int jc = run_cli(base + " --format csv --out " + (dir / "c").string(), dir / "c.log");
  if (ja != 0 || jb != 0 || jc != 0) problems.push_back("CLI runs did not exit 0");
  const std::string fa = slurp(dir / "a" / "c9_chain.json");
  const std::string fb = slurp(dir / "b" / "c9_chain.json");
  if (fa.empty() || without_wall_clock(fa) != without_wall_clock(fb)) {
    problems.push_back("CLI JSON differs between runs");
  }
  if (!csv_schema_exact(slurp(dir / "c" / "c9_chain.csv"), 11 * 3)) {
    problems.push_back("CSV schema mismatch");
  }

  // Exit codes: 0 valid, 1 violation, 2 configuration, 3 numerical.
  std::ofstream(dir / "bad.json") << R"({"family": "liouville", "gaussian": {"a": -1, "b": 1},
    "hamiltonian": {"c": 1, "d": 1}, "time": {"stop": 1, "samples": 3}})";
  std::ofstream(dir / "ring.json") << R"({"id": "ring", "family": "master",
    "time": {"stop": 1, "samples": 3},
    "chain": {"rates": [[1, -0.3333333333333333, -0.6666666666666666],
                        [-0.6666666666666666, 1, -0.3333333333333333],
                        [-0.3333333333333333, -0.6666666666666666, 1]]}})";
  std::ofstream(dir / "overflow.json") << R"({"id": "overflow", "family": "fokker_planck",
    "drift": {"coefficients": [0, 0, 0, 0, 1], "x_min": -6, "x_max": 6, "points": 60},
    "initial": {"mean": 0, "variance": 100}, "time": {"stop": 1, "samples": 3}})";
  const int bad = run_cli("run --config " + (dir / "bad.json").string(), dir / "bad.log");
  const int ring = run_cli("run --config " + (dir / "ring.json").string() + " --out " +
                               dir.string(),
                           dir / "ring.log");
  const int overflow = run_cli("run --config " + (dir / "overflow.json").string() +
                                   " --out " + dir.string(),
                               dir / "overflow.log");
  const int usage = run_cli("run", dir / "usage.log");
  BoundReport violated;
  BoundEntry entry;
  entry.valid = false;
  violated.entries.push_back(entry);
  const int violation = static_cast<int>(exit_code_for(violated));
  if (bad != 2 || ring != 2 || usage != 2) problems.push_back("configuration exit code != 2");
  if (overflow != 3) problems.push_back("numerical exit code != 3");
  if (violation != 1) problems.push_back("violation exit code != 1");

  std::ostringstream detail;
  detail << "repeat runs identical modulo " << kWallClockKey << ", CSV header '" << kCsvHeader
         << "', exit codes valid " << ja << " / violation " << violation << " / config "
         << bad << "," << ring << "," << usage << " / numerical " << overflow;
  for (const auto& p : problems) detail << "; " << p;
  fs::remove_all(dir);
  return {problems.empty(), detail.str()};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Outcome()>> criteria = {
      criterion1, criterion2, criterion3, criterion4, criterion5,
      criterion6, criterion7, criterion8, criterion9};
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      const int n = std::atoi(argv[++i]);
      if (n < 1 || n > static_cast<int>(criteria.size())) {
        std::cerr << "unknown criterion " << argv[i] << "\n";
        return 2;
      }
      selected.insert(n);
    } else {
      std::cerr << "usage: acceptance [--criterion N]...\n";
      return 2;
    }
  }
  if (selected.empty()) {
    for (int n = 1; n <= static_cast<int>(criteria.size()); ++n) selected.insert(n);
  }

  int failed = 0;
  for (int n : selected) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criteria[n - 1]();
    } catch (const std::exception& err) {
      outcome = {false, std::string("threw: ") + err.what()};
    }
    std::cout << (outcome.pass ? "[PASS]" : "[FAIL]") << " criterion " << n << ": "
              << outcome.detail << " (" << fmt("%.1f", seconds_since(t0)) << " s)"
              << std::endl;
    if (!outcome.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
