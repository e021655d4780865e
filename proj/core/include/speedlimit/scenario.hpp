#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "speedlimit/hilbert.hpp"
#include "speedlimit/liouville.hpp"
#include "speedlimit/report.hpp"

namespace speedlimit {

struct TimeGrid {
  double start = 0.0;
  double stop = 1.0;
  int samples = 2;

  std::vector<double> values() const;
};

struct LiouvilleConfig {
  GaussianParams gaussian;
  double c = 1.0;
  double d = 1.0;
  std::vector<double> alpha{1.0};
  int nx = 48;
  int np = 48;
  int stencil_order = kDefaultStencilOrder;
  /// Relative to <rho|rho>; moments this small are a stationary state. The
  /// run raises it to the grid's own resolution of <rho|L^2|rho>.
  double stationary_tolerance = 1e-8;
};

struct FokkerPlanckConfig {
  std::vector<double> drift;  // W(x) coefficients, constant term first
  double x_min = -8.0;
  double x_max = 8.0;
  int points = 200;
  double initial_mean = 0.0;
  double initial_variance = 0.5;
  int stencil_order = kDefaultStencilOrder;
};

struct MasterConfig {
  std::optional<RealMatrix> rates;  // row-major in the file
  std::optional<RealVector> pi;
  int random_states = 0;            // > 0 selects a seeded random chain
  std::optional<RealVector> initial;  // defaults to all mass on state 0
};

struct QuantumConfig {
  Matrix hamiltonian;
  Vector state;
  double hbar = 1.0;
  /// Horizon of the orthogonalization search; defaults to the time grid stop.
  std::optional<double> search_time;
};

enum class SweepParameter { alpha, scale };

struct SweepConfig {
  SweepParameter parameter = SweepParameter::alpha;
  std::vector<double> values;
};

struct ScenarioConfig {
  std::string id = "scenario";
  std::variant<LiouvilleConfig, FokkerPlanckConfig, MasterConfig, QuantumConfig>
      family;
  TimeGrid time;
  std::optional<SweepConfig> sweep;
  std::uint64_t seed = 0;
  std::string output_dir = ".";
  OutputFormat output_format = OutputFormat::json;
  /// The document as read, echoed into every RunRecord.
  nlohmann::json source;
};

const char* family_name(const ScenarioConfig& cfg);

/// Validates a scenario document. Throws ConfigError carrying every
/// violation with its field path.
ScenarioConfig parse_scenario(const nlohmann::json& doc);
ScenarioConfig parse_scenario_file(const std::filesystem::path& path);

/// Builds the operator, decomposes, samples the overlap curves, audits every
/// applicable bound. Module errors propagate with the scenario id attached.
RunRecord run_scenario(const ScenarioConfig& cfg);

/// Runs one scenario per sweep value and merges the reports; entry and curve
/// labels are prefixed with "<parameter>=<value>/".
RunRecord run_sweep(const ScenarioConfig& cfg, const SweepConfig& sweep);

}  // namespace speedlimit
