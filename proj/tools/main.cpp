#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "speedlimit/error.hpp"
#include "speedlimit/master_eq.hpp"
#include "speedlimit/scenario.hpp"

namespace {

namespace sl = speedlimit;

constexpr int kValid = static_cast<int>(sl::ExitCode::valid);
constexpr int kConfig = static_cast<int>(sl::ExitCode::config);
constexpr int kNumerical = static_cast<int>(sl::ExitCode::numerical);

struct Options {
  std::string config;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> parameter;
  std::vector<double> values;
};

sl::ScenarioConfig load(const Options& opt) {
  auto cfg = sl::parse_scenario_file(opt.config);
  if (opt.seed) {
    cfg.seed = *opt.seed;
    cfg.source["seed"] = *opt.seed;
  }
  if (opt.out) cfg.output_dir = *opt.out;
  if (opt.format) cfg.output_format = sl::parse_output_format(*opt.format);
  return cfg;
}

// Fails before any work is done if the output directory cannot take files.
void probe_output_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  const auto probe = dir / ".speedlimit-probe";
  std::ofstream out(probe);
  if (ec || !out) throw sl::ConfigError({"output directory " + dir.string() + " is not writable"});
  out.close();
  std::filesystem::remove(probe, ec);
}

int finish(const sl::ScenarioConfig& cfg, const sl::RunRecord& record) {
  const auto path = sl::emit(record, cfg.output_format, cfg.output_dir);
  const auto& report = record.report;
  std::cout << "scenario " << report.scenario_id << ": " << report.entries.size()
            << " bound entries, " << report.violation_count() << " violations, "
            << report.ordering_violation_count() << " ordering violations -> "
            << path.string() << "\n";
  return static_cast<int>(sl::exit_code_for(report));
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const sl::ConfigError& err) {
    std::cerr << err.what() << "\n";
    return kConfig;
  } catch (const sl::DetailedBalanceError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kConfig;
  } catch (const sl::NumericalError& err) {
    std::cerr << "numerical failure: " << err.what() << "\n";
    return kNumerical;
  } catch (const sl::DataError& err) {
    std::cerr << "numerical failure: " << err.what() << "\n";
    return kNumerical;
  } catch (const sl::Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kConfig;
  } catch (const std::filesystem::filesystem_error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kConfig;
  }
}

}  // namespace

int main(int argc, char** argv) {
  spdlog::set_level(spdlog::level::warn);
  CLI::App app{"Speed-limit bound verification for classical, Fokker-Planck, "
               "master-equation and quantum dynamics"};
  app.require_subcommand(1);

  Options opt;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config, "Scenario file (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", opt.out, "Output directory (overrides output.dir)");
    sub->add_option("--format", opt.format, "Output format (overrides output.format)")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--seed", opt.seed, "Seed for random chain generation");
  };

  auto* run = app.add_subcommand("run", "Run a scenario and audit every bound");
  add_common(run);
  auto* validate = app.add_subcommand("validate", "Check a scenario file without running it");
  add_common(validate);
  auto* sweep = app.add_subcommand("sweep", "Run a scenario over an alpha or scale grid");
  add_common(sweep);
  sweep->add_option("--parameter", opt.parameter, "alpha or scale")
      ->check(CLI::IsMember({"alpha", "scale"}));
  sweep->add_option("--values", opt.values, "Sweep values")->delimiter(',');
  bool verbose = false;
  app.add_flag("-v,--verbose", verbose, "Log progress");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kValid : kConfig;
  }
  if (verbose) spdlog::set_level(spdlog::level::info);

  if (*validate) {
    return guarded([&] {
      const auto cfg = load(opt);
      std::cout << opt.config << ": valid " << sl::family_name(cfg) << " scenario '"
                << cfg.id << "'\n";
      return int{kValid};
    });
  }
  if (*run) {
    return guarded([&] {
      const auto cfg = load(opt);
      probe_output_dir(cfg.output_dir);
      return finish(cfg, sl::run_scenario(cfg));
    });
  }
  return guarded([&] {
    const auto cfg = load(opt);
    sl::SweepConfig sc = cfg.sweep.value_or(sl::SweepConfig{});
    if (opt.parameter) {
      sc.parameter = *opt.parameter == "scale" ? sl::SweepParameter::scale
                                               : sl::SweepParameter::alpha;
    }
    if (!opt.values.empty()) sc.values = opt.values;
    if (sc.values.empty()) {
      throw sl::ConfigError({"sweep.values is required (or pass --values)"});
    }
    for (double v : sc.values) {
      if (!(v > 0.0)) throw sl::ConfigError({"sweep values must be > 0"});
    }
    probe_output_dir(cfg.output_dir);
    return finish(cfg, sl::run_sweep(cfg, sc));
  });
}
