// beamtrain: beam-training experiments from a JSON config.
//
//   beamtrain run <config>        Monte Carlo sweep, writes CSV + prints summary
//   beamtrain gains <config>      per-beam gains and symbol allocation (CSV on stdout)
//   beamtrain exponents <config>  gap profile, hardness and asymptotic rates

#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "beamtrain/config.hpp"
#include "beamtrain/experiment.hpp"
#include "beamtrain/kernels.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Beam-training simulator: exhaustive search vs successive rejects"};
  app.require_subcommand(1);

  std::string kernel_level;
  app.add_option("--kernels", kernel_level, "Kernel level: scalar or avx2 (default: best available)");

  std::string config_path;
  std::size_t workers = 0;
  std::string output_override;

  auto* run = app.add_subcommand("run", "Run the full experiment and write the result CSV");
  run->add_option("config", config_path, "Configuration file")->required();
  run->add_option("-w,--workers", workers, "Worker threads (0 = config/auto)");
  run->add_option("-o,--output", output_override, "Override output_path");

  auto* gains = app.add_subcommand("gains", "Per-beam gains and symbol allocation of one run");
  gains->add_option("config", config_path, "Configuration file")->required();

  auto* exponents = app.add_subcommand("exponents", "Gap profile and asymptotic exponents");
  exponents->add_option("config", config_path, "Configuration file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (!kernel_level.empty()) {
      const auto level = beamtrain::kernels::parse_level(kernel_level);
      if (!level) throw std::invalid_argument("unknown kernel level '" + kernel_level + "'");
      beamtrain::kernels::select(*level);
    }
    beamtrain::ExperimentConfig config = beamtrain::load_config(config_path);

    if (*run) {
      if (!output_override.empty()) config.output_path = output_override;
      const auto rows = beamtrain::run_experiment(config, {workers});
      beamtrain::write_csv(rows, config.output_path);
      std::cout << beamtrain::summarize(config, rows) << "\nwrote " << config.output_path << '\n';
    } else if (*gains) {
      beamtrain::write_gains(config, std::cout);
    } else if (*exponents) {
      beamtrain::write_exponents(config, std::cout);
    }
  } catch (const beamtrain::ConfigError& e) {
    std::cerr << "beamtrain: invalid configuration " << config_path << '\n';
    for (const auto& v : e.violations()) std::cerr << "  " << v << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "beamtrain: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
