#pragma once

// Experiment configuration: a flat JSON object.
//
//   {
//     "l_beams": 64,               // codebook size (= antenna count), >= 2
//     "phi": 0.47,                 // radians in [-pi/2, pi/2], or "random"
//     "phi_seed": 7,               // seed for "random" phi (default: master_seed)
//     "alpha": 1.0,                // path coefficient: number or [re, im]
//     "snr_db": [-2.0],
//     "budget": [1280],
//     "algorithms": ["exhaustive", "adaptive"],
//     "trials": 10000,             // required
//     "master_seed": 1,            // required
//     "output_path": "results.csv",
//     "workers": 0                 // 0 = hardware concurrency
//   }

#include <complex>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "beamtrain/montecarlo.hpp"

namespace beamtrain {

struct ExperimentConfig {
  std::size_t l_beams = 64;
  std::optional<double> phi = 0.47;  ///< nullopt: drawn uniformly from phi_seed
  std::optional<std::uint64_t> phi_seed;
  Complex alpha{1.0, 0.0};
  std::vector<double> snr_db{-2.0};
  std::vector<std::uint64_t> budget{1280};
  std::vector<Algorithm> algorithms{Algorithm::exhaustive, Algorithm::adaptive};
  std::uint64_t trials = 0;
  std::uint64_t master_seed = 0;
  std::string output_path = "results.csv";
  std::size_t workers = 0;

  /// The angle of arrival actually simulated.
  double resolved_phi() const;
};

/// Every violation found in a configuration document.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace beamtrain
