#pragma once

// Reproducible parallel estimation of misalignment probability.
//
// Trial t of a scenario draws from a stream seeded by
// derive_seed(derive_seed(master_seed, scenario_key), t), so results depend
// only on (scenario, trials, seed) and never on the worker count.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "beamtrain/statistic.hpp"
#include "beamtrain/training.hpp"

namespace beamtrain {

enum class Algorithm { exhaustive, adaptive };

const char* algorithm_name(Algorithm algorithm);
std::optional<Algorithm> parse_algorithm(std::string_view name);

/// DFT codebook of l_beams beams against a single path, sigma^2 = 1 and P_T = 10^(snr_db/10).
struct Scenario {
  std::size_t l_beams = 64;
  Complex alpha{1.0, 0.0};
  double phi = 0.47;
  double snr_db = -2.0;
  std::uint64_t budget = 1280;
  Algorithm algorithm = Algorithm::adaptive;
};

NoiseModel noise_for_snr(double snr_db);

/// Ground truth a training run is scored against.
struct ResolvedScenario {
  std::vector<Complex> channels;  ///< effective channel of each beam
  std::vector<double> gains;
  NoiseModel noise{1.0, 1.0};
  std::size_t opt_index = 0;
  std::uint64_t budget = 0;
  Algorithm algorithm = Algorithm::adaptive;
  bool noise_enabled = true;
};

/// Throws DegenerateProfile for a tied optimum and InsufficientBudget for N < L.
ResolvedScenario resolve(const Scenario& scenario);

/// Stable 64-bit identity of a scenario's content.
std::uint64_t scenario_key(const Scenario& scenario);

struct MisalignmentEstimate {
  double p_hat = 0.0;
  std::uint64_t misaligned = 0;
  std::uint64_t trials = 0;
  double ci_low = 0.0;
  double ci_high = 1.0;
  std::uint64_t seed = 0;
};

/// 95% Wilson score interval around misaligned / trials.
MisalignmentEstimate wilson_estimate(std::uint64_t misaligned, std::uint64_t trials,
                                     std::uint64_t seed);

struct RunOptions {
  std::size_t workers = 0;  ///< 0 = hardware concurrency
};

MisalignmentEstimate estimate_misalignment(const Scenario& scenario, std::uint64_t trials,
                                           std::uint64_t seed, RunOptions options = {});

/// Lower-level entry point for hand-built ground truths. No degeneracy check:
/// a tied optimum is scored against opt_index.
MisalignmentEstimate estimate_misalignment(const ResolvedScenario& resolved, std::uint64_t trials,
                                           std::uint64_t seed, std::uint64_t stream_key,
                                           RunOptions options = {});

/// One instrumented training run using stream `trial` of the scenario.
TrainingResult run_trial(const ResolvedScenario& resolved, std::uint64_t seed,
                         std::uint64_t stream_key, std::uint64_t trial);

/// Error raised by sweep(), naming the failing scenario.
class SweepError : public std::runtime_error {
 public:
  SweepError(std::size_t index, const std::string& what)
      : std::runtime_error("scenario " + std::to_string(index) + ": " + what), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

struct SweepResult {
  std::vector<MisalignmentEstimate> estimates;  ///< aligned with the input scenarios
};

SweepResult sweep(std::span<const Scenario> scenarios, std::uint64_t trials, std::uint64_t seed,
                  RunOptions options = {});

struct SlopeFit {
  std::vector<std::pair<double, double>> points;  ///< (N, ln p_hat) of usable estimates
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  ///< sum of squared residuals
  std::size_t excluded = 0;
};

/// Least-squares line through (N, ln p_hat), skipping p_hat == 0.
/// Throws InsufficientData for fewer than two usable points.
SlopeFit fit_exponent(std::span<const std::pair<std::uint64_t, MisalignmentEstimate>> estimates);

}  // namespace beamtrain
