#include "beamtrain/montecarlo.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <exception>
#include <thread>

#include "beamtrain/analysis.hpp"
#include "beamtrain/array_channel.hpp"
#include "beamtrain/errors.hpp"
#include "beamtrain/random.hpp"

namespace beamtrain {

const char* algorithm_name(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::exhaustive:
      return "exhaustive";
    case Algorithm::adaptive:
      return "adaptive";
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  if (name == "exhaustive") return Algorithm::exhaustive;
  if (name == "adaptive") return Algorithm::adaptive;
  return std::nullopt;
}

NoiseModel noise_for_snr(double snr_db) { return NoiseModel(1.0, std::pow(10.0, snr_db / 10.0)); }

ResolvedScenario resolve(const Scenario& scenario) {
  if (scenario.budget < scenario.l_beams)
    throw InsufficientBudget("budget " + std::to_string(scenario.budget) +
                             " is below the beam count " + std::to_string(scenario.l_beams));
  ResolvedScenario r;
  r.noise = noise_for_snr(scenario.snr_db);
  const GainProfile gains = effective_gains(dft_codebook(scenario.l_beams), scenario.alpha, scenario.phi);
  if (scenario.l_beams >= 2) {
    std::vector<double> xi;
    xi.reserve(gains.gains.size());
    for (double g : gains.gains) xi.push_back(normalized_gain(r.noise, g));
    const GapProfile gp = gap_profile(xi);
    if (gp.degenerate())
      throw DegenerateProfile("optimal beam " + std::to_string(gp.opt_index) + " tied with beam " +
                              std::to_string(gp.second_best));
  }
  r.channels = gains.effective;
  r.gains = gains.gains;
  r.opt_index = gains.opt_index;
  r.budget = scenario.budget;
  r.algorithm = scenario.algorithm;
  return r;
}

std::uint64_t scenario_key(const Scenario& s) {
  std::uint64_t key = mix64(s.l_beams);
  const auto fold = [&key](std::uint64_t v) { key = mix64(key ^ v); };
  fold(std::bit_cast<std::uint64_t>(s.alpha.real()));
  fold(std::bit_cast<std::uint64_t>(s.alpha.imag()));
  fold(std::bit_cast<std::uint64_t>(s.phi));
  fold(std::bit_cast<std::uint64_t>(s.snr_db));
  fold(s.budget);
  fold(static_cast<std::uint64_t>(s.algorithm));
  return key;
}

MisalignmentEstimate wilson_estimate(std::uint64_t misaligned, std::uint64_t trials,
                                     std::uint64_t seed) {
  if (trials == 0) throw std::invalid_argument("trials must be at least 1");
  if (misaligned > trials) throw std::invalid_argument("more misalignments than trials");
  constexpr double z = 1.959963984540054;
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(misaligned) / n;
  const double z2n = z * z / n;
  const double center = (p + z2n / 2.0) / (1.0 + z2n);
  const double half = z / (1.0 + z2n) * std::sqrt(p * (1.0 - p) / n + z2n / (4.0 * n));

  MisalignmentEstimate e;
  e.p_hat = p;
  e.misaligned = misaligned;
  e.trials = trials;
  e.seed = seed;
  e.ci_low = std::min(std::max(center - half, 0.0), p);
  e.ci_high = std::max(std::min(center + half, 1.0), p);
  return e;
}

namespace {

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream_key, std::uint64_t trial) {
  return derive_seed(derive_seed(seed, stream_key), trial);
}

std::optional<PhaseSchedule> schedule_for(const ResolvedScenario& r) {
  if (r.algorithm != Algorithm::adaptive) return std::nullopt;
  return phase_schedule(r.budget, r.channels.size());
}

TrainingResult run_in(TrainingEnvironment& env, const std::optional<PhaseSchedule>& schedule) {
  return schedule ? run_adaptive(env, *schedule) : run_exhaustive(env);
}

std::size_t worker_count(RunOptions options, std::uint64_t trials) {
  std::size_t w = options.workers;
  if (w == 0) w = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  return static_cast<std::size_t>(std::min<std::uint64_t>(w, trials));
}

}  // namespace

TrainingResult run_trial(const ResolvedScenario& resolved, std::uint64_t seed,
                         std::uint64_t stream_key, std::uint64_t trial) {
  TrainingEnvironment env(resolved.channels, resolved.noise, resolved.budget,
                          RandomStream(stream_seed(seed, stream_key, trial)), resolved.noise_enabled);
  return run_in(env, schedule_for(resolved));
}

MisalignmentEstimate estimate_misalignment(const ResolvedScenario& resolved, std::uint64_t trials,
                                           std::uint64_t seed, std::uint64_t stream_key,
                                           RunOptions options) {
  if (trials == 0) throw std::invalid_argument("trials must be at least 1");
  if (resolved.budget < resolved.channels.size())
    throw InsufficientBudget("budget below the beam count");
  const auto schedule = schedule_for(resolved);

  const std::size_t workers = worker_count(options, trials);
  std::vector<std::uint64_t> counts(workers, 0);
  std::vector<std::exception_ptr> errors(workers);

  // Worker w owns the contiguous trial block [begin(w), begin(w+1)).
  const auto block_begin = [&](std::size_t w) { return trials * w / workers; };
  const auto work = [&](std::size_t w) {
    try {
      TrainingEnvironment env(resolved.channels, resolved.noise, resolved.budget, RandomStream(0),
                              resolved.noise_enabled);
      std::uint64_t misses = 0;
      for (std::uint64_t t = block_begin(w); t < block_begin(w + 1); ++t) {
        env.reset(RandomStream(stream_seed(seed, stream_key, t)));
        if (run_in(env, schedule).selected != resolved.opt_index) ++misses;
      }
      counts[w] = misses;
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::uint64_t misaligned = 0;
  for (std::uint64_t c : counts) misaligned += c;
  return wilson_estimate(misaligned, trials, seed);
}

MisalignmentEstimate estimate_misalignment(const Scenario& scenario, std::uint64_t trials,
                                           std::uint64_t seed, RunOptions options) {
  if (trials == 0) throw std::invalid_argument("trials must be at least 1");
  return estimate_misalignment(resolve(scenario), trials, seed, scenario_key(scenario), options);
}

SweepResult sweep(std::span<const Scenario> scenarios, std::uint64_t trials, std::uint64_t seed,
                  RunOptions options) {
  if (scenarios.empty()) throw std::invalid_argument("sweep needs at least one scenario");
  SweepResult result;
  result.estimates.reserve(scenarios.size());
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    try {
      result.estimates.push_back(estimate_misalignment(scenarios[i], trials, seed, options));
    } catch (const std::exception& e) {
      throw SweepError(i, e.what());
    }
  }
  return result;
}

SlopeFit fit_exponent(std::span<const std::pair<std::uint64_t, MisalignmentEstimate>> estimates) {
  SlopeFit fit;
  for (const auto& [budget, est] : estimates) {
    if (est.p_hat > 0.0)
      fit.points.emplace_back(static_cast<double>(budget), std::log(est.p_hat));
    else
      ++fit.excluded;
  }
  if (fit.points.size() < 2)
    throw InsufficientData("slope fit needs at least two estimates with p_hat > 0, got " +
                           std::to_string(fit.points.size()));

  const double n = static_cast<double>(fit.points.size());
  double mean_x = 0.0, mean_y = 0.0;
  for (const auto& [x, y] : fit.points) {
    mean_x += x;
    mean_y += y;
  }
  mean_x /= n;
  mean_y /= n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : fit.points) {
    sxx += (x - mean_x) * (x - mean_x);
    sxy += (x - mean_x) * (y - mean_y);
  }
  if (!(sxx > 0.0)) throw InsufficientData("slope fit needs at least two distinct budgets");
  fit.slope = sxy / sxx;
  fit.intercept = mean_y - fit.slope * mean_x;
  for (const auto& [x, y] : fit.points) {
    const double r = y - (fit.intercept + fit.slope * x);
    fit.residual += r * r;
  }
  return fit;
}

}  // namespace beamtrain
