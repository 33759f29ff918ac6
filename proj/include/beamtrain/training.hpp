#pragma once

// Exhaustive search and successive-rejects beam training against a simulated
// receiver. Algorithms only see the beams through their accumulators.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "beamtrain/random.hpp"
#include "beamtrain/statistic.hpp"

namespace beamtrain {

/// Cumulative per-surviving-beam symbol counts of the successive-rejects phases.
struct PhaseSchedule {
  std::size_t l_beams = 0;
  std::uint64_t budget = 0;
  std::vector<std::uint64_t> n;  ///< n[k-1] = n_k for k = 1..L-1

  /// Symbols consumed by a full run: n_1 + ... + n_{L-1} + n_{L-1}.
  std::uint64_t total() const;
};

/// n_k = ceil((N - L) / (logbar(L) * (L + 1 - k))). Throws InsufficientBudget when N < L.
PhaseSchedule phase_schedule(std::uint64_t budget, std::size_t l_beams);

/// Per-beam accumulators of one training run, stored split-complex over the
/// surviving beams so the kernels can update them in one pass.
class TrainingEnvironment {
 public:
  TrainingEnvironment(std::span<const Complex> channels, NoiseModel noise, std::uint64_t budget,
                      RandomStream rng, bool noise_enabled = true);

  /// Fresh run with a new stream; keeps buffers.
  void reset(RandomStream rng);

  std::size_t beam_count() const { return h_re_all_.size(); }
  std::uint64_t budget() const { return budget_; }
  std::uint64_t symbols_consumed() const { return consumed_; }
  const NoiseModel& noise() const { return noise_; }
  bool noise_enabled() const { return noise_enabled_; }
  RandomStream& rng() { return rng_; }

  std::span<const std::size_t> active() const { return active_; }
  std::span<const std::uint64_t> symbols_used() const { return used_; }

  /// Snapshot of a surviving beam's accumulator.
  BeamAccumulator accumulator(std::size_t beam) const;

  /// Every surviving beam receives n_new more symbols (noise drawn in beam order).
  void absorb_active(std::uint64_t n_new);

  /// Statistic of every surviving beam, aligned with active(). Returns false
  /// when the surviving beams have not received any symbol yet.
  bool active_statistics(std::span<double> out) const;

  /// Removes active()[position].
  void discard(std::size_t position);

 private:
  std::vector<double> h_re_all_, h_im_all_;
  NoiseModel noise_;
  std::uint64_t budget_;
  RandomStream rng_;
  bool noise_enabled_;

  std::vector<std::size_t> active_;
  std::vector<double> m_re_, m_im_, h_re_, h_im_;
  std::vector<double> z_re_, z_im_;
  std::vector<std::uint64_t> used_;
  std::uint64_t active_count_ = 0;
  std::uint64_t consumed_ = 0;
};

struct TrainingResult {
  std::size_t selected = 0;
  std::vector<std::size_t> discard_order;  ///< empty for exhaustive search
  std::vector<std::uint64_t> symbols_used;
};

/// floor(N/L) symbols per beam, argmax statistic, random tie-break.
TrainingResult run_exhaustive(TrainingEnvironment& env);

/// Successive rejects over L-1 phases, discarding the minimum cumulative
/// statistic after each one (random tie-break).
TrainingResult run_adaptive(TrainingEnvironment& env, const PhaseSchedule& schedule);

}  // namespace beamtrain
