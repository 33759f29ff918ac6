#include "beamtrain/training.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "beamtrain/analysis.hpp"
#include "beamtrain/errors.hpp"
#include "beamtrain/kernels.hpp"

namespace beamtrain {

std::uint64_t PhaseSchedule::total() const {
  if (n.empty()) return 0;
  return std::accumulate(n.begin(), n.end(), std::uint64_t{0}) + n.back();
}

PhaseSchedule phase_schedule(std::uint64_t budget, std::size_t l_beams) {
  if (l_beams < 2) throw std::invalid_argument("successive rejects needs at least two beams");
  if (budget < l_beams)
    throw InsufficientBudget("budget " + std::to_string(budget) + " is below the beam count " +
                             std::to_string(l_beams));
  const double lb = logbar(l_beams);
  const double spare = static_cast<double>(budget - l_beams);

  PhaseSchedule s;
  s.l_beams = l_beams;
  s.budget = budget;
  s.n.reserve(l_beams - 1);
  for (std::size_t k = 1; k < l_beams; ++k) {
    const double share = spare / (lb * static_cast<double>(l_beams + 1 - k));
    s.n.push_back(static_cast<std::uint64_t>(std::ceil(share)));
  }
  if (s.total() > budget)
    throw std::logic_error("phase schedule exceeds budget: " + std::to_string(s.total()) + " > " +
                           std::to_string(budget));
  return s;
}

TrainingEnvironment::TrainingEnvironment(std::span<const Complex> channels, NoiseModel noise,
                                         std::uint64_t budget, RandomStream rng,
                                         bool noise_enabled)
    : noise_(noise), budget_(budget), rng_(std::move(rng)), noise_enabled_(noise_enabled) {
  if (channels.empty()) throw std::invalid_argument("training needs at least one beam");
  h_re_all_.reserve(channels.size());
  h_im_all_.reserve(channels.size());
  for (const Complex& h : channels) {
    h_re_all_.push_back(h.real());
    h_im_all_.push_back(h.imag());
  }
  reset(rng_);
}

void TrainingEnvironment::reset(RandomStream rng) {
  rng_ = std::move(rng);
  const std::size_t n = beam_count();
  active_.resize(n);
  std::iota(active_.begin(), active_.end(), std::size_t{0});
  h_re_ = h_re_all_;
  h_im_ = h_im_all_;
  m_re_.assign(n, 0.0);
  m_im_.assign(n, 0.0);
  z_re_.assign(n, 0.0);
  z_im_.assign(n, 0.0);
  used_.assign(n, 0);
  active_count_ = 0;
  consumed_ = 0;
}

BeamAccumulator TrainingEnvironment::accumulator(std::size_t beam) const {
  for (std::size_t i = 0; i < active_.size(); ++i) {
    if (active_[i] != beam) continue;
    return BeamAccumulator::from_state({h_re_[i], h_im_[i]}, {m_re_[i], m_im_[i]}, active_count_);
  }
  throw std::invalid_argument("beam " + std::to_string(beam) + " is not active");
}

void TrainingEnvironment::absorb_active(std::uint64_t n_new) {
  if (n_new == 0 || active_.empty()) return;
  const std::size_t n = active_.size();
  const std::uint64_t cost = n_new * n;
  if (consumed_ + cost > budget_)
    throw InvalidState("absorbing " + std::to_string(cost) + " symbols would exceed the budget of " +
                       std::to_string(budget_));
  if (noise_enabled_) {
    for (std::size_t i = 0; i < n; ++i) {
      z_re_[i] = rng_.normal();
      z_im_[i] = rng_.normal();
    }
  } else {
    std::fill_n(z_re_.begin(), n, 0.0);
    std::fill_n(z_im_.begin(), n, 0.0);
  }
  kernels::active().absorb(m_re_.data(), m_im_.data(), h_re_.data(), h_im_.data(), z_re_.data(),
                           z_im_.data(), n, noise_.signal_scale(n_new), noise_.noise_scale(n_new));
  for (std::size_t beam : active_) used_[beam] += n_new;
  active_count_ += n_new;
  consumed_ += cost;
}

bool TrainingEnvironment::active_statistics(std::span<double> out) const {
  if (out.size() != active_.size()) throw std::invalid_argument("statistics buffer size mismatch");
  if (active_count_ == 0) return false;
  kernels::active().energy(m_re_.data(), m_im_.data(), active_.size(),
                           noise_.statistic_denominator(active_count_), out.data());
  return true;
}

void TrainingEnvironment::discard(std::size_t position) {
  if (position >= active_.size()) throw std::out_of_range("discard position out of range");
  const auto at = [position](auto& v) { v.erase(v.begin() + static_cast<std::ptrdiff_t>(position)); };
  at(active_);
  at(m_re_);
  at(m_im_);
  at(h_re_);
  at(h_im_);
}

namespace {

enum class Extreme { min, max };

// Position of the extreme value; uniform among ties, drawing from rng only when tied.
std::size_t pick_extreme(std::span<const double> values, Extreme which, RandomStream& rng) {
  const auto& kt = kernels::active();
  const double target = which == Extreme::min ? kt.min_value(values.data(), values.size())
                                              : kt.max_value(values.data(), values.size());
  std::size_t ties = 0;
  std::size_t first = values.size();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] != target) continue;
    if (ties++ == 0) first = i;
  }
  if (ties == 1) return first;
  std::uint64_t pick = rng.below(ties);
  for (std::size_t i = first; i < values.size(); ++i) {
    if (values[i] != target) continue;
    if (pick-- == 0) return i;
  }
  return first;
}

std::size_t pick_uniform(std::size_t n, RandomStream& rng) {
  return n == 1 ? 0 : static_cast<std::size_t>(rng.below(n));
}

void require_fresh(const TrainingEnvironment& env) {
  if (env.symbols_consumed() != 0 || env.active().size() != env.beam_count())
    throw InvalidState("training environment was already used; call reset()");
}

}  // namespace

TrainingResult run_exhaustive(TrainingEnvironment& env) {
  require_fresh(env);
  const std::size_t l_beams = env.beam_count();
  if (env.budget() < l_beams)
    throw InsufficientBudget("budget " + std::to_string(env.budget()) +
                             " is below the beam count " + std::to_string(l_beams));
  env.absorb_active(env.budget() / l_beams);

  std::vector<double> stats(l_beams);
  env.active_statistics(stats);
  TrainingResult r;
  r.selected = env.active()[pick_extreme(stats, Extreme::max, env.rng())];
  r.symbols_used.assign(env.symbols_used().begin(), env.symbols_used().end());
  return r;
}

TrainingResult run_adaptive(TrainingEnvironment& env, const PhaseSchedule& schedule) {
  require_fresh(env);
  if (schedule.l_beams != env.beam_count() || schedule.budget != env.budget() ||
      schedule.n.size() + 1 != schedule.l_beams)
    throw std::invalid_argument("phase schedule does not match the training environment");

  TrainingResult r;
  r.discard_order.reserve(schedule.l_beams - 1);
  std::vector<double> stats(env.beam_count());
  std::uint64_t previous = 0;
  for (std::uint64_t n_k : schedule.n) {
    env.absorb_active(n_k - previous);
    previous = n_k;

    const std::span<double> current(stats.data(), env.active().size());
    const std::size_t pos = env.active_statistics(current)
                                ? pick_extreme(current, Extreme::min, env.rng())
                                : pick_uniform(current.size(), env.rng());
    r.discard_order.push_back(env.active()[pos]);
    env.discard(pos);
  }
  r.selected = env.active().front();
  r.symbols_used.assign(env.symbols_used().begin(), env.symbols_used().end());
  return r;
}

}  // namespace beamtrain
