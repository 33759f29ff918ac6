#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "beamtrain/analysis.hpp"
#include "beamtrain/array_channel.hpp"
#include "beamtrain/errors.hpp"
#include "beamtrain/training.hpp"

using namespace beamtrain;

namespace {

std::uint64_t schedule_oracle(std::uint64_t budget, std::size_t l, std::size_t k) {
  double hbar = 0.5;
  for (std::size_t i = 2; i <= l; ++i) hbar += 1.0 / static_cast<double>(i);
  return static_cast<std::uint64_t>(
      std::ceil(static_cast<double>(budget - l) / (hbar * static_cast<double>(l + 1 - k))));
}

std::vector<Complex> operating_channels(double snr_scale = 1.0) {
  const GainProfile p = effective_gains(dft_codebook(64), snr_scale, 0.47);
  return p.effective;
}

}  // namespace

TEST_CASE("phase schedule", "[training]") {
  SECTION("operating point") {
    const PhaseSchedule s = phase_schedule(1280, 64);
    REQUIRE(s.n.size() == 63);
    CHECK(s.n.front() == 5);
    CHECK(s.n.back() == 144);
    for (std::size_t k = 1; k <= 63; ++k) CHECK(s.n[k - 1] == schedule_oracle(1280, 64, k));
    CHECK(s.total() <= 1280);
  }
  SECTION("two beams") {
    const PhaseSchedule s = phase_schedule(10, 2);
    REQUIRE(s.n.size() == 1);
    CHECK(s.n[0] == 4);
    CHECK(s.total() == 8);
  }
  SECTION("budget equal to the beam count gives empty phases") {
    const PhaseSchedule s = phase_schedule(16, 16);
    for (auto n : s.n) CHECK(n == 0);
    CHECK(s.total() == 0);
  }
  SECTION("errors") {
    CHECK_THROWS_AS(phase_schedule(63, 64), InsufficientBudget);
    CHECK_THROWS_AS(phase_schedule(100, 1), std::invalid_argument);
  }
  SECTION("random pairs stay within budget and are nondecreasing") {
    std::mt19937_64 gen(4);
    for (int rep = 0; rep < 300; ++rep) {
      const std::size_t l = 2 + gen() % 127;
      const auto cap = static_cast<std::uint64_t>(10.0 * static_cast<double>(l) * std::log(static_cast<double>(l)));
      const std::uint64_t budget = l + gen() % (std::max<std::uint64_t>(cap, l) - l + 1);
      const PhaseSchedule s = phase_schedule(budget, l);
      INFO("L " << l << " N " << budget);
      CHECK(s.total() <= budget);
      CHECK(std::is_sorted(s.n.begin(), s.n.end()));
    }
  }
}

TEST_CASE("noiseless training selects the strongest beam", "[training]") {
  const auto channels = operating_channels();
  const GainProfile p = effective_gains(dft_codebook(64), 1.0, 0.47);
  const NoiseModel noise(1.0, 0.6);
  const PhaseSchedule s = phase_schedule(1280, 64);

  TrainingEnvironment env(channels, noise, 1280, RandomStream(1), false);
  const TrainingResult a = run_adaptive(env, s);
  CHECK(a.selected == p.opt_index);
  REQUIRE(a.discard_order.size() == 63);
  // Without noise each phase drops the weakest survivor.
  for (std::size_t k = 1; k < a.discard_order.size(); ++k)
    CHECK(p.gains[a.discard_order[k - 1]] <= p.gains[a.discard_order[k]]);

  env.reset(RandomStream(2));
  const TrainingResult e = run_exhaustive(env);
  CHECK(e.selected == p.opt_index);
  for (auto used : e.symbols_used) CHECK(used == 20);
}

TEST_CASE("symmetric pair is split evenly", "[training]") {
  const std::vector<Complex> channels{Complex(0.8, 0.0), Complex(0.0, 0.8)};
  const NoiseModel noise(1.0, 1.0);
  const PhaseSchedule s = phase_schedule(40, 2);
  TrainingEnvironment env(channels, noise, 40, RandomStream(0));
  constexpr int runs = 100'000;
  int first = 0;
  for (int i = 0; i < runs; ++i) {
    env.reset(RandomStream(derive_seed(55, static_cast<std::uint64_t>(i))));
    if (run_adaptive(env, s).selected == 0) ++first;
  }
  CHECK(std::abs(static_cast<double>(first) / runs - 0.5) < 0.01);
}

TEST_CASE("ties with no signal are broken at random", "[training]") {
  const std::vector<Complex> channels(4, Complex(0.0));
  const NoiseModel noise(1.0, 1.0);
  TrainingEnvironment env(channels, noise, 4, RandomStream(0), false);
  std::vector<int> counts(4, 0);
  for (int i = 0; i < 4000; ++i) {
    env.reset(RandomStream(static_cast<std::uint64_t>(i)));
    ++counts[run_exhaustive(env).selected];
  }
  for (int c : counts) CHECK(std::abs(c - 1000) < 150);
}

TEST_CASE("two beams: successive rejects equals exhaustive search", "[training]") {
  const std::vector<Complex> channels{Complex(0.5, 0.1), Complex(0.3, -0.2)};
  const NoiseModel noise(1.0, 1.0);
  const PhaseSchedule s = phase_schedule(11, 2);
  REQUIRE(s.n[0] == 11 / 2);
  TrainingEnvironment adaptive(channels, noise, 11, RandomStream(0));
  TrainingEnvironment exhaustive(channels, noise, 11, RandomStream(0));
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    adaptive.reset(RandomStream(seed));
    exhaustive.reset(RandomStream(seed));
    const TrainingResult a = run_adaptive(adaptive, s);
    const TrainingResult e = run_exhaustive(exhaustive);
    CHECK(a.selected == e.selected);
    CHECK(a.symbols_used == e.symbols_used);
  }
}

TEST_CASE("allocation follows the phase schedule", "[training]") {
  const auto channels = operating_channels();
  const NoiseModel noise(1.0, std::pow(10.0, -0.2));
  const PhaseSchedule s = phase_schedule(1280, 64);
  TrainingEnvironment env(channels, noise, 1280, RandomStream(9));
  const TrainingResult r = run_adaptive(env, s);

  REQUIRE(r.discard_order.size() == 63);
  std::vector<std::size_t> all(r.discard_order);
  all.push_back(r.selected);
  std::sort(all.begin(), all.end());
  std::vector<std::size_t> expected(64);
  std::iota(expected.begin(), expected.end(), std::size_t{0});
  CHECK(all == expected);

  for (std::size_t k = 1; k <= 63; ++k) CHECK(r.symbols_used[r.discard_order[k - 1]] == s.n[k - 1]);
  CHECK(r.symbols_used[r.selected] == s.n.back());
  const auto spent = std::accumulate(r.symbols_used.begin(), r.symbols_used.end(), std::uint64_t{0});
  CHECK(spent == s.total());
  CHECK(spent <= 1280);
  CHECK(r.symbols_used[r.selected] > 20 * r.symbols_used[r.discard_order.front()]);
}

TEST_CASE("budget is never exceeded", "[training][property]") {
  std::mt19937_64 gen(12);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t l = 2 + gen() % 63;
    const std::uint64_t budget = l + gen() % (20 * l);
    const GainProfile p = effective_gains(dft_codebook(l), 1.0, 0.3);
    TrainingEnvironment env(p.effective, NoiseModel(1.0, 0.5), budget, RandomStream(gen()));
    const TrainingResult a = run_adaptive(env, phase_schedule(budget, l));
    CHECK(env.symbols_consumed() <= budget);
    env.reset(RandomStream(gen()));
    run_exhaustive(env);
    CHECK(env.symbols_consumed() <= budget);
    CHECK(a.selected < l);
  }
}

TEST_CASE("environment misuse", "[training]") {
  const std::vector<Complex> channels{Complex(1.0), Complex(0.5), Complex(0.2)};
  const NoiseModel noise(1.0, 1.0);
  TrainingEnvironment env(channels, noise, 30, RandomStream(0));

  CHECK_THROWS_AS(run_adaptive(env, phase_schedule(30, 4)), std::invalid_argument);
  CHECK_THROWS_AS(run_adaptive(env, phase_schedule(31, 3)), std::invalid_argument);

  run_exhaustive(env);
  CHECK_THROWS_AS(run_exhaustive(env), InvalidState);
  env.reset(RandomStream(1));
  CHECK_NOTHROW(run_adaptive(env, phase_schedule(30, 3)));

  env.reset(RandomStream(2));
  env.absorb_active(10);
  CHECK_THROWS_AS(env.absorb_active(1), InvalidState);

  std::vector<double> wrong(2);
  CHECK_THROWS_AS(env.active_statistics(wrong), std::invalid_argument);
  CHECK_THROWS_AS(env.discard(3), std::out_of_range);
  CHECK_THROWS_AS(TrainingEnvironment(std::span<const Complex>{}, noise, 5, RandomStream(0)),
                  std::invalid_argument);

  TrainingEnvironment tiny(channels, noise, 2, RandomStream(0));
  CHECK_THROWS_AS(run_exhaustive(tiny), InsufficientBudget);
}

TEST_CASE("accumulator snapshots track the environment", "[training]") {
  const std::vector<Complex> channels{Complex(1.0), Complex(0.0, 0.5)};
  const NoiseModel noise(1.0, 2.0);
  TrainingEnvironment env(channels, noise, 20, RandomStream(0), false);
  env.absorb_active(3);
  const BeamAccumulator acc = env.accumulator(1);
  CHECK(acc.count() == 3);
  CHECK(acc.sum() == Complex(0.0, 0.5) * 6.0);
  env.discard(0);
  CHECK_THROWS_AS(env.accumulator(0), std::invalid_argument);
}
