#include "beamtrain/statistic.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "beamtrain/errors.hpp"
#include "beamtrain/kernels.hpp"

namespace beamtrain {

NoiseModel::NoiseModel(double sigma2, double p_t) : sigma2_(sigma2), p_t_(p_t) {
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2))
    throw std::invalid_argument("noise power must be positive and finite");
  if (!(p_t > 0.0) || !std::isfinite(p_t))
    throw std::invalid_argument("transmit power must be positive and finite");
}

double NoiseModel::noise_scale(std::uint64_t n) const {
  return std::sqrt(sigma2_ * static_cast<double>(n) * p_t_ / 2.0);
}

double noncentrality(std::uint64_t k_symbols, const NoiseModel& noise, double gain) {
  return 2.0 * static_cast<double>(k_symbols) * noise.p_t() * gain / noise.sigma2();
}

double normalized_gain(const NoiseModel& noise, double gain) {
  return 2.0 * noise.p_t() * gain / noise.sigma2();
}

double sample_ncx2_2dof(double lambda, RandomStream& rng) {
  if (!(lambda >= 0.0)) throw std::invalid_argument("non-centrality must be non-negative");
  const double g1 = rng.normal();
  const double g2 = rng.normal();
  const double shifted = g1 + std::sqrt(lambda);
  return shifted * shifted + g2 * g2;
}

BeamAccumulator BeamAccumulator::from_state(Complex h_eff, Complex sum, std::uint64_t count) {
  if (count == 0 && sum != Complex{}) throw std::invalid_argument("empty accumulator with nonzero sum");
  BeamAccumulator acc(h_eff);
  acc.m_ = sum;
  acc.k_ = count;
  return acc;
}

void BeamAccumulator::absorb_with(std::uint64_t n_new, const NoiseModel& noise, double z_re,
                                  double z_im) {
  if (n_new == 0) return;
  double m_re = m_.real();
  double m_im = m_.imag();
  const double h_re = h_eff_.real();
  const double h_im = h_eff_.imag();
  kernels::active().absorb(&m_re, &m_im, &h_re, &h_im, &z_re, &z_im, 1, noise.signal_scale(n_new),
                           noise.noise_scale(n_new));
  m_ = {m_re, m_im};
  k_ += n_new;
}

void BeamAccumulator::absorb(std::uint64_t n_new, const NoiseModel& noise, RandomStream& rng) {
  if (n_new == 0) return;
  const double z_re = rng.normal();
  const double z_im = rng.normal();
  absorb_with(n_new, noise, z_re, z_im);
}

void BeamAccumulator::absorb_noiseless(std::uint64_t n_new, const NoiseModel& noise) {
  absorb_with(n_new, noise, 0.0, 0.0);
}

BeamAccumulator absorb_symbols(BeamAccumulator acc, std::uint64_t n_new, const NoiseModel& noise,
                               RandomStream& rng) {
  acc.absorb(n_new, noise, rng);
  return acc;
}

TestStatistic statistic(const BeamAccumulator& acc, const NoiseModel& noise) {
  if (acc.count() == 0) throw InvalidState("statistic undefined before any symbol is received");
  const double m_re = acc.sum().real();
  const double m_im = acc.sum().imag();
  TestStatistic t;
  t.k = acc.count();
  kernels::active().energy(&m_re, &m_im, 1, noise.statistic_denominator(acc.count()), &t.value);
  return t;
}

}  // namespace beamtrain
