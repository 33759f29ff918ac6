#pragma once

// Matched-filter processing output T_l(K) = 2|y_l s^H|^2 / (sigma^2 ||s||^2).
//
// Training symbols are the constant sqrt(P_T), so after K symbols the matched
// filter sum is m = h_l*K*P_T + w with w ~ CN(0, sigma^2*K*P_T). The
// accumulator keeps m and adds one aggregated complex Gaussian per absorb call,
// which is exact because the filter is linear in the per-symbol noise.

#include <complex>
#include <cstdint>

#include "beamtrain/random.hpp"

namespace beamtrain {

using Complex = std::complex<double>;

class NoiseModel {
 public:
  /// sigma2: total variance of each CN(0, sigma2) noise sample. p_t: power per symbol.
  NoiseModel(double sigma2, double p_t);

  double sigma2() const { return sigma2_; }
  double p_t() const { return p_t_; }

  /// Per-real-component standard deviation of the filtered noise after n symbols.
  double noise_scale(std::uint64_t n) const;
  /// Deterministic gain applied to h_l after n symbols (n * P_T).
  double signal_scale(std::uint64_t n) const { return static_cast<double>(n) * p_t_; }
  /// sigma^2 * ||s||^2 for k symbols.
  double statistic_denominator(std::uint64_t k) const {
    return sigma2_ * static_cast<double>(k) * p_t_;
  }

 private:
  double sigma2_;
  double p_t_;
};

/// lambda = 2*K*P_T*g / sigma^2.
double noncentrality(std::uint64_t k_symbols, const NoiseModel& noise, double gain);

/// xi = 2*P_T*g / sigma^2, so that lambda = K * xi.
double normalized_gain(const NoiseModel& noise, double gain);

/// One draw of a non-central chi-square with 2 degrees of freedom:
/// (G1 + sqrt(lambda))^2 + G2^2.
double sample_ncx2_2dof(double lambda, RandomStream& rng);

struct TestStatistic {
  double value = 0.0;
  std::uint64_t k = 0;
};

/// Running matched-filter state of one beam.
class BeamAccumulator {
 public:
  explicit BeamAccumulator(Complex h_eff) : h_eff_(h_eff) {}

  /// Accumulator holding an existing matched-filter state (sum == 0 when count == 0).
  static BeamAccumulator from_state(Complex h_eff, Complex sum, std::uint64_t count);

  Complex sum() const { return m_; }
  std::uint64_t count() const { return k_; }
  Complex channel() const { return h_eff_; }

  /// Receive n_new more symbols. Draws the real then the imaginary noise component.
  void absorb(std::uint64_t n_new, const NoiseModel& noise, RandomStream& rng);

  /// Receive n_new symbols with the noise term suppressed.
  void absorb_noiseless(std::uint64_t n_new, const NoiseModel& noise);

  /// Receive n_new symbols with caller-supplied standard normal noise components.
  void absorb_with(std::uint64_t n_new, const NoiseModel& noise, double z_re, double z_im);

 private:
  Complex m_{0.0, 0.0};
  std::uint64_t k_ = 0;
  Complex h_eff_;
};

BeamAccumulator absorb_symbols(BeamAccumulator acc, std::uint64_t n_new, const NoiseModel& noise,
                               RandomStream& rng);

/// T = 2|m|^2 / (sigma^2 * k * P_T). Throws InvalidState when k == 0.
TestStatistic statistic(const BeamAccumulator& acc, const NoiseModel& noise);

}  // namespace beamtrain
