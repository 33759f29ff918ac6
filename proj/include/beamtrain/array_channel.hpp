#pragma once

// Uniform linear array model: steering vectors, single-path channels, the DFT
// training codebook and the effective beamforming gains it produces.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace beamtrain {

using Complex = std::complex<double>;

/// Half-wavelength ULA response toward angle of arrival `phi`:
/// entry k = exp(j*pi*k*sin(phi)).
class SteeringVector {
 public:
  SteeringVector(double phi, std::size_t n_antennas);

  double phi() const { return phi_; }
  std::size_t size() const { return entries_.size(); }
  std::span<const Complex> entries() const { return entries_; }
  const Complex& operator[](std::size_t k) const { return entries_[k]; }

 private:
  double phi_;
  std::vector<Complex> entries_;
};

/// h = alpha * u(phi)^H.
class ChannelVector {
 public:
  ChannelVector(Complex alpha, double phi, std::size_t n_antennas);

  Complex alpha() const { return alpha_; }
  double phi() const { return phi_; }
  std::size_t size() const { return entries_.size(); }
  std::span<const Complex> entries() const { return entries_; }

 private:
  Complex alpha_;
  double phi_;
  std::vector<Complex> entries_;
};

/// Ordered set of unit-norm receive beams. Row l holds beam f_l.
class BeamCodebook {
 public:
  /// Beams must share a length, be unit norm, and have constant-modulus nonzero entries.
  BeamCodebook(std::vector<std::vector<Complex>> beams, std::vector<double> theta);

  std::size_t beam_count() const { return beams_.size(); }
  std::size_t antenna_count() const { return beams_.front().size(); }
  std::span<const Complex> beam(std::size_t l) const { return beams_[l]; }
  /// Grid parameter of each beam (empty for non-grid codebooks).
  std::span<const double> theta() const { return theta_; }

  /// Antenna-major split-complex copy used by the projection kernel.
  std::span<const double> packed_re() const { return packed_re_; }
  std::span<const double> packed_im() const { return packed_im_; }

  /// Same codebook with beams reordered: new beam i = old beam perm[i].
  BeamCodebook permuted(std::span<const std::size_t> perm) const;

 private:
  std::vector<std::vector<Complex>> beams_;
  std::vector<double> theta_;
  std::vector<double> packed_re_;
  std::vector<double> packed_im_;
};

/// f_l[k] = exp(-j*2*pi*k*theta_l) / sqrt(L), theta_l = -1/2 + (l-1)/L, with N_R = L.
BeamCodebook dft_codebook(std::size_t l_beams);

struct GainProfile {
  std::vector<double> gains;       ///< g_l = |h_l|^2
  std::vector<Complex> effective;  ///< h_l = f_l * h
  std::size_t opt_index = 0;       ///< argmax of gains, lowest index on ties
};

/// Effective channels and gains of every codebook beam toward a single path.
GainProfile effective_gains(const BeamCodebook& codebook, Complex alpha, double phi);

/// Same, for an already-built channel. Throws on antenna-count mismatch.
GainProfile effective_gains(const BeamCodebook& codebook, const ChannelVector& channel);

/// Index of the largest value, lowest index on ties.
std::size_t argmax_lowest(std::span<const double> values);

}  // namespace beamtrain
