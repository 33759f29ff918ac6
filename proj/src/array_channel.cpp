#include "beamtrain/array_channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "beamtrain/kernels.hpp"

namespace beamtrain {

namespace {

constexpr double kNormTolerance = 1e-12;

void check_angle(double phi) {
  if (!(phi >= -std::numbers::pi / 2 && phi <= std::numbers::pi / 2))
    throw std::invalid_argument("angle of arrival outside [-pi/2, pi/2]: " + std::to_string(phi));
}

void check_antennas(std::size_t n) {
  if (n == 0) throw std::invalid_argument("antenna count must be at least 1");
}

}  // namespace

SteeringVector::SteeringVector(double phi, std::size_t n_antennas) : phi_(phi) {
  check_angle(phi);
  check_antennas(n_antennas);
  const double s = std::sin(phi);
  entries_.reserve(n_antennas);
  for (std::size_t k = 0; k < n_antennas; ++k)
    entries_.push_back(std::polar(1.0, std::numbers::pi * static_cast<double>(k) * s));
}

ChannelVector::ChannelVector(Complex alpha, double phi, std::size_t n_antennas)
    : alpha_(alpha), phi_(phi) {
  const SteeringVector u(phi, n_antennas);
  entries_.reserve(n_antennas);
  for (const Complex& e : u.entries()) entries_.push_back(alpha * std::conj(e));
}

BeamCodebook::BeamCodebook(std::vector<std::vector<Complex>> beams, std::vector<double> theta)
    : beams_(std::move(beams)), theta_(std::move(theta)) {
  if (beams_.empty()) throw std::invalid_argument("codebook needs at least one beam");
  if (!theta_.empty() && theta_.size() != beams_.size())
    throw std::invalid_argument("theta length differs from beam count");
  const std::size_t n = beams_.front().size();
  check_antennas(n);
  for (std::size_t l = 0; l < beams_.size(); ++l) {
    const auto& beam = beams_[l];
    if (beam.size() != n) throw std::invalid_argument("beams differ in length");
    double norm2 = 0.0;
    double modulus = -1.0;
    for (const Complex& e : beam) {
      const double a = std::abs(e);
      norm2 += a * a;
      if (a == 0.0) continue;
      if (modulus < 0.0) modulus = a;
      if (std::abs(a - modulus) > kNormTolerance * modulus)
        throw std::invalid_argument("beam " + std::to_string(l) + " violates constant modulus");
    }
    if (std::abs(norm2 - 1.0) > kNormTolerance)
      throw std::invalid_argument("beam " + std::to_string(l) + " is not unit norm");
  }

  const std::size_t count = beams_.size();
  packed_re_.resize(count * n);
  packed_im_.resize(count * n);
  for (std::size_t l = 0; l < count; ++l) {
    for (std::size_t k = 0; k < n; ++k) {
      packed_re_[k * count + l] = beams_[l][k].real();
      packed_im_[k * count + l] = beams_[l][k].imag();
    }
  }
}

BeamCodebook BeamCodebook::permuted(std::span<const std::size_t> perm) const {
  if (perm.size() != beams_.size()) throw std::invalid_argument("permutation size mismatch");
  std::vector<std::vector<Complex>> beams;
  std::vector<double> theta;
  beams.reserve(perm.size());
  for (std::size_t i : perm) {
    beams.push_back(beams_.at(i));
    if (!theta_.empty()) theta.push_back(theta_[i]);
  }
  return BeamCodebook(std::move(beams), std::move(theta));
}

BeamCodebook dft_codebook(std::size_t l_beams) {
  if (l_beams == 0) throw std::invalid_argument("codebook size must be at least 1");
  const double scale = 1.0 / std::sqrt(static_cast<double>(l_beams));
  std::vector<std::vector<Complex>> beams(l_beams);
  std::vector<double> theta(l_beams);
  for (std::size_t l = 0; l < l_beams; ++l) {
    theta[l] = -0.5 + static_cast<double>(l) / static_cast<double>(l_beams);
    beams[l].reserve(l_beams);
    for (std::size_t k = 0; k < l_beams; ++k)
      beams[l].push_back(
          std::polar(scale, -2.0 * std::numbers::pi * static_cast<double>(k) * theta[l]));
  }
  return BeamCodebook(std::move(beams), std::move(theta));
}

GainProfile effective_gains(const BeamCodebook& codebook, const ChannelVector& channel) {
  const std::size_t n = codebook.antenna_count();
  if (channel.size() != n)
    throw std::invalid_argument("channel has " + std::to_string(channel.size()) +
                                " antennas, codebook expects " + std::to_string(n));
  std::vector<double> chan_re(n), chan_im(n);
  for (std::size_t k = 0; k < n; ++k) {
    chan_re[k] = channel.entries()[k].real();
    chan_im[k] = channel.entries()[k].imag();
  }

  const std::size_t count = codebook.beam_count();
  std::vector<double> out_re(count), out_im(count);
  const auto& kt = kernels::active();
  kt.project(codebook.packed_re().data(), codebook.packed_im().data(), chan_re.data(),
             chan_im.data(), count, n, out_re.data(), out_im.data());

  GainProfile profile;
  profile.gains.resize(count);
  kt.squared_magnitude(out_re.data(), out_im.data(), count, profile.gains.data());
  profile.effective.reserve(count);
  for (std::size_t l = 0; l < count; ++l) profile.effective.emplace_back(out_re[l], out_im[l]);
  profile.opt_index = argmax_lowest(profile.gains);
  return profile;
}

GainProfile effective_gains(const BeamCodebook& codebook, Complex alpha, double phi) {
  return effective_gains(codebook, ChannelVector(alpha, phi, codebook.antenna_count()));
}

std::size_t argmax_lowest(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("argmax of empty sequence");
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] > values[best]) best = i;
  return best;
}

}  // namespace beamtrain
