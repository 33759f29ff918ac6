#include "kernels_internal.hpp"

namespace beamtrain::kernels::scalar {

void project(const double* beam_re, const double* beam_im, const double* chan_re,
             const double* chan_im, std::size_t n_beams, std::size_t n_antennas, double* out_re,
             double* out_im) {
  for (std::size_t l = 0; l < n_beams; ++l) {
    double acc_re = 0.0;
    double acc_im = 0.0;
    for (std::size_t k = 0; k < n_antennas; ++k) {
      const double fr = beam_re[k * n_beams + l];
      const double fi = beam_im[k * n_beams + l];
      const double prod_re = fr * chan_re[k] - fi * chan_im[k];
      const double prod_im = fr * chan_im[k] + fi * chan_re[k];
      acc_re = acc_re + prod_re;
      acc_im = acc_im + prod_im;
    }
    out_re[l] = acc_re;
    out_im[l] = acc_im;
  }
}

void absorb(double* m_re, double* m_im, const double* h_re, const double* h_im, const double* z_re,
            const double* z_im, std::size_t n, double signal_scale, double noise_scale) {
  for (std::size_t i = 0; i < n; ++i) {
    m_re[i] = m_re[i] + (h_re[i] * signal_scale + z_re[i] * noise_scale);
    m_im[i] = m_im[i] + (h_im[i] * signal_scale + z_im[i] * noise_scale);
  }
}

void energy(const double* m_re, const double* m_im, std::size_t n, double denom, double* out) {
  for (std::size_t i = 0; i < n; ++i) {
    const double mag2 = m_re[i] * m_re[i] + m_im[i] * m_im[i];
    out[i] = (2.0 * mag2) / denom;
  }
}

void squared_magnitude(const double* re, const double* im, std::size_t n, double* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = re[i] * re[i] + im[i] * im[i];
}

double min_value(const double* x, std::size_t n) {
  double best = x[0];
  for (std::size_t i = 1; i < n; ++i) best = x[i] < best ? x[i] : best;
  return best;
}

double max_value(const double* x, std::size_t n) {
  double best = x[0];
  for (std::size_t i = 1; i < n; ++i) best = x[i] > best ? x[i] : best;
  return best;
}

}  // namespace beamtrain::kernels::scalar
