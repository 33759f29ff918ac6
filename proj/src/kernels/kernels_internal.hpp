#pragma once

#include <cstddef>

namespace beamtrain::kernels::scalar {

void project(const double* beam_re, const double* beam_im, const double* chan_re,
             const double* chan_im, std::size_t n_beams, std::size_t n_antennas, double* out_re,
             double* out_im);
void absorb(double* m_re, double* m_im, const double* h_re, const double* h_im, const double* z_re,
            const double* z_im, std::size_t n, double signal_scale, double noise_scale);
void energy(const double* m_re, const double* m_im, std::size_t n, double denom, double* out);
void squared_magnitude(const double* re, const double* im, std::size_t n, double* out);
double min_value(const double* x, std::size_t n);
double max_value(const double* x, std::size_t n);

}  // namespace beamtrain::kernels::scalar

#if defined(BEAMTRAIN_HAVE_AVX2)
namespace beamtrain::kernels::avx2 {

void project(const double* beam_re, const double* beam_im, const double* chan_re,
             const double* chan_im, std::size_t n_beams, std::size_t n_antennas, double* out_re,
             double* out_im);
void absorb(double* m_re, double* m_im, const double* h_re, const double* h_im, const double* z_re,
            const double* z_im, std::size_t n, double signal_scale, double noise_scale);
void energy(const double* m_re, const double* m_im, std::size_t n, double denom, double* out);
void squared_magnitude(const double* re, const double* im, std::size_t n, double* out);
double min_value(const double* x, std::size_t n);
double max_value(const double* x, std::size_t n);

}  // namespace beamtrain::kernels::avx2
#endif
