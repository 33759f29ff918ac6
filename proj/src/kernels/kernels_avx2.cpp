#include <immintrin.h>

#include "kernels_internal.hpp"

namespace beamtrain::kernels::avx2 {

namespace {
constexpr std::size_t kLanes = 4;
}

void project(const double* beam_re, const double* beam_im, const double* chan_re,
             const double* chan_im, std::size_t n_beams, std::size_t n_antennas, double* out_re,
             double* out_im) {
  std::size_t l = 0;
  // Four beams per register; each lane sums over antennas in scalar order.
  for (; l + kLanes <= n_beams; l += kLanes) {
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    for (std::size_t k = 0; k < n_antennas; ++k) {
      const __m256d fr = _mm256_loadu_pd(beam_re + k * n_beams + l);
      const __m256d fi = _mm256_loadu_pd(beam_im + k * n_beams + l);
      const __m256d cr = _mm256_set1_pd(chan_re[k]);
      const __m256d ci = _mm256_set1_pd(chan_im[k]);
      const __m256d prod_re = _mm256_sub_pd(_mm256_mul_pd(fr, cr), _mm256_mul_pd(fi, ci));
      const __m256d prod_im = _mm256_add_pd(_mm256_mul_pd(fr, ci), _mm256_mul_pd(fi, cr));
      acc_re = _mm256_add_pd(acc_re, prod_re);
      acc_im = _mm256_add_pd(acc_im, prod_im);
    }
    _mm256_storeu_pd(out_re + l, acc_re);
    _mm256_storeu_pd(out_im + l, acc_im);
  }
  for (; l < n_beams; ++l) {
    double acc_re = 0.0;
    double acc_im = 0.0;
    for (std::size_t k = 0; k < n_antennas; ++k) {
      const double fr = beam_re[k * n_beams + l];
      const double fi = beam_im[k * n_beams + l];
      acc_re = acc_re + (fr * chan_re[k] - fi * chan_im[k]);
      acc_im = acc_im + (fr * chan_im[k] + fi * chan_re[k]);
    }
    out_re[l] = acc_re;
    out_im[l] = acc_im;
  }
}

void absorb(double* m_re, double* m_im, const double* h_re, const double* h_im, const double* z_re,
            const double* z_im, std::size_t n, double signal_scale, double noise_scale) {
  const __m256d ss = _mm256_set1_pd(signal_scale);
  const __m256d ns = _mm256_set1_pd(noise_scale);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d dre = _mm256_add_pd(_mm256_mul_pd(_mm256_loadu_pd(h_re + i), ss),
                                      _mm256_mul_pd(_mm256_loadu_pd(z_re + i), ns));
    const __m256d dim = _mm256_add_pd(_mm256_mul_pd(_mm256_loadu_pd(h_im + i), ss),
                                      _mm256_mul_pd(_mm256_loadu_pd(z_im + i), ns));
    _mm256_storeu_pd(m_re + i, _mm256_add_pd(_mm256_loadu_pd(m_re + i), dre));
    _mm256_storeu_pd(m_im + i, _mm256_add_pd(_mm256_loadu_pd(m_im + i), dim));
  }
  if (i < n) scalar::absorb(m_re + i, m_im + i, h_re + i, h_im + i, z_re + i, z_im + i, n - i,
                            signal_scale, noise_scale);
}

void energy(const double* m_re, const double* m_im, std::size_t n, double denom, double* out) {
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d d = _mm256_set1_pd(denom);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d re = _mm256_loadu_pd(m_re + i);
    const __m256d im = _mm256_loadu_pd(m_im + i);
    const __m256d mag2 = _mm256_add_pd(_mm256_mul_pd(re, re), _mm256_mul_pd(im, im));
    _mm256_storeu_pd(out + i, _mm256_div_pd(_mm256_mul_pd(two, mag2), d));
  }
  if (i < n) scalar::energy(m_re + i, m_im + i, n - i, denom, out + i);
}

void squared_magnitude(const double* re, const double* im, std::size_t n, double* out) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d r = _mm256_loadu_pd(re + i);
    const __m256d m = _mm256_loadu_pd(im + i);
    _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_mul_pd(r, r), _mm256_mul_pd(m, m)));
  }
  if (i < n) scalar::squared_magnitude(re + i, im + i, n - i, out + i);
}

namespace {

double horizontal_min(__m256d v) {
  alignas(32) double lanes[kLanes];
  _mm256_store_pd(lanes, v);
  return scalar::min_value(lanes, kLanes);
}

double horizontal_max(__m256d v) {
  alignas(32) double lanes[kLanes];
  _mm256_store_pd(lanes, v);
  return scalar::max_value(lanes, kLanes);
}

}  // namespace

double min_value(const double* x, std::size_t n) {
  if (n < kLanes) return scalar::min_value(x, n);
  __m256d best = _mm256_loadu_pd(x);
  std::size_t i = kLanes;
  for (; i + kLanes <= n; i += kLanes) best = _mm256_min_pd(_mm256_loadu_pd(x + i), best);
  double result = horizontal_min(best);
  for (; i < n; ++i) result = x[i] < result ? x[i] : result;
  return result;
}

double max_value(const double* x, std::size_t n) {
  if (n < kLanes) return scalar::max_value(x, n);
  __m256d best = _mm256_loadu_pd(x);
  std::size_t i = kLanes;
  for (; i + kLanes <= n; i += kLanes) best = _mm256_max_pd(_mm256_loadu_pd(x + i), best);
  double result = horizontal_max(best);
  for (; i < n; ++i) result = x[i] > result ? x[i] : result;
  return result;
}

}  // namespace beamtrain::kernels::avx2
