#pragma once

// Data-parallel inner loops of the simulator.
//
// Every kernel exists as a scalar reference and as SIMD variants selected at
// runtime. The SIMD variants are lane-parallel across beams and perform the same
// IEEE operations in the same order as the scalar code (no FMA, no
// reassociation), so all levels produce bit-identical results.

#include <cstddef>
#include <optional>
#include <string_view>

namespace beamtrain::kernels {

enum class Level { scalar, avx2 };

struct KernelTable {
  Level level;
  const char* name;

  /// out[l] = sum_k beam[l][k] * chan[k] (complex, no conjugation).
  /// Beams are packed antenna-major: beam_re[k * n_beams + l].
  void (*project)(const double* beam_re, const double* beam_im, const double* chan_re,
                  const double* chan_im, std::size_t n_beams, std::size_t n_antennas,
                  double* out_re, double* out_im);

  /// m += h * signal_scale + z * noise_scale, componentwise over n beams.
  void (*absorb)(double* m_re, double* m_im, const double* h_re, const double* h_im,
                 const double* z_re, const double* z_im, std::size_t n, double signal_scale,
                 double noise_scale);

  /// out[i] = 2 * (m_re[i]^2 + m_im[i]^2) / denom.
  void (*energy)(const double* m_re, const double* m_im, std::size_t n, double denom,
                 double* out);

  /// out[i] = m_re[i]^2 + m_im[i]^2.
  void (*squared_magnitude)(const double* re, const double* im, std::size_t n, double* out);

  /// Smallest / largest element; n >= 1, no NaNs.
  double (*min_value)(const double* x, std::size_t n);
  double (*max_value)(const double* x, std::size_t n);
};

const KernelTable& scalar_table();

/// Table for `level`, or nullopt when this build or this CPU lacks it.
std::optional<const KernelTable*> table_for(Level level);

/// Best level the running CPU supports.
Level detect_best_level();

/// Currently selected table. Initialised on first use from BEAMTRAIN_KERNELS
/// ("scalar" or "avx2") when set, otherwise from detect_best_level().
const KernelTable& active();

/// Switch the active table. Throws std::invalid_argument if unsupported.
void select(Level level);

std::optional<Level> parse_level(std::string_view name);
const char* level_name(Level level);

}  // namespace beamtrain::kernels
