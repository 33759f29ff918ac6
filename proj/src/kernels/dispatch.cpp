#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "beamtrain/kernels.hpp"
#include "kernels_internal.hpp"

namespace beamtrain::kernels {

namespace {

constexpr KernelTable kScalar{Level::scalar,        "scalar",          &scalar::project,
                              &scalar::absorb,      &scalar::energy,   &scalar::squared_magnitude,
                              &scalar::min_value,   &scalar::max_value};

#if defined(BEAMTRAIN_HAVE_AVX2)
constexpr KernelTable kAvx2{Level::avx2,        "avx2",          &avx2::project,
                            &avx2::absorb,      &avx2::energy,   &avx2::squared_magnitude,
                            &avx2::min_value,   &avx2::max_value};
#endif

bool cpu_supports(Level level) {
  switch (level) {
    case Level::scalar:
      return true;
    case Level::avx2:
#if defined(BEAMTRAIN_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

const KernelTable* initial_table() {
  if (const char* env = std::getenv("BEAMTRAIN_KERNELS"); env != nullptr && *env != '\0') {
    const auto level = parse_level(env);
    if (!level) throw std::invalid_argument(std::string("BEAMTRAIN_KERNELS: unknown level '") + env + "'");
    const auto table = table_for(*level);
    if (!table) throw std::invalid_argument(std::string("BEAMTRAIN_KERNELS: '") + env + "' not supported here");
    return *table;
  }
  return *table_for(detect_best_level());
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{initial_table()};
  return table;
}

}  // namespace

const KernelTable& scalar_table() { return kScalar; }

std::optional<const KernelTable*> table_for(Level level) {
  if (!cpu_supports(level)) return std::nullopt;
  switch (level) {
    case Level::scalar:
      return &kScalar;
    case Level::avx2:
#if defined(BEAMTRAIN_HAVE_AVX2)
      return &kAvx2;
#else
      return std::nullopt;
#endif
  }
  return std::nullopt;
}

Level detect_best_level() { return cpu_supports(Level::avx2) ? Level::avx2 : Level::scalar; }

const KernelTable& active() { return *current().load(std::memory_order_acquire); }

void select(Level level) {
  const auto table = table_for(level);
  if (!table) throw std::invalid_argument(std::string("kernel level not supported: ") + level_name(level));
  current().store(*table, std::memory_order_release);
}

std::optional<Level> parse_level(std::string_view name) {
  if (name == "scalar") return Level::scalar;
  if (name == "avx2") return Level::avx2;
  return std::nullopt;
}

const char* level_name(Level level) {
  switch (level) {
    case Level::scalar:
      return "scalar";
    case Level::avx2:
      return "avx2";
  }
  return "unknown";
}

}  // namespace beamtrain::kernels
