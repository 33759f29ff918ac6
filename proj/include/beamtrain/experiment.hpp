#pragma once

// Experiment orchestration and result files.
//
// Result CSV columns (fixed):
//   algorithm,snr_db,budget,p_hat,ci_low,ci_high,trials,theory_exponent,status
// theory_exponent is the uniform-allocation rate for exhaustive rows and the
// successive-rejects upper bound for adaptive rows. Rows whose ground truth is
// degenerate have empty numeric fields and a non-"ok" status.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "beamtrain/analysis.hpp"
#include "beamtrain/array_channel.hpp"
#include "beamtrain/config.hpp"
#include "beamtrain/montecarlo.hpp"

namespace beamtrain {

struct ResultRow {
  Algorithm algorithm = Algorithm::exhaustive;
  double snr_db = 0.0;
  std::uint64_t budget = 0;
  std::optional<double> p_hat;
  std::optional<double> ci_low;
  std::optional<double> ci_high;
  std::optional<std::uint64_t> trials;
  std::optional<double> theory_exponent;
  std::string status = "ok";

  bool operator==(const ResultRow&) const = default;
};

inline constexpr const char* kResultHeader =
    "algorithm,snr_db,budget,p_hat,ci_low,ci_high,trials,theory_exponent,status";

/// Rows in canonical order: algorithm (exhaustive, adaptive), then snr_db, then budget.
std::vector<ResultRow> run_experiment(const ExperimentConfig& config, RunOptions options = {});

void sort_rows(std::vector<ResultRow>& rows);

/// Writes header plus rows in canonical order. Throws std::runtime_error naming the path.
void write_csv(std::span<const ResultRow> rows, const std::filesystem::path& path);
void write_csv(std::span<const ResultRow> rows, std::ostream& out);
std::vector<ResultRow> read_csv(const std::filesystem::path& path);
std::vector<ResultRow> parse_csv(std::string_view text);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

/// Human-readable table with empirical slopes next to the theoretical exponents.
std::string summarize(const ExperimentConfig& config, std::span<const ResultRow> rows);

/// Exact gap analysis for one SNR.
struct ExponentReport {
  double snr_db = 0.0;
  GainProfile gains;
  GapProfile gaps;
  std::optional<HardnessSummary> hardness;
  std::optional<double> exhaustive_exponent;
  std::optional<double> adaptive_bound;
  /// logbar(L) * H < L * Delta_min^-2, i.e. the adaptive bound beats uniform allocation.
  std::optional<bool> adaptive_dominates;
};

ExponentReport exponent_report(const ExperimentConfig& config, double snr_db);
void write_exponents(const ExperimentConfig& config, std::ostream& out);

/// Per-beam gains with the symbol allocation of one instrumented run of each
/// algorithm, at the first SNR and first budget of the config.
void write_gains(const ExperimentConfig& config, std::ostream& out);

}  // namespace beamtrain
