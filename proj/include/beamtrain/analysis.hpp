#pragma once

// Gap machinery and asymptotic error exponents (natural log, per symbol).

#include <cstddef>
#include <span>
#include <vector>

namespace beamtrain {

struct GapProfile {
  std::vector<double> xi;          ///< normalized gains
  std::size_t opt_index = 0;       ///< argmax xi, lowest index on ties
  std::vector<double> delta;       ///< sqrt(xi_opt) - sqrt(xi_l); 0 at opt_index
  std::vector<std::size_t> order;  ///< beams by descending xi, ties by ascending index
  std::size_t second_best = 0;     ///< order[1]
  double delta_min = 0.0;          ///< delta[second_best]

  /// Optimum tied with another beam.
  bool degenerate() const { return !(delta_min > 0.0); }

  /// Gap of the rank-th best beam, 1-based, with rank 1 mapped to rank 2.
  double ranked_delta(std::size_t rank) const;
};

/// Throws std::invalid_argument for fewer than two beams or negative/non-finite entries.
GapProfile gap_profile(std::span<const double> xi);

/// 1/2 + sum_{i=2}^{L} 1/i, for L >= 2.
double logbar(std::size_t l_beams);

struct HardnessSummary {
  double h_value = 0.0;  ///< max over ranks l of l * Delta_(l)^-2
  std::size_t l_h = 0;   ///< 1-based maximising rank (first on ties)
  double logbar = 0.0;
};

/// Throws DegenerateProfile when the gap to the optimum is zero.
HardnessSummary hardness(const GapProfile& profile);

/// Rate of uniform allocation: -Delta_min^2 / (4 L).
double exponent_exhaustive(const GapProfile& profile, std::size_t l_beams);

/// Pairwise rate with equal allocation: -delta^2 / 4.
double exponent_pairwise(double delta);

/// Upper bound on the rate of successive rejects: -1 / (4 logbar H).
double exponent_adaptive_bound(const HardnessSummary& summary);

}  // namespace beamtrain
