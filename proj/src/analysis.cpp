#include "beamtrain/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "beamtrain/errors.hpp"

namespace beamtrain {

namespace {

void require_non_degenerate(const GapProfile& profile) {
  if (profile.degenerate())
    throw DegenerateProfile("optimal beam " + std::to_string(profile.opt_index) +
                            " is tied with beam " + std::to_string(profile.second_best) +
                            "; gap is zero and hardness is infinite");
}

}  // namespace

double GapProfile::ranked_delta(std::size_t rank) const {
  if (rank < 1 || rank > order.size()) throw std::out_of_range("rank out of range");
  return delta[order[rank == 1 ? 1 : rank - 1]];
}

GapProfile gap_profile(std::span<const double> xi) {
  if (xi.size() < 2) throw std::invalid_argument("gap profile needs at least two beams");
  for (double v : xi)
    if (!(v >= 0.0) || !std::isfinite(v))
      throw std::invalid_argument("normalized gains must be finite and non-negative");

  GapProfile p;
  p.xi.assign(xi.begin(), xi.end());
  p.order.resize(xi.size());
  std::iota(p.order.begin(), p.order.end(), std::size_t{0});
  std::stable_sort(p.order.begin(), p.order.end(),
                   [&](std::size_t a, std::size_t b) { return xi[a] > xi[b]; });
  p.opt_index = p.order[0];
  p.second_best = p.order[1];

  const double root_opt = std::sqrt(xi[p.opt_index]);
  p.delta.resize(xi.size());
  for (std::size_t l = 0; l < xi.size(); ++l)
    p.delta[l] = l == p.opt_index ? 0.0 : root_opt - std::sqrt(xi[l]);
  p.delta_min = p.delta[p.second_best];
  return p;
}

double logbar(std::size_t l_beams) {
  if (l_beams < 2) throw std::invalid_argument("logbar needs at least two beams");
  double sum = 0.5;
  for (std::size_t i = 2; i <= l_beams; ++i) sum += 1.0 / static_cast<double>(i);
  return sum;
}

HardnessSummary hardness(const GapProfile& profile) {
  require_non_degenerate(profile);
  HardnessSummary s;
  s.logbar = logbar(profile.xi.size());
  for (std::size_t rank = 1; rank <= profile.xi.size(); ++rank) {
    const double d = profile.ranked_delta(rank);
    const double term = static_cast<double>(rank) / (d * d);
    if (term > s.h_value) {
      s.h_value = term;
      s.l_h = rank;
    }
  }
  return s;
}

double exponent_exhaustive(const GapProfile& profile, std::size_t l_beams) {
  require_non_degenerate(profile);
  if (l_beams < 1) throw std::invalid_argument("beam count must be positive");
  return -(profile.delta_min * profile.delta_min) / (4.0 * static_cast<double>(l_beams));
}

double exponent_pairwise(double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("pairwise gap must be positive");
  return -(delta * delta) / 4.0;
}

double exponent_adaptive_bound(const HardnessSummary& summary) {
  if (!(summary.h_value > 0.0) || !(summary.logbar > 0.0))
    throw std::invalid_argument("hardness summary is not valid");
  return -1.0 / (4.0 * summary.logbar * summary.h_value);
}

}  // namespace beamtrain
