#include "beamtrain/experiment.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <ostream>
#include <sstream>

#include "beamtrain/array_channel.hpp"
#include "beamtrain/errors.hpp"

namespace beamtrain {

namespace {

std::vector<Algorithm> canonical_algorithms(const std::vector<Algorithm>& requested) {
  std::vector<Algorithm> out;
  for (Algorithm a : {Algorithm::exhaustive, Algorithm::adaptive})
    if (std::find(requested.begin(), requested.end(), a) != requested.end()) out.push_back(a);
  return out;
}

template <class T>
std::vector<T> sorted_copy(std::vector<T> v) {
  std::stable_sort(v.begin(), v.end());
  return v;
}

std::string fixed(double v, int precision = 6) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
  return buf;
}

std::vector<double> normalized_gains(const GainProfile& gains, const NoiseModel& noise) {
  std::vector<double> xi;
  xi.reserve(gains.gains.size());
  for (double g : gains.gains) xi.push_back(normalized_gain(noise, g));
  return xi;
}

}  // namespace

void sort_rows(std::vector<ResultRow>& rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
    if (a.algorithm != b.algorithm) return a.algorithm < b.algorithm;
    if (a.snr_db != b.snr_db) return a.snr_db < b.snr_db;
    return a.budget < b.budget;
  });
}

ExponentReport exponent_report(const ExperimentConfig& config, double snr_db) {
  ExponentReport rep;
  rep.snr_db = snr_db;
  rep.gains = effective_gains(dft_codebook(config.l_beams), config.alpha, config.resolved_phi());
  rep.gaps = gap_profile(normalized_gains(rep.gains, noise_for_snr(snr_db)));
  if (rep.gaps.degenerate()) return rep;
  rep.hardness = hardness(rep.gaps);
  rep.exhaustive_exponent = exponent_exhaustive(rep.gaps, config.l_beams);
  rep.adaptive_bound = exponent_adaptive_bound(*rep.hardness);
  const double uniform_hardness =
      static_cast<double>(config.l_beams) / (rep.gaps.delta_min * rep.gaps.delta_min);
  rep.adaptive_dominates = rep.hardness->logbar * rep.hardness->h_value < uniform_hardness;
  return rep;
}

std::vector<ResultRow> run_experiment(const ExperimentConfig& config, RunOptions options) {
  if (options.workers == 0) options.workers = config.workers;
  const auto algorithms = canonical_algorithms(config.algorithms);
  if (algorithms.empty()) throw ConfigError({"algorithms: no supported algorithm selected"});
  const double phi = config.resolved_phi();

  std::map<double, ExponentReport> theory;
  for (double snr : config.snr_db)
    if (!theory.contains(snr)) theory.emplace(snr, exponent_report(config, snr));

  std::vector<ResultRow> rows;
  std::vector<Scenario> runnable;
  std::vector<std::size_t> runnable_row;
  for (Algorithm algorithm : algorithms) {
    for (double snr : sorted_copy(config.snr_db)) {
      for (std::uint64_t budget : sorted_copy(config.budget)) {
        ResultRow row;
        row.algorithm = algorithm;
        row.snr_db = snr;
        row.budget = budget;
        const ExponentReport& rep = theory.at(snr);
        if (rep.gaps.degenerate()) {
          row.status = "degenerate";
          rows.push_back(row);
          continue;
        }
        row.theory_exponent =
            algorithm == Algorithm::exhaustive ? rep.exhaustive_exponent : rep.adaptive_bound;

        const Scenario scenario{config.l_beams, config.alpha, phi, snr, budget, algorithm};
        runnable.push_back(scenario);
        runnable_row.push_back(rows.size());
        rows.push_back(row);
      }
    }
  }

  if (!runnable.empty()) {
    const SweepResult result = sweep(runnable, config.trials, config.master_seed, options);
    for (std::size_t i = 0; i < runnable.size(); ++i) {
      const MisalignmentEstimate& e = result.estimates[i];
      ResultRow& row = rows[runnable_row[i]];
      row.p_hat = e.p_hat;
      row.ci_low = e.ci_low;
      row.ci_high = e.ci_high;
      row.trials = e.trials;
    }
  }
  return rows;
}

std::string summarize(const ExperimentConfig& config, std::span<const ResultRow> rows) {
  std::ostringstream out;
  out << "l_beams=" << config.l_beams << " phi=" << fixed(config.resolved_phi())
      << " alpha=" << fixed(config.alpha.real()) << (config.alpha.imag() < 0 ? "" : "+")
      << fixed(config.alpha.imag()) << "j trials=" << config.trials
      << " master_seed=" << config.master_seed << "\n\n";

  char line[256];
  std::snprintf(line, sizeof(line), "%-11s %8s %8s %12s %25s %14s  %s\n", "algorithm", "snr_db",
                "budget", "p_hat", "95% CI", "theory_rate", "status");
  out << line;
  for (const ResultRow& r : rows) {
    const std::string ci = r.ci_low ? "[" + fixed(*r.ci_low, 4) + ", " + fixed(*r.ci_high, 4) + "]"
                                    : std::string("-");
    std::snprintf(line, sizeof(line), "%-11s %8s %8llu %12s %25s %14s  %s\n",
                  algorithm_name(r.algorithm), fixed(r.snr_db).c_str(),
                  static_cast<unsigned long long>(r.budget),
                  r.p_hat ? fixed(*r.p_hat, 5).c_str() : "-", ci.c_str(),
                  r.theory_exponent ? fixed(*r.theory_exponent, 4).c_str() : "-",
                  r.status.c_str());
    out << line;
  }

  // Empirical decay rates over the budget grid, one per (algorithm, snr).
  std::map<std::pair<int, double>, std::vector<std::pair<std::uint64_t, MisalignmentEstimate>>> groups;
  std::map<std::pair<int, double>, std::optional<double>> theory;
  for (const ResultRow& r : rows) {
    if (!r.p_hat) continue;
    const auto key = std::make_pair(static_cast<int>(r.algorithm), r.snr_db);
    MisalignmentEstimate e;
    e.p_hat = *r.p_hat;
    groups[key].emplace_back(r.budget, e);
    theory[key] = r.theory_exponent;
  }
  bool header = false;
  for (const auto& [key, points] : groups) {
    if (points.size() < 2) continue;
    if (!header) {
      out << "\nper-symbol decay rate of ln p_hat versus budget:\n";
      header = true;
    }
    out << "  " << algorithm_name(static_cast<Algorithm>(key.first)) << " snr_db=" << fixed(key.second)
        << ": ";
    try {
      const SlopeFit fit = fit_exponent(points);
      out << "fitted " << fixed(fit.slope, 4) << " over " << fit.points.size() << " points";
      if (fit.excluded > 0) out << " (" << fit.excluded << " with p_hat=0 excluded)";
    } catch (const InsufficientData& e) {
      out << e.what();
    }
    if (const auto& t = theory[key]) out << ", theory " << fixed(*t, 4);
    out << '\n';
  }
  return out.str();
}

void write_exponents(const ExperimentConfig& config, std::ostream& out) {
  for (double snr : sorted_copy(config.snr_db)) {
    const ExponentReport rep = exponent_report(config, snr);
    out << "snr_db " << format_double(snr) << "\n";
    out << "  opt_index " << rep.gaps.opt_index << "\n";
    out << "  second_best " << rep.gaps.second_best << "\n";
    out << "  delta_min " << format_double(rep.gaps.delta_min) << "\n";
    if (!rep.hardness) {
      out << "  degenerate: optimum tied, exponents undefined\n";
      continue;
    }
    out << "  hardness_H " << format_double(rep.hardness->h_value) << "\n";
    out << "  l_H " << rep.hardness->l_h << "\n";
    out << "  logbar " << format_double(rep.hardness->logbar) << "\n";
    out << "  exhaustive_exponent " << format_double(*rep.exhaustive_exponent) << "\n";
    out << "  adaptive_bound " << format_double(*rep.adaptive_bound) << "\n";
    out << "  adaptive_dominates " << (*rep.adaptive_dominates ? "yes" : "no") << "\n";
    out << "  rank,beam,xi,delta\n";
    for (std::size_t rank = 1; rank <= rep.gaps.order.size(); ++rank) {
      const std::size_t beam = rep.gaps.order[rank - 1];
      out << "  " << rank << ',' << beam << ',' << format_double(rep.gaps.xi[beam]) << ','
          << format_double(rep.gaps.delta[beam]) << "\n";
    }
  }
}

void write_gains(const ExperimentConfig& config, std::ostream& out) {
  const double phi = config.resolved_phi();
  const double snr = config.snr_db.front();
  const std::uint64_t budget = config.budget.front();
  const BeamCodebook codebook = dft_codebook(config.l_beams);
  const GainProfile gains = effective_gains(codebook, config.alpha, phi);

  ResolvedScenario resolved;
  resolved.channels = gains.effective;
  resolved.gains = gains.gains;
  resolved.noise = noise_for_snr(snr);
  resolved.opt_index = gains.opt_index;
  resolved.budget = budget;

  const auto instrumented = [&](Algorithm a) {
    resolved.algorithm = a;
    const Scenario s{config.l_beams, config.alpha, phi, snr, budget, a};
    return run_trial(resolved, config.master_seed, scenario_key(s), 0);
  };
  const TrainingResult adaptive = instrumented(Algorithm::adaptive);
  const TrainingResult exhaustive = instrumented(Algorithm::exhaustive);

  std::vector<std::size_t> discard_rank(config.l_beams, 0);
  for (std::size_t i = 0; i < adaptive.discard_order.size(); ++i)
    discard_rank[adaptive.discard_order[i]] = i + 1;

  out << "beam,theta,gain,xi,symbols_adaptive,symbols_exhaustive,discard_phase\n";
  for (std::size_t l = 0; l < config.l_beams; ++l) {
    out << l << ',' << format_double(codebook.theta()[l]) << ',' << format_double(gains.gains[l])
        << ',' << format_double(normalized_gain(resolved.noise, gains.gains[l])) << ','
        << adaptive.symbols_used[l] << ',' << exhaustive.symbols_used[l] << ','
        << discard_rank[l] << '\n';
  }
}

}  // namespace beamtrain
