#include "copclust/tuning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "copclust/error.hpp"
#include "copclust/rng.hpp"

namespace copclust {

std::vector<double> alpha_grid() {
  constexpr int points = 40;
  constexpr double top = 8.0, bottom = 0.05;
  std::vector<double> g(points);
  for (int i = 0; i < points; ++i) {
    g[i] = top * std::pow(bottom / top, static_cast<double>(i) / (points - 1));
  }
  g.back() = bottom;
  return g;
}

std::vector<NullReplicate> null_replicates(const Dataset& dataset, const PenaltyConfig& cfg,
                                           const TuningConfig& tcfg) {
  dataset.validate();
  if (tcfg.k_prime < 3) throw InputError("tuning needs k_prime >= 3");
  if (tcfg.n_reps < 1) throw InputError("tuning needs at least one replicate");
  const std::size_t p = dataset.dim();

  // Units that are kept together when splitting: single rows, or all rows of
  // one individual when every population is paired with the others.
  bool all_paired = dataset.size() >= 2;
  for (std::size_t k = 1; k < dataset.size(); ++k) {
    all_paired = all_paired && dataset.pairing(0, k) == Pairing::paired;
  }
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> units;
  if (all_paired) {
    for (std::size_t i = 0; i < dataset.populations.front().size(); ++i) {
      auto& u = units.emplace_back();
      for (std::size_t k = 0; k < dataset.size(); ++k) u.emplace_back(k, i);
    }
  } else {
    for (std::size_t k = 0; k < dataset.size(); ++k)
      for (std::size_t i = 0; i < dataset.populations[k].size(); ++i) units.push_back({{k, i}});
  }
  const std::size_t per_part = units.size() / tcfg.k_prime;
  const std::size_t rows_per_unit = units.front().size();
  if (per_part * rows_per_unit < 20) {
    throw InputError("tuning needs at least 20 pooled rows per sub-population");
  }

  std::vector<NullReplicate> reps(tcfg.n_reps);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t rr = 0; rr < static_cast<std::ptrdiff_t>(tcfg.n_reps); ++rr) {
    Engine eng(derive_seed(tcfg.seed, {tag::tuning, static_cast<std::uint64_t>(rr)}));
    std::vector<std::size_t> perm(units.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), eng);
    std::vector<CoefficientTable> tables;
    for (std::size_t part = 0; part < tcfg.k_prime; ++part) {
      Matrix m(per_part * rows_per_unit, p);
      std::size_t row = 0;
      for (std::size_t q = part * per_part; q < (part + 1) * per_part; ++q) {
        for (const auto& [k, i] : units[perm[q]]) {
          const auto src = dataset.populations[k].data.row(i);
          std::copy(src.begin(), src.end(), m.row(row++).begin());
        }
      }
      tables.push_back(summarize(m, cfg));
    }
    NullReplicate rep;
    for (const auto& id : enumerate_pairs(tables.size())) {
      rep.push_back(pair_test(tables[id.first], tables[id.second], Pairing::independent, cfg));
      rep.back().pair = id;
    }
    reps[static_cast<std::size_t>(rr)] = std::move(rep);
  }
  return reps;
}

std::size_t selection_s(const NullReplicate& rep, double alpha) {
  std::vector<double> embedded;
  double acc = 0.0;
  double min_neff = std::numeric_limits<double>::infinity();
  for (const auto& pr : rep) {
    const std::size_t D = penalized_argmax(pr.standardized, alpha * std::log(pr.n_eff));
    acc += pr.standardized[D - 1];
    embedded.push_back(acc);
    min_neff = std::min(min_neff, pr.n_eff);
  }
  return penalized_argmax(embedded, alpha * std::log(min_neff));
}

bool forces_first_pair(std::span<const NullReplicate> reps, double alpha) {
  return std::all_of(reps.begin(), reps.end(),
                     [&](const NullReplicate& r) { return selection_s(r, alpha) == 1; });
}

TuningReport calibrate_alpha(std::span<const NullReplicate> reps) {
  if (reps.empty()) throw InputError("tuning needs at least one replicate");
  TuningReport report;
  report.grid = alpha_grid();
  report.n_reps = reps.size();
  const auto& g = report.grid;
  if (!forces_first_pair(reps, g.front())) {
    report.alpha_hat = g.front();
    report.converged = false;
    return report;
  }
  // Grid is decreasing and the property is monotone in alpha: find the last
  // position where it still holds.
  std::size_t lo = 0, hi = g.size();
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    (forces_first_pair(reps, g[mid]) ? lo : hi) = mid;
  }
  report.alpha_hat = g[lo];
  report.converged = true;
  return report;
}

TuningReport calibrate_alpha(const Dataset& dataset, const PenaltyConfig& cfg,
                             const TuningConfig& tcfg) {
  const auto reps = null_replicates(dataset, cfg, tcfg);
  auto report = calibrate_alpha(reps);
  report.k_prime = tcfg.k_prime;
  // Equal parts of size m give n_eff = m / 2.
  report.part_size = static_cast<std::size_t>(std::lround(2.0 * reps.front().front().n_eff));
  return report;
}

}  // namespace copclust
