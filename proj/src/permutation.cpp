#include "copclust/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "copclust/error.hpp"
#include "copclust/rng.hpp"

namespace copclust {

double group_statistic(std::span<const Matrix* const> members, const PenaltyConfig& cfg) {
  std::vector<CoefficientTable> tables;
  tables.reserve(members.size());
  for (const Matrix* m : members) tables.push_back(summarize(*m, cfg));
  return group_test(tables, Pairing::independent, cfg).statistic;
}

double permutation_pvalue(std::span<const Matrix* const> members, double observed,
                          const PenaltyConfig& cfg, std::uint64_t seed) {
  if (members.size() < 2) throw InputError("permutation test needs at least 2 samples");
  if (cfg.permutation_B < 1) throw InputError("permutation test needs B >= 1");
  const std::size_t p = members.front()->cols();
  std::vector<std::size_t> sizes;
  std::size_t total = 0;
  for (const Matrix* m : members) {
    if (m->cols() != p) throw InputError("permutation test: samples differ in dimension");
    sizes.push_back(m->rows());
    total += m->rows();
  }
  Matrix pooled(total, p);
  std::size_t row = 0;
  for (const Matrix* m : members) {
    for (std::size_t i = 0; i < m->rows(); ++i, ++row) {
      std::copy(m->row(i).begin(), m->row(i).end(), pooled.row(row).begin());
    }
  }

  const auto B = static_cast<std::size_t>(cfg.permutation_B);
  std::vector<double> stats(B);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t bb = 0; bb < static_cast<std::ptrdiff_t>(B); ++bb) {
    const auto b = static_cast<std::uint64_t>(bb);
    Engine eng(derive_seed(seed, {tag::permutation, b}));
    std::vector<std::size_t> perm(total);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), eng);
    std::vector<Matrix> parts;
    std::vector<const Matrix*> ptrs;
    parts.reserve(sizes.size());
    std::size_t pos = 0;
    for (std::size_t g = 0; g < sizes.size(); ++g) {
      Matrix part(sizes[g], p);
      for (std::size_t i = 0; i < sizes[g]; ++i, ++pos) {
        const auto src = pooled.row(perm[pos]);
        std::copy(src.begin(), src.end(), part.row(i).begin());
      }
      parts.push_back(std::move(part));
    }
    for (const auto& m : parts) ptrs.push_back(&m);
    stats[static_cast<std::size_t>(bb)] = group_statistic(ptrs, cfg);
  }
  const double threshold = observed - 1e-12 * std::max(1.0, std::abs(observed));
  const auto exceed = std::count_if(stats.begin(), stats.end(),
                                    [&](double s) { return s >= threshold; });
  return static_cast<double>(exceed) / static_cast<double>(B);
}

PairTestResult pair_test_data(const Matrix& a, const Matrix& b, Pairing pairing,
                              const PenaltyConfig& cfg) {
  const auto ta = summarize(a, cfg);
  const auto tb = summarize(b, cfg);
  PairTestResult res = pair_test(ta, tb, pairing, cfg);
  res.pair = PairId{0, 1, 1};
  if (cfg.calibration == Calibration::permutation) {
    if (pairing == Pairing::paired) {
      throw InputError("permutation calibration applies to independent samples only");
    }
    const Matrix* members[] = {&a, &b};
    res.p_value = permutation_pvalue(members, res.statistic, cfg,
                                     derive_seed(cfg.seed, {tag::permutation}));
    res.reject = res.p_value < cfg.level;
  }
  return res;
}

}  // namespace copclust
