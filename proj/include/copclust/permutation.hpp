#pragma once

#include <cstdint>
#include <span>

#include "copclust/ksample_test.hpp"
#include "copclust/matrix.hpp"

namespace copclust {

/// Permutation p-value for a group of independent samples: rows are pooled,
/// reassigned to groups of the original sizes B times, and the group statistic
/// recomputed (pseudo-observations included). Returns #{T_b >= observed} / B.
/// Two members give the two-sample test.
double permutation_pvalue(std::span<const Matrix* const> members, double observed,
                          const PenaltyConfig& cfg, std::uint64_t seed);

/// Statistic of the group test computed from raw data (plug-in path).
double group_statistic(std::span<const Matrix* const> members, const PenaltyConfig& cfg);

/// Pair test on raw independent samples honouring cfg.calibration.
PairTestResult pair_test_data(const Matrix& a, const Matrix& b, Pairing pairing,
                              const PenaltyConfig& cfg);

}  // namespace copclust
