#pragma once

#include <cstdint>
#include <vector>

#include "copclust/dataset.hpp"
#include "copclust/ksample_test.hpp"

namespace copclust {

struct TuningConfig {
  std::size_t k_prime = 3;
  std::size_t n_reps = 20;
  std::uint64_t seed = 0;
};

/// Geometric grid of 40 penalty factors from 8 down to 0.05.
std::vector<double> alpha_grid();

/// Pair results of one null replicate: K' sub-populations of the pooled data,
/// pairs in enumerate_pairs order.
using NullReplicate = std::vector<PairTestResult>;

/// Pools all rows, splits them at random into k_prime equal sub-populations,
/// n_reps times. Paired datasets are split by individual (row index).
std::vector<NullReplicate> null_replicates(const Dataset& dataset, const PenaltyConfig& cfg,
                                           const TuningConfig& tcfg);

/// Group selection s for one replicate at penalty factor alpha (the pair
/// selections D are recomputed at the same alpha).
std::size_t selection_s(const NullReplicate& rep, double alpha);

bool forces_first_pair(std::span<const NullReplicate> reps, double alpha);

struct TuningReport {
  double alpha_hat = 8.0;
  bool converged = false;  // false when even the grid top fails
  std::vector<double> grid;
  std::size_t k_prime = 3;
  std::size_t n_reps = 20;
  std::size_t part_size = 0;
};

/// Smallest grid alpha with s = 1 on every null replicate.
TuningReport calibrate_alpha(const Dataset& dataset, const PenaltyConfig& cfg,
                             const TuningConfig& tcfg);

/// Same search on precomputed replicates.
TuningReport calibrate_alpha(std::span<const NullReplicate> reps);

}  // namespace copclust
