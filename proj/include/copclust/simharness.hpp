#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "copclust/clustering.hpp"
#include "copclust/copula_models.hpp"
#include "copclust/dataset.hpp"
#include "copclust/ksample_test.hpp"

namespace copclust {

struct DesignSpec {
  std::string name;
  std::size_t n = 100;
  int p = 2;
  std::vector<CopulaSpec> populations;
  std::size_t replicates = 500;
  double level = 0.05;
  std::uint64_t seed = 0;

  void validate() const;
};

/// A100, A500, B100, B500, C100, C500, D100, D500.
std::vector<DesignSpec> builtin_designs();
/// Throws InputError for unknown names.
DesignSpec builtin_design(std::string_view name);

/// Populations labelled "1".."K", seeded by derive_seed(seed, {simulate, r, k}).
Dataset sample_design(const DesignSpec& spec, std::size_t replicate);

/// Canonical partition key, e.g. "{1}{2,3}{4,5,6}" (members and clusters sorted).
std::string partition_key(const ClusterSet& cs);

struct DesignResult {
  std::string name;
  std::vector<std::string> labels;
  Matrix association;  // percent
  std::map<std::string, std::size_t> partition_histogram;
  std::map<std::size_t, std::size_t> cluster_count_histogram;
  std::size_t replicates = 0;
  double seconds = 0.0;

  double partition_frequency(const std::string& key) const;  // percent
  double cluster_count_frequency(std::size_t count) const;    // percent
};

/// Monte-Carlo run; the design's level overrides cfg.level. Replicates run on
/// the OpenMP pool; outputs do not depend on the thread count.
DesignResult run_design(const DesignSpec& spec, const PenaltyConfig& cfg);

}  // namespace copclust
