#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "copclust/dataset.hpp"
#include "copclust/ksample_test.hpp"
#include "copclust/matrix.hpp"

namespace copclust {

enum class MergeAction { seed, grow, close };
std::string_view to_string(MergeAction a);
MergeAction parse_merge_action(std::string_view s);

/// One decision of the clustering loop. `subject` is the seed pair for
/// `seed`, and the candidate population for `grow` / `close`.
struct MergeEntry {
  std::size_t step = 0;
  MergeAction action = MergeAction::seed;
  std::vector<std::string> subject;
  double statistic = 0.0;
  double p_value = 1.0;
  friend bool operator==(const MergeEntry&, const MergeEntry&) = default;
};

struct ClusterSet {
  std::vector<std::string> labels;                 // dataset order
  std::vector<std::vector<std::string>> clusters;  // creation order, members in admission order
  std::vector<MergeEntry> merge_log;
  double level = 0.05;

  /// Index of the cluster holding label, or npos.
  std::size_t cluster_of(std::string_view label) const;
  friend bool operator==(const ClusterSet&, const ClusterSet&) = default;
};

/// Pair tests for every population pair, in enumerate_pairs order.
std::vector<PairTestResult> all_pair_tests(std::span<const CoefficientTable> tables,
                                           const Dataset& dataset, const PenaltyConfig& cfg);

/// Greedy seed-and-grow clustering.
///
/// Seed: the unassigned pair with the smallest pair statistic is tested; if
/// accepted it opens the first cluster, otherwise no pair can merge and every
/// population becomes a singleton. Grow: the unassigned population closest
/// (smallest pair statistic) to any member of the open cluster is proposed and
/// the group test runs on the members in admission order followed by the
/// candidate. Acceptance adds it; rejection closes the cluster and the
/// candidate opens the next one. Ties go to the smallest pair rank.
ClusterSet cluster(const Dataset& dataset, const PenaltyConfig& cfg);

struct AssociationMatrix {
  std::vector<std::string> labels;
  Matrix percent;  // K x K, diagonal 100
};

/// Percentage of runs in which two labels share a cluster. Label order is
/// taken from the first run; every run must cover the same labels.
AssociationMatrix association_matrix(std::span<const ClusterSet> runs);

struct DendrogramNode {
  std::string name;
  std::vector<DendrogramNode> children;
  friend bool operator==(const DendrogramNode&, const DendrogramNode&) = default;
};

/// Two-level tree: root -> C1..Cc (creation order) -> members (admission order).
DendrogramNode dendrogram(const ClusterSet& result, std::string root_name = "root");

}  // namespace copclust
