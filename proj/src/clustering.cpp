#include "copclust/clustering.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "copclust/error.hpp"
#include "copclust/permutation.hpp"
#include "copclust/rng.hpp"

namespace copclust {

std::string_view to_string(MergeAction a) {
  switch (a) {
    case MergeAction::seed: return "seed";
    case MergeAction::grow: return "grow";
    case MergeAction::close: return "close";
  }
  return "?";
}

MergeAction parse_merge_action(std::string_view s) {
  if (s == "seed") return MergeAction::seed;
  if (s == "grow") return MergeAction::grow;
  if (s == "close") return MergeAction::close;
  throw InputError("unknown merge action '" + std::string(s) + "'");
}

std::size_t ClusterSet::cluster_of(std::string_view label) const {
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    if (std::find(clusters[c].begin(), clusters[c].end(), label) != clusters[c].end()) return c;
  }
  return static_cast<std::size_t>(-1);
}

std::vector<PairTestResult> all_pair_tests(std::span<const CoefficientTable> tables,
                                           const Dataset& dataset, const PenaltyConfig& cfg) {
  const auto ids = enumerate_pairs(tables.size());
  std::vector<PairTestResult> out(ids.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t q = 0; q < static_cast<std::ptrdiff_t>(ids.size()); ++q) {
    const auto& id = ids[static_cast<std::size_t>(q)];
    auto res = pair_test(tables[id.first], tables[id.second], dataset.pairing(id.first, id.second),
                         cfg);
    res.pair = id;
    out[static_cast<std::size_t>(q)] = std::move(res);
  }
  return out;
}

namespace {

class Clusterer {
 public:
  Clusterer(const Dataset& ds, const PenaltyConfig& cfg) : ds_(ds), cfg_(cfg), K_(ds.size()) {
    std::vector<CoefficientTable> tables(K_);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(K_); ++k) {
      const auto& pop = ds.populations[static_cast<std::size_t>(k)];
      try {
        tables[static_cast<std::size_t>(k)] = summarize(pop.data, cfg);
      } catch (const InputError& e) {
#pragma omp critical
        error_ = "population '" + pop.label + "': " + e.what();
      }
    }
    if (!error_.empty()) throw InputError(error_);
    pairs_ = all_pair_tests(tables, ds, cfg);
  }

  ClusterSet run() {
    ClusterSet out;
    out.labels = ds_.labels();
    out.level = cfg_.level;
    std::vector<bool> assigned(K_, false);

    // Seed.
    const PairTestResult* seed = nullptr;
    for (const auto& pr : pairs_) {
      if (!seed || pr.statistic < seed->statistic) seed = &pr;
    }
    std::size_t step = 1;
    const std::vector<std::size_t> seed_members{seed->pair.first, seed->pair.second};
    const double seed_p = p_value(seed_members, seed->statistic, seed->p_value, step);
    const std::vector<std::string> seed_subject{label(seed->pair.first), label(seed->pair.second)};
    if (seed_p < cfg_.level) {
      out.merge_log.push_back({step, MergeAction::close, seed_subject, seed->statistic, seed_p});
      for (std::size_t k = 0; k < K_; ++k) out.clusters.push_back({label(k)});
      return out;
    }
    out.merge_log.push_back({step, MergeAction::seed, seed_subject, seed->statistic, seed_p});
    std::vector<std::size_t> current = seed_members;
    assigned[seed->pair.first] = assigned[seed->pair.second] = true;
    std::size_t remaining = K_ - 2;

    // Grow.
    while (remaining > 0) {
      ++step;
      std::size_t candidate = K_;
      std::size_t best_rank = 0;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i : current) {
        for (std::size_t j = 0; j < K_; ++j) {
          if (assigned[j]) continue;
          const auto& pr = pair(i, j);
          if (pr.statistic < best || (pr.statistic == best && pr.pair.rank < best_rank)) {
            best = pr.statistic;
            best_rank = pr.pair.rank;
            candidate = j;
          }
        }
      }
      std::vector<std::size_t> members = current;
      members.push_back(candidate);
      const auto group = group_result(members);
      const double pv = p_value(members, group.statistic, group.p_value, step);
      assigned[candidate] = true;
      --remaining;
      if (pv >= cfg_.level) {
        current.push_back(candidate);
        out.merge_log.push_back({step, MergeAction::grow, {label(candidate)}, group.statistic, pv});
      } else {
        out.merge_log.push_back({step, MergeAction::close, {label(candidate)}, group.statistic, pv});
        out.clusters.push_back(labels_of(current));
        current = {candidate};
      }
    }
    out.clusters.push_back(labels_of(current));
    return out;
  }

 private:
  const PairTestResult& pair(std::size_t a, std::size_t b) const {
    return pairs_[pair_rank(a, b, K_) - 1];
  }

  const std::string& label(std::size_t k) const { return ds_.populations[k].label; }

  std::vector<std::string> labels_of(const std::vector<std::size_t>& idx) const {
    std::vector<std::string> out;
    for (std::size_t k : idx) out.push_back(label(k));
    return out;
  }

  GroupTestResult group_result(const std::vector<std::size_t>& members) const {
    std::vector<PairTestResult> ordered;
    for (const auto& id : enumerate_pairs(members.size())) {
      ordered.push_back(pair(members[id.first], members[id.second]));
    }
    return group_from_pairs(members.size(), ordered, cfg_);
  }

  double p_value(const std::vector<std::size_t>& members, double statistic, double plugin_p,
                 std::size_t step) const {
    if (cfg_.calibration == Calibration::plugin) return plugin_p;
    std::vector<const Matrix*> data;
    for (std::size_t a = 0; a < members.size(); ++a) {
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        if (ds_.pairing(members[a], members[b]) == Pairing::paired) {
          throw InputError("permutation calibration applies to independent samples only");
        }
      }
      data.push_back(&ds_.populations[members[a]].data);
    }
    return permutation_pvalue(data, statistic, cfg_,
                              derive_seed(cfg_.seed, {tag::permutation, step}));
  }

  const Dataset& ds_;
  const PenaltyConfig& cfg_;
  std::size_t K_;
  std::vector<PairTestResult> pairs_;
  std::string error_;
};

}  // namespace

ClusterSet cluster(const Dataset& dataset, const PenaltyConfig& cfg) {
  cfg.validate();
  dataset.validate();
  if (dataset.size() < 2) throw InputError("clustering needs at least 2 populations");
  return Clusterer(dataset, cfg).run();
}

AssociationMatrix association_matrix(std::span<const ClusterSet> runs) {
  if (runs.empty()) throw InputError("association matrix needs at least one run");
  AssociationMatrix out;
  out.labels = runs.front().labels;
  const std::size_t K = out.labels.size();
  std::map<std::string, std::size_t> pos;
  for (std::size_t k = 0; k < K; ++k) pos[out.labels[k]] = k;
  auto sorted = [](std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  const auto reference = sorted(out.labels);

  Matrix counts(K, K);
  for (const auto& run : runs) {
    std::vector<std::string> seen;
    for (const auto& c : run.clusters) seen.insert(seen.end(), c.begin(), c.end());
    if (sorted(run.labels) != reference || sorted(seen) != reference) {
      throw InputError("association matrix: runs cover different population labels");
    }
    for (const auto& c : run.clusters) {
      for (const auto& a : c)
        for (const auto& b : c) counts(pos[a], pos[b]) += 1.0;
    }
  }
  out.percent = Matrix(K, K);
  const double scale = 100.0 / static_cast<double>(runs.size());
  for (std::size_t i = 0; i < K; ++i)
    for (std::size_t j = 0; j < K; ++j) out.percent(i, j) = counts(i, j) * scale;
  return out;
}

DendrogramNode dendrogram(const ClusterSet& result, std::string root_name) {
  DendrogramNode root{std::move(root_name), {}};
  for (std::size_t c = 0; c < result.clusters.size(); ++c) {
    DendrogramNode node{"C" + std::to_string(c + 1), {}};
    for (const auto& m : result.clusters[c]) node.children.push_back({m, {}});
    root.children.push_back(std::move(node));
  }
  return root;
}

}  // namespace copclust
