#include "copclust/simharness.hpp"

#include <algorithm>
#include <chrono>

#include "copclust/error.hpp"
#include "copclust/rng.hpp"

namespace copclust {

void DesignSpec::validate() const {
  if (populations.size() < 2) throw InputError("design '" + name + "' needs K >= 2");
  if (replicates < 1) throw InputError("design '" + name + "' needs replicates >= 1");
  if (n < 2) throw InputError("design '" + name + "' needs n >= 2");
  if (!(level > 0.0 && level < 1.0)) throw InputError("design level must lie in (0,1)");
  for (const auto& c : populations) {
    if (c.dim != p) throw InputError("design '" + name + "': population dimension mismatch");
    c.validate();
  }
}

namespace {

DesignSpec make_design(std::string name, std::size_t n, int p,
                       std::vector<std::pair<Family, double>> pops) {
  DesignSpec d;
  d.name = std::move(name);
  d.n = n;
  d.p = p;
  for (auto [f, tau] : pops) d.populations.push_back(CopulaSpec{f, tau, p, 4.0});
  return d;
}

}  // namespace

std::vector<DesignSpec> builtin_designs() {
  using enum Family;
  std::vector<DesignSpec> out;
  for (std::size_t n : {100u, 500u}) {
    const auto sfx = std::to_string(n);
    out.push_back(make_design("A" + sfx, n, 3,
                              {{gumbel, 0.8}, {gaussian, 0.2}, {gaussian, 0.2},
                               {clayton, 0.9}, {clayton, 0.9}, {clayton, 0.9}}));
    out.push_back(make_design("B" + sfx, n, 5,
                              {{gumbel, 0.8}, {gaussian, 0.2}, {clayton, 0.9}, {comonotone, 1.0}}));
    out.push_back(make_design("C" + sfx, n, 4, std::vector<std::pair<Family, double>>(5, {clayton, 0.9})));
    std::vector<std::pair<Family, double>> d(9, {clayton, 0.9});
    d.push_back({gumbel, 0.9});
    out.push_back(make_design("D" + sfx, n, 2, d));
  }
  std::sort(out.begin(), out.end(),
            [](const DesignSpec& a, const DesignSpec& b) { return a.name < b.name; });
  return out;
}

DesignSpec builtin_design(std::string_view name) {
  for (auto& d : builtin_designs()) {
    if (d.name == name) return d;
  }
  throw InputError("unknown design '" + std::string(name) + "'");
}

Dataset sample_design(const DesignSpec& spec, std::size_t replicate) {
  Dataset ds;
  for (std::size_t k = 0; k < spec.populations.size(); ++k) {
    Population pop;
    pop.label = std::to_string(k + 1);
    pop.data = sample(spec.populations[k], spec.n,
                      derive_seed(spec.seed, {tag::simulate, replicate, k}));
    ds.populations.push_back(std::move(pop));
  }
  return ds;
}

std::string partition_key(const ClusterSet& cs) {
  auto numeric_less = [](const std::string& a, const std::string& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  };
  std::vector<std::vector<std::string>> parts = cs.clusters;
  for (auto& c : parts) std::sort(c.begin(), c.end(), numeric_less);
  std::sort(parts.begin(), parts.end(), [&](const auto& a, const auto& b) {
    return numeric_less(a.front(), b.front());
  });
  std::string key;
  for (const auto& c : parts) {
    key += '{';
    for (std::size_t i = 0; i < c.size(); ++i) key += (i ? "," : "") + c[i];
    key += '}';
  }
  return key;
}

double DesignResult::partition_frequency(const std::string& key) const {
  const auto it = partition_histogram.find(key);
  return it == partition_histogram.end() ? 0.0 : 100.0 * it->second / replicates;
}

double DesignResult::cluster_count_frequency(std::size_t count) const {
  const auto it = cluster_count_histogram.find(count);
  return it == cluster_count_histogram.end() ? 0.0 : 100.0 * it->second / replicates;
}

DesignResult run_design(const DesignSpec& spec, const PenaltyConfig& cfg) {
  spec.validate();
  PenaltyConfig c = cfg;
  c.level = spec.level;
  c.validate();
  const auto start = std::chrono::steady_clock::now();

  std::vector<ClusterSet> runs(spec.replicates);
  std::string error;
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t r = 0; r < static_cast<std::ptrdiff_t>(spec.replicates); ++r) {
    try {
      PenaltyConfig rc = c;
      rc.seed = derive_seed(c.seed, {tag::simulate, static_cast<std::uint64_t>(r)});
      runs[static_cast<std::size_t>(r)] = cluster(sample_design(spec, static_cast<std::size_t>(r)), rc);
    } catch (const std::exception& e) {
#pragma omp critical
      error = e.what();
    }
  }
  if (!error.empty()) throw NumericError("design '" + spec.name + "': " + error);

  DesignResult out;
  out.name = spec.name;
  out.replicates = spec.replicates;
  const auto assoc = association_matrix(runs);
  out.labels = assoc.labels;
  out.association = assoc.percent;
  for (const auto& run : runs) {
    ++out.partition_histogram[partition_key(run)];
    ++out.cluster_count_histogram[run.clusters.size()];
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace copclust
