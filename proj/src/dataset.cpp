#include "copclust/dataset.hpp"

#include "copclust/error.hpp"

namespace copclust {

std::vector<std::string> Dataset::labels() const {
  std::vector<std::string> out;
  out.reserve(populations.size());
  for (const auto& p : populations) out.push_back(p.label);
  return out;
}

std::size_t Dataset::index_of(const std::string& label) const {
  for (std::size_t k = 0; k < populations.size(); ++k) {
    if (populations[k].label == label) return k;
  }
  throw InputError("unknown population label '" + label + "'");
}

Pairing Dataset::pairing(std::size_t a, std::size_t b) const {
  const auto& ga = populations.at(a).paired_group;
  const auto& gb = populations.at(b).paired_group;
  return (ga && gb && *ga == *gb) ? Pairing::paired : Pairing::independent;
}

void Dataset::validate() const {
  if (populations.empty()) throw InputError("dataset has no populations");
  const std::size_t p = dim();
  if (p < 2) throw InputError("populations must have at least 2 variables");
  for (std::size_t k = 0; k < populations.size(); ++k) {
    const auto& pop = populations[k];
    if (pop.dim() != p) {
      throw InputError("population '" + pop.label + "' has " + std::to_string(pop.dim()) +
                       " variables, expected " + std::to_string(p));
    }
    if (pop.size() < 2) throw InputError("population '" + pop.label + "' has fewer than 2 rows");
    for (std::size_t m = 0; m < k; ++m) {
      if (populations[m].label == pop.label) {
        throw InputError("duplicate population label '" + pop.label + "'");
      }
      if (pairing(m, k) == Pairing::paired && populations[m].size() != pop.size()) {
        throw InputError("paired populations '" + populations[m].label + "' and '" +
                         pop.label + "' differ in size");
      }
    }
  }
}

}  // namespace copclust
