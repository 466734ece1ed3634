#include "copclust/index_enum.hpp"

#include <numeric>

#include "copclust/error.hpp"

namespace copclust {

int MultiIndex::norm() const { return std::accumulate(j.begin(), j.end(), 0); }

int MultiIndex::positive_parts() const {
  int c = 0;
  for (int v : j) c += v > 0;
  return c;
}

std::string MultiIndex::str() const {
  std::string s = "(";
  for (std::size_t d = 0; d < j.size(); ++d) {
    if (d) s += ',';
    s += std::to_string(j[d]);
  }
  return s + ")";
}

namespace {

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Compositions of `remaining` into the tail j[pos..], visited in lexicographic order.
void compose(std::vector<int>& j, std::size_t pos, int remaining, std::vector<MultiIndex>& out) {
  if (pos + 1 == j.size()) {
    j[pos] = remaining;
    MultiIndex m{j};
    if (m.positive_parts() >= 2) out.push_back(std::move(m));
    return;
  }
  for (int v = 0; v <= remaining; ++v) {
    j[pos] = v;
    compose(j, pos + 1, remaining - v, out);
  }
}

}  // namespace

std::size_t count_S(int d, int p) {
  if (d < 2 || p < 2) return 0;
  return binomial(static_cast<std::size_t>(d + p - 1), static_cast<std::size_t>(p - 1)) -
         static_cast<std::size_t>(p);
}

std::vector<MultiIndex> enumerate_S(int d, int p) {
  std::vector<MultiIndex> out;
  if (d < 2 || p < 2) return out;
  std::vector<int> j(static_cast<std::size_t>(p), 0);
  compose(j, 0, d, out);
  return out;
}

std::vector<MultiIndex> enumerate_H(std::size_t k, int p) {
  if (p < 2) throw InputError("index enumeration needs p >= 2");
  std::vector<MultiIndex> out;
  out.reserve(k);
  for (int d = 2; out.size() < k; ++d) {
    for (auto& m : enumerate_S(d, p)) {
      if (out.size() == k) break;
      out.push_back(std::move(m));
    }
  }
  return out;
}

std::vector<MultiIndex> enumerate_up_to_degree(int d_max, int p) {
  std::size_t k = 0;
  for (int d = 2; d <= d_max; ++d) k += count_S(d, p);
  return enumerate_H(k, p);
}

std::vector<PairId> enumerate_pairs(std::size_t K) {
  std::vector<PairId> out;
  if (K < 2) return out;
  out.reserve(K * (K - 1) / 2);
  std::size_t rank = 1;
  for (std::size_t a = 0; a < K; ++a)
    for (std::size_t b = a + 1; b < K; ++b) out.push_back({a, b, rank++});
  return out;
}

std::size_t pair_rank(std::size_t a, std::size_t b, std::size_t K) {
  if (a == b || a >= K || b >= K) throw InputError("invalid population pair");
  if (a > b) std::swap(a, b);
  // pairs before row a: sum_{r<a} (K-1-r)
  return a * (2 * K - a - 1) / 2 + (b - a);
}

}  // namespace copclust
