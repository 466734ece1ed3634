#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace copclust {

/// Multi-index j in N^p selecting one copula coefficient.
struct MultiIndex {
  std::vector<int> j;

  int norm() const;
  int positive_parts() const;
  std::string str() const;  // "(1,2)"

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;
};

/// Population pair (first < second), 0-based, with its 1-based rank in the
/// canonical order (1,2),(1,3),...,(1,K),(2,3),...
struct PairId {
  std::size_t first = 0;
  std::size_t second = 0;
  std::size_t rank = 0;
  friend bool operator==(const PairId&, const PairId&) = default;
};

/// c(d) = C(d+p-1, p-1) - p for d >= 2, and 0 otherwise.
std::size_t count_S(int d, int p);

/// All j with |j|_1 = d and at least two positive parts, ascending lexicographic.
std::vector<MultiIndex> enumerate_S(int d, int p);

/// First k indices of S(2), S(3), ... concatenated.
std::vector<MultiIndex> enumerate_H(std::size_t k, int p);

/// Every index of degree 2..d_max, i.e. enumerate_H(sum_{e<=d_max} c(e), p).
std::vector<MultiIndex> enumerate_up_to_degree(int d_max, int p);

std::vector<PairId> enumerate_pairs(std::size_t K);

/// Rank of (a,b) in enumerate_pairs(K), a != b in either order.
std::size_t pair_rank(std::size_t a, std::size_t b, std::size_t K);

}  // namespace copclust
