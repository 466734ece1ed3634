#pragma once

#include <span>
#include <vector>

#include "copclust/dataset.hpp"
#include "copclust/matrix.hpp"

namespace copclust {

/// Rank pseudo-observations: entries rank/(n+1) in (0,1), one column per variable.
struct PseudoSample {
  Matrix u;
  std::size_t size() const { return u.rows(); }
  std::size_t dim() const { return u.cols(); }
};

/// Average ranks (1-based) of one column; ties share the mean of their ranks.
std::vector<double> average_ranks(std::span<const double> column);

/// U_ij = rank(X_ij within column j) / (n+1). Throws InputError for n < 2 or a
/// constant column.
PseudoSample pseudo_observations(const Matrix& data);
PseudoSample pseudo_observations(const Population& pop);

}  // namespace copclust
