#include "copclust/pseudo_obs.hpp"

#include <algorithm>
#include <numeric>

#include "copclust/error.hpp"

namespace copclust {

std::vector<double> average_ranks(std::span<const double> column) {
  const std::size_t n = column.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return column[a] < column[b]; });
  std::vector<double> ranks(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t k = i + 1;
    while (k < n && column[order[k]] == column[order[i]]) ++k;
    const double avg = 0.5 * static_cast<double>(i + 1 + k);  // mean of ranks i+1..k
    for (std::size_t t = i; t < k; ++t) ranks[order[t]] = avg;
    i = k;
  }
  return ranks;
}

PseudoSample pseudo_observations(const Matrix& data) {
  const std::size_t n = data.rows(), p = data.cols();
  if (n < 2) throw InputError("pseudo-observations need at least 2 rows");
  PseudoSample out{Matrix(n, p)};
  const double denom = static_cast<double>(n + 1);
  for (std::size_t d = 0; d < p; ++d) {
    const auto col = data.column(d);
    const auto ranks = average_ranks(col);
    if (std::all_of(col.begin(), col.end(), [&](double v) { return v == col.front(); })) {
      throw InputError("column " + std::to_string(d + 1) + " is constant");
    }
    for (std::size_t i = 0; i < n; ++i) out.u(i, d) = ranks[i] / denom;
  }
  return out;
}

PseudoSample pseudo_observations(const Population& pop) {
  try {
    return pseudo_observations(pop.data);
  } catch (const InputError& e) {
    throw InputError("population '" + pop.label + "': " + e.what());
  }
}

}  // namespace copclust
