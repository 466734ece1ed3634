#pragma once

#include <span>
#include <vector>

#include "copclust/index_enum.hpp"
#include "copclust/matrix.hpp"
#include "copclust/pseudo_obs.hpp"

namespace copclust {

/// Estimated copula coefficients rho_hat_j = (1/n) sum_i prod_d L_{j_d}(U_id)
/// over an ordered index list.
///
/// With keep_products, two n x k matrices are retained for variance estimation:
///  - products:  W_it = prod_d L_{j_d}(U_id), the per-observation summands;
///  - influence: W_it plus the rank-estimation correction
///        sum_d (1/n) sum_k dW_kt/du_d * 1{U_id <= U_kd},
///    whose sample variance estimates n * Var(rho_hat_t) when the margins are
///    replaced by ranks.
struct CoefficientTable {
  std::vector<MultiIndex> indices;
  std::vector<double> rho_hat;
  std::size_t n = 0;
  Matrix products;
  Matrix influence;

  std::size_t size() const { return indices.size(); }
  bool has_products() const { return !products.empty(); }
};

/// OpenMP kernel. Results do not depend on the thread count.
CoefficientTable estimate(const PseudoSample& pseudo, std::span<const MultiIndex> indices,
                          bool keep_products);

/// Serial reference implementation of the same computation, kept for tests
/// and the benchmark.
CoefficientTable estimate_serial(const PseudoSample& pseudo,
                                 std::span<const MultiIndex> indices, bool keep_products);

}  // namespace copclust
