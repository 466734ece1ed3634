#include "copclust/coefficients.hpp"

#include <algorithm>
#include <numeric>

#include "copclust/error.hpp"
#include "copclust/legendre.hpp"

namespace copclust {

namespace {

// L_k(U_id) and L_k'(U_id) for k <= max_degree, laid out [d][i][k].
struct LegendreTables {
  std::size_t n = 0, p = 0, width = 0;
  std::vector<double> values, derivs;

  double value(std::size_t d, std::size_t i, int k) const {
    return values[(d * n + i) * width + static_cast<std::size_t>(k)];
  }
  double deriv(std::size_t d, std::size_t i, int k) const {
    return derivs[(d * n + i) * width + static_cast<std::size_t>(k)];
  }
};

int max_degree(std::span<const MultiIndex> indices) {
  int m = 0;
  for (const auto& idx : indices) m = std::max(m, *std::max_element(idx.j.begin(), idx.j.end()));
  return m;
}

void validate(const PseudoSample& pseudo, std::span<const MultiIndex> indices) {
  if (indices.empty()) throw InputError("coefficient estimation needs at least one index");
  if (pseudo.size() < 2) throw InputError("coefficient estimation needs at least 2 rows");
  for (const auto& idx : indices) {
    if (idx.j.size() != pseudo.dim()) {
      throw InputError("index " + idx.str() + " does not match dimension " +
                       std::to_string(pseudo.dim()));
    }
  }
}

template <bool Parallel>
LegendreTables make_tables(const PseudoSample& pseudo, int degree) {
  LegendreTables t;
  t.n = pseudo.size();
  t.p = pseudo.dim();
  t.width = static_cast<std::size_t>(degree) + 1;
  t.values.resize(t.p * t.n * t.width);
  t.derivs.resize(t.values.size());
  const auto total = static_cast<std::ptrdiff_t>(t.p * t.n);
#pragma omp parallel for schedule(static) if (Parallel)
  for (std::ptrdiff_t di = 0; di < total; ++di) {
    const auto d = static_cast<std::size_t>(di) / t.n;
    const auto i = static_cast<std::size_t>(di) % t.n;
    const std::size_t off = static_cast<std::size_t>(di) * t.width;
    legendre::eval_with_derivative(degree, pseudo.u(i, d), &t.values[off], &t.derivs[off]);
  }
  return t;
}

double product(const LegendreTables& t, const MultiIndex& idx, std::size_t i,
               std::size_t skip = static_cast<std::size_t>(-1)) {
  double w = 1.0;
  for (std::size_t d = 0; d < t.p; ++d) {
    if (d != skip) w *= t.value(d, i, idx.j[d]);
  }
  return w;
}

// Rows of one column in ascending order; group_start[r] is the first sorted
// position of the tie group holding sorted position r.
struct ColumnOrder {
  std::vector<std::size_t> order;
  std::vector<std::size_t> group_start;
};

ColumnOrder column_order(const PseudoSample& pseudo, std::size_t d) {
  const std::size_t n = pseudo.size();
  ColumnOrder co;
  co.order.resize(n);
  std::iota(co.order.begin(), co.order.end(), 0);
  std::stable_sort(co.order.begin(), co.order.end(), [&](std::size_t a, std::size_t b) {
    return pseudo.u(a, d) < pseudo.u(b, d);
  });
  co.group_start.resize(n);
  for (std::size_t r = 0; r < n; ++r) {
    const bool tied = r > 0 && pseudo.u(co.order[r], d) == pseudo.u(co.order[r - 1], d);
    co.group_start[r] = tied ? co.group_start[r - 1] : r;
  }
  return co;
}

// Adds (1/n) sum_k g_k 1{U_id <= U_kd} to column t of `influence`.
void add_rank_correction(const LegendreTables& tab, const MultiIndex& idx, std::size_t d,
                         const ColumnOrder& co, std::size_t t, Matrix& influence,
                         std::vector<double>& suffix) {
  const std::size_t n = tab.n;
  suffix.assign(n + 1, 0.0);
  for (std::size_t r = n; r-- > 0;) {
    const std::size_t k = co.order[r];
    const double g = tab.deriv(d, k, idx.j[d]) * product(tab, idx, k, d);
    suffix[r] = suffix[r + 1] + g;
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t i = co.order[r];
    influence(i, t) += suffix[co.group_start[r]] * inv_n;
  }
}

template <bool Parallel>
CoefficientTable estimate_impl(const PseudoSample& pseudo, std::span<const MultiIndex> indices,
                               bool keep_products) {
  validate(pseudo, indices);
  const std::size_t n = pseudo.size(), k = indices.size();
  const LegendreTables tab = make_tables<Parallel>(pseudo, max_degree(indices));

  CoefficientTable out;
  out.indices.assign(indices.begin(), indices.end());
  out.n = n;
  out.rho_hat.assign(k, 0.0);
  Matrix products(n, k);

#pragma omp parallel for schedule(static) if (Parallel)
  for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(n); ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    for (std::size_t t = 0; t < k; ++t) products(i, t) = product(tab, indices[t], i);
  }
  for (std::size_t t = 0; t < k; ++t) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += products(i, t);
    out.rho_hat[t] = s / static_cast<double>(n);
  }
  if (!keep_products) return out;

  std::vector<ColumnOrder> orders(pseudo.dim());
#pragma omp parallel for schedule(static) if (Parallel)
  for (std::ptrdiff_t d = 0; d < static_cast<std::ptrdiff_t>(pseudo.dim()); ++d) {
    orders[static_cast<std::size_t>(d)] = column_order(pseudo, static_cast<std::size_t>(d));
  }

  Matrix influence = products;
#pragma omp parallel if (Parallel)
  {
    std::vector<double> suffix;
#pragma omp for schedule(dynamic)
    for (std::ptrdiff_t tt = 0; tt < static_cast<std::ptrdiff_t>(k); ++tt) {
      const auto t = static_cast<std::size_t>(tt);
      for (std::size_t d = 0; d < pseudo.dim(); ++d) {
        if (indices[t].j[d] > 0) add_rank_correction(tab, indices[t], d, orders[d], t, influence, suffix);
      }
    }
  }
  out.products = std::move(products);
  out.influence = std::move(influence);
  return out;
}

}  // namespace

CoefficientTable estimate(const PseudoSample& pseudo, std::span<const MultiIndex> indices,
                          bool keep_products) {
  return estimate_impl<true>(pseudo, indices, keep_products);
}

CoefficientTable estimate_serial(const PseudoSample& pseudo, std::span<const MultiIndex> indices,
                                 bool keep_products) {
  return estimate_impl<false>(pseudo, indices, keep_products);
}

}  // namespace copclust
