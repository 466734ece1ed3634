#pragma once

// Independent reference computations used by the tests. None of them calls
// into the library's numeric kernels.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "copclust/index_enum.hpp"
#include "copclust/matrix.hpp"

namespace oracle {

/// Binomial coefficient as a double.
inline double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Shifted Legendre from its explicit expansion
///   P~_n(u) = sum_k (-1)^(n+k) C(n,k) C(n+k,k) u^k,
/// times sqrt(2n+1). Accurate for the small degrees used in tests.
inline double legendre(int n, double u) {
  double s = 0.0;
  for (int k = 0; k <= n; ++k) {
    s += ((n + k) % 2 ? -1.0 : 1.0) * binom(n, k) * binom(n + k, k) * std::pow(u, k);
  }
  return std::sqrt(2.0 * n + 1.0) * s;
}

inline double legendre_derivative(int n, double u) {
  double s = 0.0;
  for (int k = 1; k <= n; ++k) {
    s += ((n + k) % 2 ? -1.0 : 1.0) * binom(n, k) * binom(n + k, k) * k * std::pow(u, k - 1);
  }
  return std::sqrt(2.0 * n + 1.0) * s;
}

/// Gauss-Legendre nodes and weights on [0,1] (Newton iteration on P_n).
inline void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  const double pi = std::acos(-1.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[i] = 0.5 * (1.0 - z);
    x[n - 1 - i] = 0.5 * (1.0 + z);
    w[i] = w[n - 1 - i] = 1.0 / ((1.0 - z * z) * pp * pp);
  }
}

/// Kendall's tau-a by direct enumeration of pairs.
inline double kendall_tau(const copclust::Matrix& m, std::size_t c0 = 0, std::size_t c1 = 1) {
  const std::size_t n = m.rows();
  long long s = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = i + 1; k < n; ++k) {
      const double a = m(i, c0) - m(k, c0), b = m(i, c1) - m(k, c1);
      s += (a * b > 0) - (a * b < 0);
    }
  }
  return 2.0 * static_cast<double>(s) / (static_cast<double>(n) * (n - 1));
}

/// rho_hat_j by a plain double loop.
inline std::vector<double> coefficients(const copclust::Matrix& u,
                                        const std::vector<copclust::MultiIndex>& idx) {
  std::vector<double> out;
  for (const auto& j : idx) {
    double s = 0.0;
    for (std::size_t i = 0; i < u.rows(); ++i) {
      double prod = 1.0;
      for (std::size_t d = 0; d < u.cols(); ++d) prod *= legendre(j.j[d], u(i, d));
      s += prod;
    }
    out.push_back(s / static_cast<double>(u.rows()));
  }
  return out;
}

/// Influence values W_i + sum_d (1/n) sum_k dW(U_k)/du_d 1{U_id <= U_kd},
/// quadratic in n.
inline std::vector<double> influence(const copclust::Matrix& u, const copclust::MultiIndex& j) {
  const std::size_t n = u.rows(), p = u.cols();
  auto term = [&](std::size_t i, std::size_t skip) {
    double prod = 1.0;
    for (std::size_t d = 0; d < p; ++d) {
      prod *= d == skip ? legendre_derivative(j.j[d], u(i, d)) : legendre(j.j[d], u(i, d));
    }
    return prod;
  };
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double v = term(i, p);
    for (std::size_t d = 0; d < p; ++d) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        if (u(i, d) <= u(k, d)) s += term(k, d);
      }
      v += s / static_cast<double>(n);
    }
    out[i] = v;
  }
  return out;
}

/// Kolmogorov distance between the empirical CDF of xs and the uniform CDF.
inline double ks_uniform(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    d = std::max({d, std::abs((i + 1) / n - xs[i]), std::abs(xs[i] - i / n)});
  }
  return d;
}

/// Sample variance with denominator n - 1.
inline double variance(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m += x;
  m /= static_cast<double>(v.size());
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size() - 1);
}

/// Random matrix with entries uniform on (0,1).
inline copclust::Matrix random_matrix(std::size_t n, std::size_t p, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  copclust::Matrix m(n, p);
  for (double& x : m.values()) x = unif(eng);
  return m;
}

}  // namespace oracle
