#include "copclust/legendre.hpp"

#include <cmath>
#include <string>

#include "copclust/error.hpp"

namespace copclust::legendre {

namespace {

constexpr double kDomainTolerance = 1e-12;

double checked(double u) {
  if (!(u >= -kDomainTolerance && u <= 1.0 + kDomainTolerance)) {
    throw DomainError("legendre: argument " + std::to_string(u) + " outside [0,1]");
  }
  return u < 0.0 ? 0.0 : (u > 1.0 ? 1.0 : u);
}

}  // namespace

double eval(int n, double u) {
  if (n < 0) throw DomainError("legendre: negative degree");
  const double x = 2.0 * checked(u) - 1.0;
  double prev = 1.0;
  if (n == 0) return 1.0;
  double cur = x;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0) * x * cur - k * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return std::sqrt(2.0 * n + 1.0) * cur;
}

std::vector<double> eval_batch(int n_max, double u) {
  if (n_max < 0) throw DomainError("legendre: negative degree");
  const double x = 2.0 * checked(u) - 1.0;
  std::vector<double> out(static_cast<std::size_t>(n_max) + 1);
  double prev = 1.0;
  double cur = x;
  out[0] = 1.0;
  for (int k = 1; k <= n_max; ++k) {
    out[k] = std::sqrt(2.0 * k + 1.0) * cur;
    const double next = ((2.0 * k + 1.0) * x * cur - k * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return out;
}

void eval_with_derivative(int n_max, double u, double* values, double* derivs) {
  const double x = 2.0 * u - 1.0;
  // P_k and P_k' on [-1,1]; P'_{k+1} = P'_{k-1} + (2k+1) P_k.
  double p_prev = 1.0, p_cur = x;
  double d_prev = 0.0, d_cur = 1.0;
  values[0] = 1.0;
  derivs[0] = 0.0;
  for (int k = 1; k <= n_max; ++k) {
    const double norm = std::sqrt(2.0 * k + 1.0);
    values[k] = norm * p_cur;
    derivs[k] = 2.0 * norm * d_cur;  // chain rule for x = 2u - 1
    const double p_next = ((2.0 * k + 1.0) * x * p_cur - k * p_prev) / (k + 1.0);
    const double d_next = d_prev + (2.0 * k + 1.0) * p_cur;
    p_prev = p_cur;
    p_cur = p_next;
    d_prev = d_cur;
    d_cur = d_next;
  }
}

}  // namespace copclust::legendre
