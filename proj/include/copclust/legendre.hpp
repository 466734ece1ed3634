#pragma once

#include <vector>

namespace copclust::legendre {

/// Shifted Legendre polynomial orthonormal on [0,1]:
///   L_n(u) = sqrt(2n+1) * P_n(2u - 1),
/// evaluated by the three-term recurrence of P_n. Throws DomainError when u is
/// outside [0,1] by more than 1e-12.
double eval(int n, double u);

/// [L_0(u), ..., L_{n_max}(u)] in one recurrence pass.
std::vector<double> eval_batch(int n_max, double u);

/// Fills values[0..n_max] with L_k(u) and derivs[0..n_max] with L_k'(u).
/// No domain check; callers pass interior points. Both spans must hold n_max+1.
void eval_with_derivative(int n_max, double u, double* values, double* derivs);

}  // namespace copclust::legendre
