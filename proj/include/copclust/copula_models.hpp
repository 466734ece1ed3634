#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "copclust/matrix.hpp"

namespace copclust {

enum class Family { gaussian, student, gumbel, frank, clayton, joe, independence, comonotone };

std::string_view to_string(Family f);
/// Accepts the names produced by to_string plus the short forms used in
/// design tables (gaus, stud, gumb, fran, clay, indep, como). Case-insensitive.
Family parse_family(std::string_view name);

/// One exchangeable p-variate copula parameterized by Kendall's tau.
struct CopulaSpec {
  Family family = Family::independence;
  double tau = 0.0;
  int dim = 2;
  double student_df = 4.0;

  /// Throws InputError if the invariants do not hold.
  void validate() const;
  friend bool operator==(const CopulaSpec&, const CopulaSpec&) = default;
};

/// Kendall's tau to the family parameter: equicorrelation rho for the
/// elliptical families, theta for the Archimedean ones. Frank and Joe invert
/// their tau(theta) relation by bisection to 1e-10.
double tau_to_param(const CopulaSpec& spec);

/// Kendall's tau implied by a Frank / Joe parameter (exposed for tests).
double frank_tau(double theta);
double joe_tau(double theta);

/// n i.i.d. rows of the copula, entries in (0,1). Archimedean families use
/// the Marshall-Olkin frailty construction. Deterministic given seed.
Matrix sample(const CopulaSpec& spec, std::size_t n, std::uint64_t seed);

}  // namespace copclust
