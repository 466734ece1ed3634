#include "copclust/copula_models.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/distributions/students_t.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "copclust/error.hpp"
#include "copclust/rng.hpp"

namespace copclust {

std::string_view to_string(Family f) {
  switch (f) {
    case Family::gaussian: return "gaussian";
    case Family::student: return "student";
    case Family::gumbel: return "gumbel";
    case Family::frank: return "frank";
    case Family::clayton: return "clayton";
    case Family::joe: return "joe";
    case Family::independence: return "independence";
    case Family::comonotone: return "comonotone";
  }
  return "?";
}

Family parse_family(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "gaussian" || s == "gaus" || s == "normal") return Family::gaussian;
  if (s == "student" || s == "stud" || s == "t") return Family::student;
  if (s == "gumbel" || s == "gumb") return Family::gumbel;
  if (s == "frank" || s == "fran") return Family::frank;
  if (s == "clayton" || s == "clay") return Family::clayton;
  if (s == "joe") return Family::joe;
  if (s == "independence" || s == "indep" || s == "indep.") return Family::independence;
  if (s == "comonotone" || s == "como") return Family::comonotone;
  throw InputError("unknown copula family '" + std::string(name) + "'");
}

void CopulaSpec::validate() const {
  if (dim < 2) throw InputError("copula dimension must be >= 2");
  if (family == Family::comonotone || family == Family::independence) return;
  if (!(tau >= 0.0 && tau < 1.0)) {
    throw InputError("kendall tau must lie in [0,1) for family " +
                     std::string(to_string(family)));
  }
  if (family == Family::clayton && !(tau > 0.0)) {
    throw InputError("clayton copula requires tau > 0");
  }
  if (family == Family::student && !(student_df > 0.0)) {
    throw InputError("student copula requires positive degrees of freedom");
  }
}

double frank_tau(double theta) {
  if (theta == 0.0) return 0.0;
  const double a = std::abs(theta);
  if (a < 1e-4) return theta / 9.0;
  auto integrand = [](double t) { return t == 0.0 ? 1.0 : t / std::expm1(t); };
  const double debye =
      boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, 0.0, a, 15, 1e-14) /
      a;
  const double tau = 1.0 - 4.0 / a * (1.0 - debye);
  return theta < 0 ? -tau : tau;
}

double joe_tau(double theta) {
  if (theta < 1.0) throw DomainError("joe copula requires theta >= 1");
  constexpr int terms = 20000;
  double sum = 0.0;
  for (int k = terms; k >= 1; --k) {
    sum += 1.0 / (k * (theta * k + 2.0) * (theta * (k - 1.0) + 2.0));
  }
  sum += 1.0 / (2.0 * theta * theta * terms * static_cast<double>(terms));
  return 1.0 - 4.0 * sum;
}

namespace {

template <class F>
double bisect_increasing(F tau_of, double target, double lo, double hi, const char* family) {
  if (tau_of(hi) < target) {
    throw NumericError(std::string("tau inversion for ") + family + " failed to bracket tau=" +
                       std::to_string(target));
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double val = tau_of(mid);
    if (std::abs(val - target) <= 1e-10) return mid;
    (val < target ? lo : hi) = mid;
  }
  const double mid = 0.5 * (lo + hi);
  if (std::abs(tau_of(mid) - target) > 1e-10) {
    throw NumericError(std::string("tau inversion for ") + family + " did not converge");
  }
  return mid;
}

}  // namespace

double tau_to_param(const CopulaSpec& spec) {
  spec.validate();
  const double tau = spec.tau;
  switch (spec.family) {
    case Family::gaussian:
    case Family::student: return std::sin(std::numbers::pi * tau / 2.0);
    case Family::clayton: return 2.0 * tau / (1.0 - tau);
    case Family::gumbel: return 1.0 / (1.0 - tau);
    case Family::frank:
      if (tau == 0.0) return 0.0;
      return bisect_increasing(frank_tau, tau, 0.0, 1e4, "frank");
    case Family::joe:
      if (tau == 0.0) return 1.0;
      return bisect_increasing(joe_tau, tau, 1.0, 1e4, "joe");
    case Family::independence:
    case Family::comonotone:
      throw InputError(std::string(to_string(spec.family)) + " copula has no parameter");
  }
  return 0.0;
}

namespace {

constexpr double kUpper = 1.0 - 0x1.0p-53;
constexpr double kLower = std::numeric_limits<double>::min();

double clamp_open(double u) { return std::clamp(u, kLower, kUpper); }

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double exponential(Engine& eng) { return -std::log(uniform_open(eng)); }

// Positive stable variate with Laplace transform exp(-t^alpha), 0 < alpha < 1
// (Kanter's representation).
double positive_stable(double alpha, Engine& eng) {
  const double theta = std::numbers::pi * uniform_open(eng);
  const double w = exponential(eng);
  const double a = std::sin(alpha * theta) / std::pow(std::sin(theta), 1.0 / alpha);
  const double b = std::pow(std::sin((1.0 - alpha) * theta) / w, (1.0 - alpha) / alpha);
  return a * b;
}

// Logarithmic series variate, P(V=k) = p^k / (-k log(1-p)), with
// log(1-p) = log1mp. Kemp's LK algorithm.
double logarithmic_series(double p, double log1mp, Engine& eng) {
  const double u2 = uniform_open(eng);
  if (u2 > p) return 1.0;
  const double u1 = uniform_open(eng);
  const double q = -std::expm1(u1 * log1mp);
  if (u2 < q * q) return std::floor(1.0 + std::log(u2) / std::log(q));
  if (u2 > q) return 1.0;
  return 2.0;
}

// Sibuya variate, P(V > k) = 1 / (k B(k, 1-alpha)), 0 < alpha < 1.
double sibuya(double alpha, Engine& eng) {
  const double u = uniform_open(eng);
  if (u <= alpha) return 1.0;
  const double g1ma = std::tgamma(1.0 - alpha);
  const double ginv = std::pow((1.0 - u) * g1ma, -1.0 / alpha);
  const double fl = std::floor(ginv);
  if (!(ginv < 1.0 / std::numeric_limits<double>::epsilon())) return fl;
  const double survival =
      std::exp(std::lgamma(fl + 1.0 - alpha) - std::lgamma(fl + 1.0) - std::lgamma(1.0 - alpha));
  return (1.0 - u < survival) ? std::ceil(ginv) : fl;
}

}  // namespace

Matrix sample(const CopulaSpec& spec, std::size_t n, std::uint64_t seed) {
  spec.validate();
  if (n == 0) throw InputError("sample size must be >= 1");
  const std::size_t p = static_cast<std::size_t>(spec.dim);
  Matrix out(n, p);
  Engine eng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  auto independent_rows = [&] {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t d = 0; d < p; ++d) out(i, d) = uniform_open(eng);
  };

  // Archimedean generator psi applied to E_d / V for one frailty per row.
  auto frailty_rows = [&](auto draw_frailty, auto psi) {
    for (std::size_t i = 0; i < n; ++i) {
      const double v = draw_frailty();
      for (std::size_t d = 0; d < p; ++d) out(i, d) = clamp_open(psi(exponential(eng) / v));
    }
  };

  switch (spec.family) {
    case Family::independence: independent_rows(); break;
    case Family::comonotone:
      for (std::size_t i = 0; i < n; ++i) {
        const double u = uniform_open(eng);
        for (std::size_t d = 0; d < p; ++d) out(i, d) = u;
      }
      break;
    case Family::gaussian:
    case Family::student: {
      const double rho = tau_to_param(spec);
      const double a = std::sqrt(rho), b = std::sqrt(1.0 - rho);
      const bool student = spec.family == Family::student;
      std::gamma_distribution<double> chi2_half(spec.student_df / 2.0, 2.0);
      boost::math::students_t_distribution<double> tdist(spec.student_df);
      for (std::size_t i = 0; i < n; ++i) {
        const double z0 = normal(eng);
        const double scale = student ? std::sqrt(spec.student_df / chi2_half(eng)) : 1.0;
        for (std::size_t d = 0; d < p; ++d) {
          const double x = (a * z0 + b * normal(eng)) * scale;
          out(i, d) = clamp_open(student ? boost::math::cdf(tdist, x) : std_normal_cdf(x));
        }
      }
      break;
    }
    case Family::clayton: {
      const double theta = tau_to_param(spec);
      std::gamma_distribution<double> gamma(1.0 / theta, 1.0);
      frailty_rows([&] { return gamma(eng); },
                   [&](double t) { return std::exp(-std::log1p(t) / theta); });
      break;
    }
    case Family::gumbel: {
      const double theta = tau_to_param(spec);
      if (theta == 1.0) {
        independent_rows();
        break;
      }
      const double alpha = 1.0 / theta;
      frailty_rows([&] { return positive_stable(alpha, eng); },
                   [&](double t) { return std::exp(-std::pow(t, alpha)); });
      break;
    }
    case Family::frank: {
      const double theta = tau_to_param(spec);
      if (theta == 0.0) {
        independent_rows();
        break;
      }
      const double p_log = -std::expm1(-theta);
      frailty_rows([&] { return logarithmic_series(p_log, -theta, eng); },
                   [&](double t) { return -std::log1p(-p_log * std::exp(-t)) / theta; });
      break;
    }
    case Family::joe: {
      const double theta = tau_to_param(spec);
      if (theta == 1.0) {
        independent_rows();
        break;
      }
      const double alpha = 1.0 / theta;
      frailty_rows([&] { return sibuya(alpha, eng); },
                   [&](double t) { return -std::expm1(std::log(-std::expm1(-t)) * alpha); });
      break;
    }
  }
  return out;
}

}  // namespace copclust
