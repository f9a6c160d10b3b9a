#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "paineq/gamma.hpp"

namespace paineq::specfun {

/// Gegenbauer polynomial C_n^mu(x), normalization C_n^mu(1) = Gamma(n+2mu)/(n! Gamma(2mu)),
/// by the three-term recurrence (n+1) C_{n+1} = 2(n+mu) x C_n - (n+2mu-1) C_{n-1}.
/// Forward recurrence is stable on |x| <= 1 at the orders used here (n up to a few hundred);
/// the loss is bounded by a factor ~n in ulps.
inline double gegenbauer(int n, double mu, double x)
{
    if (n < 0) throw std::domain_error("gegenbauer: n must be >= 0");
    if (n == 0) return 1.0;
    double cm1 = 1.0;
    double c0 = 2.0 * mu * x;
    for (int k = 1; k < n; ++k) {
        const double cp = (2.0 * (k + mu) * x * c0 - (k + 2.0 * mu - 1.0) * cm1) / (k + 1.0);
        cm1 = c0;
        c0 = cp;
    }
    return c0;
}

/// Squared-norm weight of C_n^mu against (1-x^2)^{mu-1/2}:
///   int_{-1}^{1} (1-x^2)^{mu-1/2} [C_n^mu]^2 dx = 2^{1-2mu} pi Gamma(n+2mu) / (n! Gamma(mu)^2 (n+mu)).
inline double gegenbauer_norm(int n, double mu)
{
    using std::numbers::pi;
    const double lg = (1.0 - 2.0 * mu) * std::log(2.0) + std::log(pi)
                      + log_abs_gamma(n + 2.0 * mu) - log_abs_gamma(n + 1.0)
                      - 2.0 * log_abs_gamma(mu) - std::log(std::abs(n + mu));
    const double sign = gamma_sign(n + 2.0 * mu) * ((n + mu) > 0 ? 1.0 : -1.0);
    return sign * std::exp(lg);
}

/// Generalized Laguerre polynomial L_n^lambda(x).
inline double laguerre(int n, double lambda, double x)
{
    if (n < 0) throw std::domain_error("laguerre: n must be >= 0");
    if (n == 0) return 1.0;
    double lm1 = 1.0;
    double l0 = 1.0 + lambda - x;
    for (int k = 1; k < n; ++k) {
        const double lp = ((2.0 * k + 1.0 + lambda - x) * l0 - (k + lambda) * lm1) / (k + 1.0);
        lm1 = l0;
        l0 = lp;
    }
    return l0;
}

} // namespace paineq::specfun
