#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "paineq/gamma.hpp"

// Modified Bessel functions of fractional order.
//
// I_mu(x): defining power series (all terms positive, no cancellation).
// K_mu(x): reduced to a base pair (K_b, K_{b+1}) with b in [-1/2, 1/2):
//   x <= 2   Temme's series, uniformly accurate through b = 0;
//   x >  2   trapezoidal rule on K_b(x) = int_0^inf exp(-x cosh t) cosh(b t) dt,
//            accurate to ~1e-14 there (integrand analytic in a strip);
// higher orders by upward recurrence K_{mu+1} = K_{mu-1} + (2 mu/x) K_mu, the
// stable direction for K. A log-scaled ladder serves the spheroidal series
// where K_{n-nu} spans hundreds of orders of magnitude.

namespace paineq::specfun {

namespace detail {

// coefficients of 1/Gamma(1+z) = sum b_k z^k (Abramowitz-Stegun 6.1.34 shifted)
inline constexpr double inv_gamma1p[15] = {
    1.0,
    0.5772156649015329,
    -0.6558780715202538,
    -0.0420026350340952,
    0.1665386113822915,
    -0.0421977345555443,
    -0.0096219715278770,
    0.0072189432466630,
    -0.0011651675918591,
    -0.0002152416741149,
    0.0001280502823882,
    -0.0000201348547807,
    -0.0000012504934821,
    0.0000011330272320,
    -0.0000002056338417,
};

// Gamma1(mu) = [1/Gamma(1-mu) - 1/Gamma(1+mu)] / (2 mu), smooth through mu = 0
inline double temme_gamma1(double mu)
{
    if (std::abs(mu) >= 0.2)
        return (1.0 / gamma_fn(1.0 - mu) - 1.0 / gamma_fn(1.0 + mu)) / (2.0 * mu);
    const double m2 = mu * mu;
    double s = 0.0, pw = 1.0;
    for (int k = 1; k < 15; k += 2) {
        s += inv_gamma1p[k] * pw;
        pw *= m2;
    }
    return -s;
}

inline double temme_gamma2(double mu)
{
    return 0.5 * (1.0 / gamma_fn(1.0 - mu) + 1.0 / gamma_fn(1.0 + mu));
}

// (K_mu, K_{mu+1}) for |mu| <= 0.5, 0 < x <= ~2.2 (Temme 1975)
inline std::pair<double, double> bessel_k_temme_pair(double mu, double x)
{
    using std::numbers::pi;
    const double d = std::log(2.0 / x);
    const double e = mu * d;
    const double pimu = pi * mu;
    const double fact = (std::abs(pimu) < 1e-10) ? 1.0 + pimu * pimu / 6.0
                                                 : pimu / std::sin(pimu);
    const double fact2 = (std::abs(e) < 1e-6) ? 1.0 + e * e / 6.0 : std::sinh(e) / e;
    const double g1 = temme_gamma1(mu), g2 = temme_gamma2(mu);
    double f = fact * (g1 * std::cosh(e) + g2 * fact2 * d);
    double p = 0.5 * std::exp(e) * gamma_fn(1.0 + mu);
    double q = 0.5 * std::exp(-e) * gamma_fn(1.0 - mu);
    const double q4 = 0.25 * x * x;
    double c = 1.0;
    double sum = f, sum1 = p;
    for (int k = 1; k < 200; ++k) {
        f = (k * f + p + q) / (k * k - mu * mu);
        p /= (k - mu);
        q /= (k + mu);
        c *= q4 / k;
        const double del = c * f;
        sum += del;
        sum1 += c * (p - k * f);
        if (std::abs(del) < std::abs(sum) * 1e-18) break;
    }
    return {sum, (2.0 / x) * sum1};
}

// kept as an independent cross-check of the Temme branch (tests)
inline double bessel_k_series(double mu, double x)
{
    const double q = 0.25 * x * x;
    double fm = 1.0, fp = 1.0, tm = 1.0, tp = 1.0;
    for (int k = 1; k < 60; ++k) {
        tm *= q / (k * (k - mu));
        tp *= q / (k * (k + mu));
        fm += tm;
        fp += tp;
        if (std::abs(tm) + std::abs(tp) < 1e-18 * (std::abs(fm) + std::abs(fp))) break;
    }
    const double hp = std::pow(0.5 * x, mu);
    return 0.5 * (gamma_fn(mu) / hp * fm + gamma_fn(-mu) * hp * fp);
}

// log of int_0^inf exp(-x cosh t) cosh(mu t) dt; reliable for x >= 2 and
// moderate mu (the strip bound degrades for mu >> x; ladders avoid that).
inline double bessel_k_integral_log(double mu, double x)
{
    mu = std::abs(mu);
    double T = std::acosh(1.0 + 47.0 / x);
    for (int it = 0; it < 4; ++it) T = std::acosh(1.0 + (47.0 + mu * T) / x);
    const int n = static_cast<int>(std::ceil(T / 0.10));
    const double h = T / n;
    double m = -x;
    for (int k = 1; k <= n; ++k) {
        const double t = k * h;
        const double e = mu * t - x * std::cosh(t);
        if (e > m) m = e;
    }
    double s = 0.5 * std::exp(-x - m);
    for (int k = 1; k <= n; ++k) {
        const double t = k * h;
        s += std::exp(-x * std::cosh(t) - m) * std::cosh(mu * t);
    }
    return m + std::log(h * s);
}

// base pair (K_b, K_{b+1}) with b in [-0.5, 0.5)
inline std::pair<double, double> bessel_k_base_pair(double b, double x)
{
    if (x <= 2.0) return bessel_k_temme_pair(b, x);
    return {std::exp(bessel_k_integral_log(b, x)),
            std::exp(bessel_k_integral_log(b + 1.0, x))};
}

} // namespace detail

/// Modified Bessel function of the first kind, I_mu(x), mu > -1, x >= 0.
inline double bessel_i(double mu, double x)
{
    if (x < 0.0) throw std::domain_error("bessel_i: x must be >= 0");
    if (x == 0.0) {
        if (mu == 0.0) return 1.0;
        if (mu > 0.0) return 0.0;
        return std::numeric_limits<double>::infinity();
    }
    const double q = 0.25 * x * x;
    double f = 1.0, t = 1.0;
    for (int k = 1; k < 300; ++k) {
        t *= q / (k * (k + mu));
        f += t;
        if (t < 1e-18 * f) break;
    }
    return std::pow(0.5 * x, mu) / gamma_fn(mu + 1.0) * f;
}

/// log I_mu(x) for x > 0, mu > -1 (I_mu > 0 there).
inline double bessel_i_log(double mu, double x)
{
    if (x <= 0.0) throw std::domain_error("bessel_i_log: x must be > 0");
    const double q = 0.25 * x * x;
    double f = 1.0, t = 1.0;
    for (int k = 1; k < 400; ++k) {
        t *= q / (k * (k + mu));
        f += t;
        if (t < 1e-18 * f) break;
    }
    return mu * std::log(0.5 * x) - log_abs_gamma(mu + 1.0) + std::log(f);
}

/// Modified Bessel function of the third kind, K_mu(x), x > 0. K_{-mu} = K_mu.
inline double bessel_k(double mu, double x)
{
    if (x <= 0.0) throw std::domain_error("bessel_k: x must be > 0");
    mu = std::abs(mu);
    const int m = static_cast<int>(std::floor(mu + 0.5));
    const double b = mu - m; // in [-0.5, 0.5)
    auto [km1, k0] = detail::bessel_k_base_pair(b, x);
    if (m == 0) return km1;
    for (int j = 1; j < m; ++j) {
        const double kp = km1 + (2.0 * (b + j) / x) * k0;
        km1 = k0;
        k0 = kp;
    }
    return k0;
}

/// log K_{b+j}(x) for j = 0..m; b is the base order, |b| <= 0.5.
/// Upward recurrence with rescaling; all values positive.
inline std::vector<double> bessel_k_log_ladder(double b, double x, int m)
{
    std::vector<double> out(m + 1);
    auto [k0, k1] = detail::bessel_k_base_pair(b, x);
    out[0] = std::log(k0);
    if (m == 0) return out;
    out[1] = std::log(k1);
    double lscale = 0.0;
    for (int j = 1; j < m; ++j) {
        double kp = k0 + (2.0 * (b + j) / x) * k1;
        k0 = k1;
        k1 = kp;
        if (k1 > 1e250) {
            const double f = 1e-250;
            k0 *= f;
            k1 *= f;
            lscale += 250.0 * std::log(10.0);
        }
        out[j + 1] = std::log(k1) + lscale;
    }
    return out;
}

/// d/dx K_mu(x) = -(K_{mu-1} + K_{mu+1})/2.
inline double bessel_k_deriv(double mu, double x)
{
    return -0.5 * (bessel_k(mu - 1.0, x) + bessel_k(mu + 1.0, x));
}

/// d/dx I_mu(x) = (I_{mu-1} + I_{mu+1})/2.
inline double bessel_i_deriv(double mu, double x)
{
    return 0.5 * (bessel_i(mu - 1.0, x) + bessel_i(mu + 1.0, x));
}

} // namespace paineq::specfun
