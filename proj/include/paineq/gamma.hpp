#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace paineq::specfun {

namespace detail {

// Lanczos approximation, g = 607/128, 15 terms (Godfrey's coefficients).
// Relative accuracy ~1e-15 on the real axis away from the poles.
inline constexpr double lanczos_g = 4.7421875;
inline constexpr double lanczos_c[15] = {
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

inline double lanczos_sum(double z)
{
    double s = lanczos_c[0];
    for (int k = 1; k < 15; ++k) s += lanczos_c[k] / (z + k - 1);
    return s;
}

} // namespace detail

inline bool is_nonpositive_integer(double x)
{
    return x <= 0.0 && x == std::floor(x);
}

/// Euler Gamma function on the real axis.
inline double gamma_fn(double x)
{
    using std::numbers::pi;
    if (is_nonpositive_integer(x))
        throw std::domain_error("gamma_fn: pole at non-positive integer x=" + std::to_string(x));
    if (x >= 0.5) {
        const double t = x + detail::lanczos_g - 0.5;
        return std::sqrt(2.0 * pi) * std::pow(t, x - 0.5) * std::exp(-t) * detail::lanczos_sum(x);
    }
    // reflection
    return pi / (std::sin(pi * x) * gamma_fn(1.0 - x));
}

/// Sign of Gamma(x) (x not a pole).
inline int gamma_sign(double x)
{
    if (x > 0.0) return 1;
    if (is_nonpositive_integer(x))
        throw std::domain_error("gamma_sign: pole at x=" + std::to_string(x));
    // Gamma alternates sign on (-n-1, -n): negative on (-1,0), positive on (-2,-1), ...
    const long long n = static_cast<long long>(std::floor(x));
    return (n % 2 == 0) ? 1 : -1;
}

/// log|Gamma(x)| for any non-pole x; pairs with gamma_sign for ratios of
/// large arguments where gamma_fn would overflow.
inline double log_abs_gamma(double x)
{
    using std::numbers::pi;
    if (is_nonpositive_integer(x))
        throw std::domain_error("log_abs_gamma: pole at x=" + std::to_string(x));
    if (x >= 0.5) {
        const double t = x + detail::lanczos_g - 0.5;
        return 0.5 * std::log(2.0 * pi) + (x - 0.5) * std::log(t) - t
               + std::log(detail::lanczos_sum(x));
    }
    return std::log(pi) - std::log(std::abs(std::sin(pi * x))) - log_abs_gamma(1.0 - x);
}

/// Gamma(a)/Gamma(b) through logs; safe when both arguments are large.
inline double gamma_ratio(double a, double b)
{
    return gamma_sign(a) * gamma_sign(b)
           * std::exp(log_abs_gamma(a) - log_abs_gamma(b));
}

} // namespace paineq::specfun
