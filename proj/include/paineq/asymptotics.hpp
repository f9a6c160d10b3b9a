#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "paineq/bessel.hpp"
#include "paineq/gamma.hpp"
#include "paineq/polynomials.hpp"
#include "paineq/quadrature.hpp"

// Closed-form limits: the small-theta power-kernel solutions, the half-line
// Wiener-Hopf solution with its Laguerre eigen-identity, and the large-theta
// two-edge approximation g_-.

namespace paineq::asympt {

using std::numbers::pi;

struct PowerKernelSolutions {
    double nu;
    double g0(double t) const
    {
        return std::cos(pi * nu) / (pi * std::pow(1.0 - t * t, nu + 0.5));
    }
    double g1(double t) const
    {
        return -std::cos(pi * nu) * t / (2.0 * pi * nu * std::pow(1.0 - t * t, nu + 0.5));
    }
    // smooth factors of the factored representation
    double h0() const { return std::cos(pi * nu) / pi; }
    double h1(double t) const { return -std::cos(pi * nu) * t / (2.0 * pi * nu); }
};

inline PowerKernelSolutions power_kernel_solutions(double nu)
{
    if (!(std::abs(nu) < 0.5) || nu == 0.0)
        throw std::domain_error("power_kernel_solutions: need 0 < |nu| < 1/2");
    return PowerKernelSolutions{nu};
}

/// Two-term small-theta law eta ~ B (2 theta)^{1-2nu} - theta/(2 nu).
inline double small_theta_eta(double nu, double theta)
{
    if (!(std::abs(nu) < 0.5) || nu == 0.0)
        throw std::domain_error("small_theta_eta: need 0 < |nu| < 1/2");
    const double B = std::pow(2.0, -3.0 * (1.0 - 2.0 * nu))
                     * std::pow(specfun::gamma_fn(nu), 2)
                     / (std::pow(specfun::gamma_fn(1.0 - nu), 2) * specfun::gamma_fn(2.0 * nu));
    return B * std::pow(2.0 * theta, 1.0 - 2.0 * nu) - theta / (2.0 * nu);
}

/// The same limit rebuilt from the mu_c, mu_s matching conditions (independent
/// route; the Gamma-function identities reduce it to small_theta_eta).
inline double small_theta_eta_from_mu(double nu, double theta)
{
    const double mu_s_inv = std::pow(theta, nu) * specfun::gamma_fn(-nu)
                            / std::pow(2.0, 1.0 + nu) / theta;
    const double mu_c_inv = std::pow(theta, nu) * specfun::gamma_fn(-nu)
                                / std::pow(2.0, 1.0 + nu)
                            + std::pow(theta, -nu) * std::cos(pi * nu)
                                  * specfun::gamma_fn(0.5 - nu) * specfun::gamma_fn(nu)
                                  / (std::sqrt(pi) * std::pow(2.0, 1.0 - nu)
                                     * specfun::gamma_fn(1.0 - nu));
    return -mu_c_inv / (2.0 * nu * mu_s_inv);
}

struct WienerHopf {
    double nu;
    double C; // sqrt(2)/pi^{3/2} cos(pi nu)
    double g0(double v) const { return C * std::pow(v, -nu - 0.5) * std::exp(-v); }
};

inline WienerHopf wiener_hopf_halfline(double nu)
{
    if (!(std::abs(nu) < 0.5)) throw std::domain_error("wiener_hopf_halfline: |nu| < 1/2");
    return {nu, std::sqrt(2.0) / std::pow(pi, 1.5) * std::cos(pi * nu)};
}

/// Residual of the half-line equation int_0^inf |u-v|^nu K_nu(|u-v|) g0(v) dv = e^{-u},
/// truncated at v = 40 (the dropped tail is below e^{-40}).
inline double wiener_hopf_residual(double nu, double u)
{
    const auto wh = wiener_hopf_halfline(nu);
    auto kern = [&](double w) { return std::pow(w, nu) * specfun::bessel_k(nu, w); };
    const double vmax = 40.0;
    auto left = [&](double v, double da, double du) {
        return kern(du) * std::pow(da, -nu - 0.5) * std::exp(-v) * wh.C;
    };
    auto right = [&](double v, double du, double /*db*/) {
        return kern(du) * std::pow(v, -nu - 0.5) * std::exp(-v) * wh.C;
    };
    const double I = quad::integrate_graded(left, 0.0, u, true, true, 6.0, 20,
                                            std::numeric_limits<double>::infinity(), u)
                     + quad::integrate_graded(right, u, vmax, true, false, 6.0, 20, u,
                                              std::numeric_limits<double>::infinity());
    return I - std::exp(-u);
}

/// Gap of the Laguerre eigen-identity
///   n! int_0^inf |x-t|^nu K_nu(|x-t|/2) t^{-nu-1/2} e^{-t/2} L_n^{-nu-1/2}(t) dt
///   = sqrt(pi) Gamma(nu+1/2) Gamma(n+1/2-nu) e^{-x/2} L_n^{-nu-1/2}(x),
/// returned relative to the right-hand side.
inline double laguerre_identity_gap(double nu, int n, double x)
{
    const double lam = -nu - 0.5;
    auto kern = [&](double w) { return std::pow(w, nu) * specfun::bessel_k(nu, 0.5 * w); };
    auto f = [&](double t) {
        return std::pow(t, lam) * std::exp(-0.5 * t) * specfun::laguerre(n, lam, t);
    };
    const double tmax = 90.0;
    auto leftf = [&](double t, double da, double dx) { return kern(dx) * f(da); };
    auto rightf = [&](double t, double dx, double /*db*/) { return kern(dx) * f(t); };
    const double I = quad::integrate_graded(leftf, 0.0, x, true, true, 6.0, 20,
                                            std::numeric_limits<double>::infinity(), x)
                     + quad::integrate_graded(rightf, x, tmax, true, false, 6.0, 20, x,
                                              std::numeric_limits<double>::infinity());
    const double rhs = std::sqrt(pi) * specfun::gamma_fn(nu + 0.5)
                       * specfun::gamma_fn(n + 0.5 - nu) * std::exp(-0.5 * x)
                       * specfun::laguerre(n, lam, x);
    return (specfun::gamma_fn(n + 1.0) * I - rhs) / rhs;
}

struct GMinusApprox {
    double nu, theta;
    double C;     // sqrt(2)/pi^{3/2} cos(pi nu)
    double delta; // weight of the reflected edge layer
    double operator()(double t) const
    {
        return C * std::sqrt(theta)
               * (std::pow(1.0 + t, -nu - 0.5) * std::exp(-t * theta)
                  + delta * std::pow(1.0 - t, -nu - 0.5) * std::exp(t * theta));
    }
};

/// Large-theta two-edge approximation of the solution with rhs e^{-theta x}.
inline GMinusApprox gminus_large_theta(double nu, double theta)
{
    if (!(theta >= 3.0)) throw std::domain_error("gminus_large_theta: theta >= 3 required");
    GMinusApprox g;
    g.nu = nu;
    g.theta = theta;
    g.C = std::sqrt(2.0) / std::pow(pi, 1.5) * std::cos(pi * nu);
    g.delta = 0.5 / pi * std::pow(theta, -nu - 0.5) * std::pow(2.0, -2.0 * nu)
              * std::cos(pi * nu) * std::exp(-2.0 * theta) * specfun::gamma_fn(nu + 0.5);
    return g;
}

/// eta from the edge limit of g_-: (g_-(-t) - g_-(t))/(g_-(-t) + g_-(t)) -> (1-d)/(1+d).
inline double eta_from_gminus(const GMinusApprox& g) { return (1.0 - g.delta) / (1.0 + g.delta); }

/// Large-theta law eta -> 1 - cos(pi nu)/pi Gamma(nu+1/2) 2^{-2nu} theta^{-nu-1/2} e^{-2 theta}.
inline double large_theta_eta(double nu, double theta)
{
    return 1.0
           - std::cos(pi * nu) / pi * specfun::gamma_fn(nu + 0.5) * std::pow(2.0, -2.0 * nu)
                 * std::pow(theta, -nu - 0.5) * std::exp(-2.0 * theta);
}

} // namespace paineq::asympt
