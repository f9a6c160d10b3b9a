#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "paineq/bessel.hpp"
#include "paineq/gamma.hpp"

// The integral-equation kernel K(w) = w^nu K_nu(theta w) on the interval [-1,1],
// its Fourier transform, and the parameter pair (nu, theta).

namespace paineq::specfun {

struct Params {
    double nu = 0.25;
    double theta = 1.0;

    void validate() const
    {
        if (!(std::abs(nu) < 0.5))
            throw std::domain_error("Params: require |nu| < 1/2, got nu=" + std::to_string(nu));
        if (!(theta > 0.0))
            throw std::domain_error("Params: require theta > 0, got theta=" + std::to_string(theta));
    }
};

/// K(w) = w^nu K_nu(theta w), w > 0.
inline double kernel_eval(const Params& p, double w)
{
    if (!(w > 0.0)) throw std::domain_error("kernel_eval: w must be > 0");
    return std::pow(w, p.nu) * bessel_k(p.nu, p.theta * w);
}

/// w -> 0 limit of the kernel (finite for nu > 0): theta^{-nu} 2^{nu-1} Gamma(nu).
inline double kernel_small_w_limit(const Params& p)
{
    if (!(p.nu > 0.0)) throw std::domain_error("kernel_small_w_limit: needs nu > 0");
    return std::pow(p.theta, -p.nu) * std::pow(2.0, p.nu - 1.0) * gamma_fn(p.nu);
}

/// Fourier transform of the kernel:
///   khat(p) = (2 theta)^nu sqrt(pi) Gamma(nu+1/2) / (p^2 + theta^2)^{nu+1/2},
/// strictly positive for all real momentum (the positivity backbone of Section 6).
inline double kernel_fourier(const Params& p, double momentum)
{
    using std::numbers::pi;
    return std::pow(2.0 * p.theta, p.nu) * std::sqrt(pi) * gamma_fn(p.nu + 0.5)
           / std::pow(momentum * momentum + p.theta * p.theta, p.nu + 0.5);
}

} // namespace paineq::specfun
