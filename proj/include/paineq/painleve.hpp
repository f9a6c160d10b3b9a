#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "paineq/gamma.hpp"
#include "paineq/ode.hpp"

// The Painleve III trajectory eta(theta):
//
//   eta'' = eta'^2/eta - eta'/theta - 2 nu (1 - eta^2)/theta + eta^3 - 1/eta,
//
// bounded-solution branch anchored at small theta by the McCoy expansion
// eta = B (2theta)^sigma + B1 (2theta) + B2 (2theta)^{1+2sigma} + B3 (2theta)^{2-sigma}
// with sigma = 1 - 2 nu. A forward IVP from the anchor is exponentially
// ill-conditioned (the linearization at eta = 1 has an e^{+2 theta} mode), so the
// bounded branch is produced by integrating *backward* from Theta = max(theta1, 8)
// with decaying-mode data of unknown amplitude lambda, shooting on lambda until
// the curve passes through the anchor value at theta0. The amplitude is measured,
// never assumed, so the large-theta connection constant stays a genuine output.
// Integration runs in u = ln(eta), which removes the eta'^2/eta term and keeps
// eta > 0 by construction.

namespace paineq::painleve {

struct McCoyFamily {
    double sigma = 0.0;
    double lambda = 0.0;
    double B = 0.0;
    double B1 = 0.0, B2 = 0.0, B3 = 0.0;
    double nu = 0.0;
};

inline McCoyFamily mccoy_family(double sigma, double nu)
{
    using std::numbers::pi;
    if (!(sigma > -1.0 && sigma < 2.0))
        throw std::domain_error("mccoy_family: require -1 < sigma < 2");
    if (!(std::abs(nu) < 0.5))
        throw std::domain_error("mccoy_family: require |nu| < 1/2");
    McCoyFamily f;
    f.sigma = sigma;
    f.nu = nu;
    f.lambda = std::sin(0.5 * pi * sigma) / pi;
    f.B = std::pow(2.0, -3.0 * sigma)
          * std::pow(specfun::gamma_fn(0.5 * (1.0 - sigma)), 2)
          * specfun::gamma_fn(0.5 * (1.0 + sigma) + nu)
          / (std::pow(specfun::gamma_fn(0.5 * (1.0 + sigma)), 2)
             * specfun::gamma_fn(0.5 * (1.0 - sigma) + nu));
    f.B1 = -nu / ((1.0 - sigma) * (1.0 - sigma));
    f.B2 = f.B * f.B * nu / ((1.0 + sigma) * (1.0 + sigma));
    f.B3 = (4.0 * nu * nu - (1.0 - sigma) * (1.0 - sigma))
           / (16.0 * f.B * std::pow(1.0 - sigma, 4));
    return f;
}

/// eta'' from the Painleve III equation.
inline double painleve_rhs(double nu, double theta, double eta, double eta_p)
{
    if (!(theta > 0.0)) throw std::domain_error("painleve_rhs: theta must be > 0");
    if (eta == 0.0) throw std::domain_error("painleve_rhs: pole at eta = 0");
    return eta_p * eta_p / eta - eta_p / theta - 2.0 * nu * (1.0 - eta * eta) / theta
           + eta * eta * eta - 1.0 / eta;
}

/// rho = (theta / 2 eta)(1 - eta' - eta^2).
inline double rho_from_eta(double /*nu*/, double theta, double eta, double eta_p)
{
    if (eta == 0.0) throw std::domain_error("rho_from_eta: pole at eta = 0");
    return 0.5 * theta / eta * (1.0 - eta_p - eta * eta);
}

/// rho' = (nu + 1/2 + rho)/eta - (nu + 1/2 - rho) eta (the theta-compatibility law).
inline double rho_prime(double nu, double eta, double rho)
{
    return (nu + 0.5 + rho) / eta - (nu + 0.5 - rho) * eta;
}

/// (eta, eta') at theta0 from the four-term McCoy expansion with sigma = 1 - 2 nu;
/// B3 vanishes identically on this branch.
inline std::pair<double, double> small_theta_anchor(double nu, double theta0)
{
    if (nu == 0.0) throw std::domain_error("small_theta_anchor: nu = 0 unsupported");
    if (!(theta0 > 0.0 && theta0 <= 1e-2))
        throw std::domain_error("small_theta_anchor: require 0 < theta0 <= 1e-2");
    const double sigma = 1.0 - 2.0 * nu;
    const auto f = mccoy_family(sigma, nu);
    const double q = 2.0 * theta0;
    const double eta = f.B * std::pow(q, sigma) + f.B1 * q + f.B2 * std::pow(q, 1.0 + 2.0 * sigma)
                       + f.B3 * std::pow(q, 2.0 - sigma);
    const double etap = 2.0
                        * (sigma * f.B * std::pow(q, sigma - 1.0) + f.B1
                           + (1.0 + 2.0 * sigma) * f.B2 * std::pow(q, 2.0 * sigma)
                           + (2.0 - sigma) * f.B3 * std::pow(q, 1.0 - sigma));
    return {eta, etap};
}

/// Decaying-mode envelope E(theta) = Gamma(nu+1/2) 2^{-2nu} theta^{-nu-1/2} e^{-2 theta}.
inline double decay_envelope(double nu, double theta)
{
    return specfun::gamma_fn(nu + 0.5) * std::pow(2.0, -2.0 * nu)
           * std::pow(theta, -nu - 0.5) * std::exp(-2.0 * theta);
}

struct EtaCurve {
    double nu = 0.0;
    double theta0 = 0.0, theta1 = 0.0;
    double lambda_shoot = 0.0;        // shooting parameter (diagnostic; fit the curve instead)
    double anchor_eta_prime_gap = 0.0; // |eta'(theta0) - anchor eta'| consistency
    std::vector<double> thetas;       // ascending
    std::vector<double> eta;
    std::vector<double> eta_prime;
    std::vector<double> rho;

    std::size_t index_of(double theta) const
    {
        auto it = std::lower_bound(thetas.begin(), thetas.end(), theta - 1e-9);
        if (it == thetas.end() || std::abs(*it - theta) > 1e-9 * std::max(1.0, theta))
            throw std::invalid_argument("EtaCurve: theta not sampled; request it via extra");
        return static_cast<std::size_t>(it - thetas.begin());
    }
    double eta_at(double theta) const { return eta[index_of(theta)]; }
    double eta_prime_at(double theta) const { return eta_prime[index_of(theta)]; }
    double rho_at(double theta) const { return rho[index_of(theta)]; }
};

namespace detail {

struct LogEtaOde {
    double nu;
    ode::State<2> operator()(double theta, const ode::State<2>& y) const
    {
        const double eta = std::exp(y[0]);
        if (!(std::abs(y[0]) < 60.0))
            throw std::runtime_error("integrate_eta: eta reached 0 or a pole "
                                     "(connection-formula violation)");
        return {y[1], -y[1] / theta - 2.0 * nu * (1.0 - eta * eta) / (theta * eta)
                          + eta * eta - 1.0 / (eta * eta)};
    }
};

// backward sweep from Theta to theta_stop
struct SweepResult {
    bool crashed = false;
    double crash_dir = 0.0; // sign of ln(eta) at the crash
    double eta = 0.0, etap = 0.0;
};

inline SweepResult backward_sweep(double nu, double lambda, double Theta, double theta_stop,
                                  double tol)
{
    const double E = decay_envelope(nu, Theta);
    const double eta_T = 1.0 - lambda * E;
    const double etap_T = lambda * E * (2.0 + (nu + 0.5) / Theta);
    LogEtaOde rhs{nu};
    auto integ = ode::make_integrator<2>(rhs, tol);
    ode::State<2> y{std::log(eta_T), etap_T / eta_T};
    double x = Theta;
    SweepResult r;
    try {
        integ.integrate_to(x, y, theta_stop, [](double, const ode::State<2>&) {});
    } catch (const std::runtime_error&) {
        r.crashed = true;
        r.crash_dir = (y[0] > 0.0) ? 1.0 : -1.0;
        return r;
    }
    r.eta = std::exp(y[0]);
    r.etap = y[1] * r.eta;
    return r;
}

} // namespace detail

/// Bounded Painleve III trajectory anchored at the small-theta expansion.
/// `extra` lists theta values that must appear among the samples.
inline EtaCurve integrate_eta(double nu, double theta0, double theta1, double tol = 1e-13,
                              std::vector<double> extra = {})
{
    if (!(std::abs(nu) < 0.5) || nu == 0.0)
        throw std::domain_error("integrate_eta: require 0 < |nu| < 1/2");
    if (!(theta0 < theta1)) throw std::domain_error("integrate_eta: need theta0 < theta1");
    const auto anchor = small_theta_anchor(nu, theta0);
    const double Theta = std::max(theta1, 8.0);

    // shoot on the decaying-mode amplitude so the curve passes through the anchor.
    // F(lambda) = eta(theta0; lambda) - anchor is monotone decreasing; a crashed
    // sweep reports which side of the bounded branch it fell off, so bracketing
    // by bisection is safe even though the sensitivity ~ E(theta0) is enormous.
    auto F = [&](double lambda) {
        const auto r = detail::backward_sweep(nu, lambda, Theta, theta0, tol);
        if (r.crashed) return r.crash_dir * 1e30;
        return r.eta - anchor.first;
    };
    double lo = std::cos(std::numbers::pi * nu) / std::numbers::pi;
    double hi = lo;
    double flo = F(lo), fhi = flo;
    for (int it = 0; it < 200 && flo < 0.0; ++it) {
        hi = lo;
        fhi = flo;
        lo *= (1.0 - std::ldexp(1.0, -std::max(2, 46 - it)));
        flo = F(lo);
    }
    for (int it = 0; it < 200 && fhi > 0.0; ++it) {
        lo = hi;
        flo = fhi;
        hi *= (1.0 + std::ldexp(1.0, -std::max(2, 46 - it)));
        fhi = F(hi);
    }
    if (!(flo >= 0.0 && fhi <= 0.0))
        throw std::runtime_error("integrate_eta: failed to bracket the bounded branch");
    // bisection to tame the crash region, then secant polish
    for (int it = 0; it < 70 && hi - lo > 1e-11 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = F(mid);
        if (fm >= 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
        if (std::abs(fm) < 1e-15) break;
    }
    double l0 = lo, l1 = hi, f0 = flo, f1 = fhi;
    double lam = 0.5 * (lo + hi);
    for (int it = 0; it < 30 && f1 != f0; ++it) {
        const double l2 = l1 - f1 * (l1 - l0) / (f1 - f0);
        if (!(l2 > 0.0) || !std::isfinite(l2)) break;
        l0 = l1;
        f0 = f1;
        l1 = l2;
        f1 = F(l1);
        lam = l1;
        if (std::abs(l1 - l0) < 1e-15 * std::abs(l1) || std::abs(f1) < 1e-16) break;
    }

    // final pass, collecting samples (descending in theta, then reversed)
    std::vector<double> targets;
    targets.push_back(Theta);
    for (double th = std::floor(Theta * 10.0) / 10.0; th > 1.0; th -= 0.1) targets.push_back(th);
    const int glog = 72;
    for (int k = 0; k <= glog; ++k)
        targets.push_back(std::exp(std::log(1.0) + (std::log(theta0) - std::log(1.0)) * k / glog));
    targets.push_back(theta1);
    targets.insert(targets.end(), extra.begin(), extra.end());
    std::sort(targets.begin(), targets.end(), std::greater<double>());
    targets.erase(std::unique(targets.begin(), targets.end(),
                              [](double a, double b) {
                                  return std::abs(a - b) < 1e-9 * std::max(1.0, a);
                              }),
                  targets.end());
    while (!targets.empty() && targets.front() > Theta) targets.erase(targets.begin());

    EtaCurve curve;
    curve.nu = nu;
    curve.theta0 = theta0;
    curve.theta1 = theta1;
    curve.lambda_shoot = lam;
    const double E = decay_envelope(nu, Theta);
    detail::LogEtaOde rhs{nu};
    auto integ = ode::make_integrator<2>(rhs, tol);
    ode::State<2> y{std::log(1.0 - lam * E), lam * E * (2.0 + (nu + 0.5) / Theta) / (1.0 - lam * E)};
    integ.integrate_outputs(Theta, y, targets, [&](double th, const ode::State<2>& s) {
        const double eta = std::exp(s[0]);
        const double etap = s[1] * eta;
        curve.thetas.push_back(th);
        curve.eta.push_back(eta);
        curve.eta_prime.push_back(etap);
        curve.rho.push_back(rho_from_eta(nu, th, eta, etap));
    });
    std::reverse(curve.thetas.begin(), curve.thetas.end());
    std::reverse(curve.eta.begin(), curve.eta.end());
    std::reverse(curve.eta_prime.begin(), curve.eta_prime.end());
    std::reverse(curve.rho.begin(), curve.rho.end());
    curve.anchor_eta_prime_gap = std::abs(curve.eta_prime.front() - anchor.second);
    return curve;
}

/// Forward IVP from user initial data (any nu, including 0); no boundedness machinery.
inline EtaCurve integrate_eta_from_ic(double nu, double theta0, double eta0, double etap0,
                                      double theta1, double tol = 1e-13,
                                      std::vector<double> extra = {})
{
    if (!(theta0 > 0.0 && theta1 > theta0))
        throw std::domain_error("integrate_eta_from_ic: bad interval");
    if (!(eta0 > 0.0))
        throw std::domain_error("integrate_eta_from_ic: need eta0 > 0 for the log variable");
    std::vector<double> targets{theta0};
    const int n = 200;
    for (int k = 1; k <= n; ++k) targets.push_back(theta0 + (theta1 - theta0) * k / double(n));
    targets.insert(targets.end(), extra.begin(), extra.end());
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());

    EtaCurve curve;
    curve.nu = nu;
    curve.theta0 = theta0;
    curve.theta1 = theta1;
    detail::LogEtaOde rhs{nu};
    auto integ = ode::make_integrator<2>(rhs, tol);
    ode::State<2> y{std::log(eta0), etap0 / eta0};
    integ.integrate_outputs(theta0, y, targets, [&](double th, const ode::State<2>& s) {
        const double eta = std::exp(s[0]);
        curve.thetas.push_back(th);
        curve.eta.push_back(eta);
        curve.eta_prime.push_back(s[1] * eta);
        curve.rho.push_back(rho_from_eta(nu, th, eta, s[1] * eta));
    });
    return curve;
}

/// Fitted large-theta amplitude of (1 - eta) against the decaying envelope over
/// [lo, hi]: regress (1-eta)/E on 1/theta and report the intercept. The 1/theta
/// nuisance term absorbs the exact subleading factor exp(-(nu+1/2)^2/(4 theta)),
/// which would otherwise bias a one-parameter fit by several percent.
inline double fit_lambda(const EtaCurve& curve, double lo = 5.0, double hi = 7.0)
{
    double s0 = 0, s1 = 0, s2 = 0, t0 = 0, t1 = 0;
    int count = 0;
    for (std::size_t i = 0; i < curve.thetas.size(); ++i) {
        const double th = curve.thetas[i];
        if (th < lo - 1e-12 || th > hi + 1e-12) continue;
        const double y = (1.0 - curve.eta[i]) / decay_envelope(curve.nu, th);
        const double x = 1.0 / th;
        s0 += 1.0;
        s1 += x;
        s2 += x * x;
        t0 += y;
        t1 += x * y;
        ++count;
    }
    if (count < 3) throw std::invalid_argument("fit_lambda: too few samples in the window");
    const double det = s0 * s2 - s1 * s1;
    return (t0 * s2 - t1 * s1) / det;
}

} // namespace paineq::painleve
