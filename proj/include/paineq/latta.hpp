#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "paineq/ode.hpp"
#include "paineq/painleve.hpp"
#include "paineq/solver.hpp"

// The two compatible linear systems of Latta's method,
//
//   d/dt (g_c, g_s) = M (g_c, g_s),   d/dtheta (g_c, g_s) = N (g_c, g_s),
//
// their zero-curvature compatibility dN/dt - dM/dtheta = [M, N], and the
// reconstruction of (g_c, g_s) from the Painleve data (eta, rho). The
// reconstruction integrates the factored variable h = (1-t^2)^{nu+1/2} g, whose
// system replaces M's diagonal so that both components stay finite at t = 1;
// the remaining freedom is one overall scale, fixed by demanding
// (Gamma g_c)(0) = 1.

namespace paineq::latta {

inline Eigen::Matrix2d matrix_m(double nu, double theta, double t, double eta, double rho)
{
    if (!(std::abs(t) < 1.0)) throw std::domain_error("matrix_m: pole at t = +-1");
    if (eta == 0.0) throw std::domain_error("matrix_m: eta must be nonzero");
    const double s = nu + 0.5;
    const double f = 1.0 / (1.0 - t * t);
    Eigen::Matrix2d M;
    M << f * t * (s - rho), theta + f * (s + rho) / eta,
         theta + f * eta * (s - rho), f * t * (s + rho);
    return M;
}

inline Eigen::Matrix2d matrix_n(double theta, double t, double rho)
{
    if (!(theta > 0.0)) throw std::domain_error("matrix_n: theta must be > 0");
    Eigen::Matrix2d N;
    N << (0.5 + rho) / theta, t, t, (0.5 - rho) / theta;
    return N;
}

/// d/dtheta of matrix M along a trajectory (eta(theta), rho(theta)).
inline Eigen::Matrix2d matrix_m_dtheta(double nu, double /*theta*/, double t, double eta,
                                       double rho, double eta_p, double rho_p)
{
    const double s = nu + 0.5;
    const double f = 1.0 / (1.0 - t * t);
    Eigen::Matrix2d D;
    D << -f * t * rho_p, 1.0 + f * (rho_p * eta - (s + rho) * eta_p) / (eta * eta),
         1.0 + f * (eta_p * (s - rho) - eta * rho_p), f * t * rho_p;
    return D;
}

/// Frobenius norm of dN/dt - dM/dtheta - (MN - NM) at one (t, theta). rho is
/// supplied independently (from the curve, per Eq. rho_eq); rho' follows from
/// the second compatibility law. The residual vanishes exactly when (eta, eta',
/// rho) satisfy the first law, so inconsistent data registers here.
inline double zero_curvature_residual(double nu, double theta, double t, double eta,
                                      double eta_p, double rho)
{
    const double rho_p = painleve::rho_prime(nu, eta, rho);
    const Eigen::Matrix2d M = matrix_m(nu, theta, t, eta, rho);
    const Eigen::Matrix2d N = matrix_n(theta, t, rho);
    Eigen::Matrix2d dNdt;
    dNdt << 0.0, 1.0, 1.0, 0.0;
    const Eigen::Matrix2d dMdth = matrix_m_dtheta(nu, theta, t, eta, rho, eta_p, rho_p);
    const Eigen::Matrix2d R = dNdt - dMdth - (M * N - N * M);
    return R.norm();
}

inline double zero_curvature_residual(double nu, double theta, double t,
                                      const painleve::EtaCurve& curve)
{
    const std::size_t i = curve.index_of(theta);
    return zero_curvature_residual(nu, theta, t, curve.eta[i], curve.eta_prime[i],
                                   curve.rho[i]);
}

namespace detail {

// factored t-system: h' = Mtilde h with the diagonal shifted by -2(nu+1/2) t/(1-t^2)
struct FactoredSystem {
    double nu, theta, eta, rho;
    ode::State<2> operator()(double t, const ode::State<2>& h) const
    {
        const double s = nu + 0.5;
        const double f = 1.0 / (1.0 - t * t);
        const double m11 = -f * t * (s + rho);
        const double m12 = theta + f * (s + rho) / eta;
        const double m21 = theta + f * eta * (s - rho);
        const double m22 = -f * t * (s - rho);
        return {m11 * h[0] + m12 * h[1], m21 * h[0] + m22 * h[1]};
    }
};

} // namespace detail

/// Reconstruct (g_c, g_s) from the Painleve trajectory at one theta sample.
/// The curve must contain theta among its samples.
inline std::pair<solver::GridFunction, solver::GridFunction> reconstruct_solutions(
    double nu, double theta, const painleve::EtaCurve& curve, int n_quad = 0)
{
    const std::size_t ci = curve.index_of(theta);
    const double eta = curve.eta[ci];
    const double rho = curve.rho[ci];
    specfun::Params p{nu, theta};
    solver::NystromSolver s(p, n_quad);
    const auto& nodes = s.nodes();
    const int n = s.size();

    // integrate the factored system from t = 0, seed (1, 0); outputs at the
    // positive nodes and at the edge-extrapolation point
    const double t_end = 1.0 - 1e-6;
    std::vector<double> targets;
    for (int j = n / 2; j < n; ++j) targets.push_back(nodes[j]);
    targets.push_back(t_end);
    detail::FactoredSystem sys{nu, theta, eta, rho};
    auto integ = ode::make_integrator<2>(sys, 1e-12);
    std::vector<double> hc(n), hs(n);
    double hc_end = 0.0, hs_end = 0.0;
    {
        ode::State<2> y{1.0, 0.0};
        double x = 0.0;
        std::size_t k = 0;
        integ.integrate_outputs(0.0, y, targets, [&](double t, const ode::State<2>& v) {
            if (k < targets.size() - 1) {
                hc[n / 2 + k] = v[0];
                hs[n / 2 + k] = v[1];
            } else {
                hc_end = v[0];
                hs_end = v[1];
            }
            ++k;
        });
    }
    for (int j = 0; j < n / 2; ++j) {
        hc[j] = hc[n - 1 - j];
        hs[j] = -hs[n - 1 - j];
    }

    // ratio h_s/h_c must approach eta at the edge
    const double eta_rec = hs_end / hc_end;
    if (!(std::abs(eta_rec - eta) <= 1e-3 * std::max(1.0, std::abs(eta))))
        throw std::runtime_error("reconstruct_solutions: g_s/g_c does not approach eta "
                                 "(compatibility failure), got "
                                 + std::to_string(eta_rec) + " vs " + std::to_string(eta));

    auto wrap = [&](std::vector<double> h, int parity) {
        solver::GridFunction g;
        g.params = p;
        g.nodes = nodes;
        g.weights = s.weights();
        g.smooth = std::move(h);
        g.parity = parity;
        g.interp = s.interp();
        return g;
    };
    auto gc = wrap(hc, +1);
    auto gs = wrap(hs, -1);

    // fix the scale by (Gamma g_c)(0) = cosh(0) = 1
    const double gamma0 = s.apply_at(0.0, gc.smooth);
    if (!(std::abs(gamma0) > 1e-300))
        throw std::runtime_error("reconstruct_solutions: degenerate normalization");
    const double scale = 1.0 / gamma0;
    for (auto& v : gc.smooth) v *= scale;
    for (auto& v : gs.smooth) v *= scale;
    return {std::move(gc), std::move(gs)};
}

} // namespace paineq::latta
