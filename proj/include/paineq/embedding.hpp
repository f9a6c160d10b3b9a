#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "paineq/quadrature.hpp"
#include "paineq/solver.hpp"

// Embedding formulae: the plane-wave problem (Gamma g)(x) = e^{-theta z x} is
// assembled from the two special solutions,
//
//   g = Psi - a_+ g_+ - a_- g_-,     g_+- = g_c +- g_s,
//   a_+- = -(1 -+ z) G(-+ z) / (2 G(1)),
//   theta^{-1} Psi' + z Psi = (z^2-1)/G(1) [Ghat_c(z) g_s - Ghat_s(z) g_c],
//
// with Psi(+-1) = 0. (The printed closed form of Psi carries g_s in both
// integrands; the first-order equation above fixes the second one to g_c.)
// Psi is produced by the integrating factor, Psi(t) = theta e^{-z theta t}
// int_{-1}^t e^{z theta y} R(y) dy; the total integral over [-1,1] vanishes
// identically (it is Ghat_c Ghat_s - Ghat_s Ghat_c), which is the Psi(1) = 0
// consistency check.

namespace paineq::embedding {

struct Coefficients {
    double a_plus = 0.0;
    double a_minus = 0.0;
};

inline Coefficients embedding_coefficients(const specfun::Params& /*p*/, double z,
                                           const solver::LaplaceData& lap1,
                                           const solver::LaplaceData& lapz)
{
    if (!(lap1.G1 > 0.0))
        throw std::runtime_error("embedding_coefficients: G(1) <= 0 (positivity violation)");
    const double Gz = lapz.Gc + lapz.Gs;
    const double Gmz = lapz.Gc - lapz.Gs;
    Coefficients c;
    c.a_plus = -(1.0 - z) * Gmz / (2.0 * lap1.G1);
    c.a_minus = -(1.0 + z) * Gz / (2.0 * lap1.G1);
    return c;
}

/// Solution of (Gamma g)(x) = e^{-theta z x} via the embedding formulae.
inline solver::GridFunction plane_wave_solution(const specfun::Params& p, double z,
                                                int n_quad = 0)
{
    using std::numbers::pi;
    solver::NystromSolver s(p, n_quad);
    const double theta = p.theta;
    auto gc = s.solve_parity([&](double x) { return std::cosh(theta * x); }, +1);
    auto gs = s.solve_parity([&](double x) { return std::sinh(theta * x); }, -1);
    const auto lap1 = solver::laplace_transforms(gc, gs, 1.0);
    const auto lapz = solver::laplace_transforms(gc, gs, z);
    const auto coef = embedding_coefficients(p, z, lap1, lapz);

    const int n = s.size();
    const auto& nodes = s.nodes();
    const double sigma = p.nu + 0.5;
    std::vector<double> hg(n, 0.0);

    if (z * z != 1.0) {
        // R = w(t) r(t): smooth factor of the right-hand side of the Psi equation
        const double amp = (z * z - 1.0) / lap1.G1;
        std::vector<double> r(n);
        for (int j = 0; j < n; ++j)
            r[j] = amp * (lapz.Gc * gs.smooth[j] - lapz.Gs * gc.smooth[j]);
        quad::BarycentricInterp const& interp = *s.interp();

        // Q(t) = int_{-1}^{t} e^{z theta y} w(y) r(y) dy in the angular variable:
        //        int_{gamma}^{pi} e^{z theta cos(g)} (sin g)^{-2 nu} r(cos g) dg
        const double mlen = std::min(28.0 / n, 12.0 / (1.0 + std::abs(z) * theta));
        auto Q_from = [&](double gamma_lo, double term_a) {
            auto f = [&](double g, double da, double db) {
                const double sg = std::sin(std::min(gamma_lo + da, db));
                const double t = std::cos(g);
                return std::exp(z * theta * t) * std::pow(sg, -2.0 * p.nu)
                       * interp.eval(r, t);
            };
            return quad::integrate_graded(f, gamma_lo, pi, true, true, mlen, 20, term_a,
                                          std::numeric_limits<double>::infinity());
        };
        // Psi(1) = 0 consistency: the full integral must vanish
        const double scale = std::abs(lapz.Gc) + std::abs(lapz.Gs) + 1e-300;
        const double qfull = Q_from(0.0, std::numeric_limits<double>::infinity());
        if (!(std::abs(qfull) <= 1e-6 * std::abs(amp) * scale * 4.0))
            throw std::runtime_error("plane_wave_solution: Psi(1) != 0 beyond tolerance, "
                                     "integral = "
                                     + std::to_string(qfull));
        for (int j = 0; j < n; ++j) {
            const double gamma_j = std::acos(std::clamp(nodes[j], -1.0, 1.0));
            const double Q = Q_from(gamma_j, gamma_j);
            const double psi = theta * std::exp(-z * theta * nodes[j]) * Q;
            hg[j] = std::pow(1.0 - nodes[j] * nodes[j], sigma) * psi;
        }
    }
    for (int j = 0; j < n; ++j)
        hg[j] -= coef.a_plus * (gc.smooth[j] + gs.smooth[j])
                 + coef.a_minus * (gc.smooth[j] - gs.smooth[j]);

    solver::GridFunction g;
    g.params = p;
    g.nodes = nodes;
    g.weights = s.weights();
    g.smooth = std::move(hg);
    g.parity = 0;
    g.interp = s.interp();
    return g;
}

} // namespace paineq::embedding
