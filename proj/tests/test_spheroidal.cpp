#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "paineq/kernel.hpp"
#include "paineq/quadrature.hpp"
#include "paineq/spheroidal.hpp"

using namespace paineq;
using specfun::Params;
using spheroidal::Parity;
using spheroidal::RadialKind;
using std::numbers::pi;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// Y_m as a function of t = cos(gamma)
double Y_of_t(const spheroidal::SpheroidalMode& mode, double t)
{
    return spheroidal::angular_eval(mode, std::acos(std::clamp(t, -1.0, 1.0)));
}

} // namespace

TEST_CASE("pencil coefficients")
{
    REQUIRE_THAT(spheroidal::coef_A(2, 0.25), WithinRel(-0.25 * 1.25 / (1.75 * 1.75 - 1.0), 1e-14));
    REQUIRE_THAT(spheroidal::coef_A(2, 0.25), WithinAbs(-0.15151515151515152, 1e-12));
    REQUIRE(spheroidal::coef_D(0, 0.25) == 0.0);
    REQUIRE(spheroidal::coef_D(1, 0.25) == 0.0);
}

TEST_CASE("pencil at theta = 0 is diagonal with alpha_m = -m(m-2nu)")
{
    Params p{0.25, 0.0};
    const auto T = spheroidal::build_pencil(p, Parity::Even, 16);
    for (std::size_t k = 0; k < T.n_index.size(); ++k) {
        const int n = T.n_index[k];
        REQUIRE_THAT(T.diag[k], WithinAbs(-n * (n - 0.5), 1e-13));
        REQUIRE(T.upper[k] == 0.0);
        REQUIRE(T.lower[k] == 0.0);
    }
}

TEST_CASE("angular modes: near-decoupled limit and continuity in nu")
{
    // theta ~ 0: Y_m collapses to the single Gegenbauer polynomial C_m^{-nu}
    {
        Params p{0.25, 1e-3};
        const auto modes = spheroidal::angular_modes(p, Parity::Even, 3);
        for (int j = 0; j < 3; ++j) {
            const auto& mode = modes[j];
            REQUIRE_THAT(mode.alpha, WithinAbs(-mode.m * (mode.m - 0.5), 1e-5));
            for (std::size_t k = 0; k < 6; ++k) {
                const double expect = (mode.n_index[k] == mode.m) ? 1.0 : 0.0;
                REQUIRE_THAT(std::abs(mode.coeffs[k]), WithinAbs(expect, 1e-5));
            }
        }
    }

    // nu -> 0: coefficients vary continuously (Mathieu limit)
    {
        const auto a = spheroidal::angular_modes(Params{1e-4, 1.0}, Parity::Even, 2);
        const auto b = spheroidal::angular_modes(Params{1e-3, 1.0}, Parity::Even, 2);
        for (int j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 8; ++k)
                REQUIRE_THAT(a[j].coeffs[k], WithinAbs(b[j].coeffs[k], 1e-2));
    }
}

TEST_CASE("angular orthogonality against the (sin gamma)^{-2nu} weight")
{
    Params p{0.25, 1.0};
    auto even = spheroidal::angular_modes(p, Parity::Even, 3);
    auto odd = spheroidal::angular_modes(p, Parity::Odd, 2);
    std::vector<const spheroidal::SpheroidalMode*> all;
    for (auto& m : even) all.push_back(&m);
    for (auto& m : odd) all.push_back(&m);

    const auto rule = quad::gauss_jacobi(80, -0.75, -0.75);
    for (auto* ma : all) {
        for (auto* mb : all) {
            double s = 0.0;
            for (std::size_t k = 0; k < rule.x.size(); ++k)
                s += rule.w[k] * Y_of_t(*ma, rule.x[k]) * Y_of_t(*mb, rule.x[k]);
            const double expect = (ma->m == mb->m) ? ma->norm : 0.0;
            REQUIRE_THAT(s, WithinAbs(expect, 1e-8 * (1.0 + std::abs(expect))));
        }
    }
}

TEST_CASE("angular symmetry and ODE residual")
{
    Params p{0.25, 1.0};
    const auto odd = spheroidal::angular_modes(p, Parity::Odd, 1);
    const auto& m1 = odd[0];

    REQUIRE_THAT(spheroidal::angular_eval(m1, pi - 0.4),
                 WithinRel(-spheroidal::angular_eval(m1, 0.4), 1e-10));
    REQUIRE_THAT(spheroidal::angular_eval(m1, -0.4),
                 WithinRel(spheroidal::angular_eval(m1, 0.4), 1e-12));

    // residual of Y'' - 2nu cot(g) Y' - (alpha - theta^2/2 cos 2g) Y at g = pi/3
    const auto even = spheroidal::angular_modes(p, Parity::Even, 2);
    for (const auto& mode : {even[0], even[1], m1}) {
        const double g = pi / 3.0, h = 0.004;
        auto Y = [&](double x) { return spheroidal::angular_eval(mode, x); };
        const double d2 = (-Y(g + 2 * h) + 16 * Y(g + h) - 30 * Y(g) + 16 * Y(g - h)
                           - Y(g - 2 * h)) / (12 * h * h);
        const double d1 = (-Y(g + 2 * h) + 8 * Y(g + h) - 8 * Y(g - h) + Y(g - 2 * h)) / (12 * h);
        const double resid = d2 - 2.0 * p.nu * (std::cos(g) / std::sin(g)) * d1
                             - (mode.alpha - 0.5 * p.theta * p.theta * std::cos(2.0 * g)) * Y(g);
        REQUIRE_THAT(resid, WithinAbs(0.0, 1e-8));
    }
}

TEST_CASE("radial third kind: decay constant at large xi")
{
    Params p{0.25, 1.0};
    const auto modes = spheroidal::angular_modes(p, Parity::Even, 2);
    for (const auto& mode : modes) {
        auto scaled = [&](double xi) {
            const double z = p.theta * std::cosh(xi);
            return spheroidal::radial_eval(mode, xi, RadialKind::Third) * std::exp(z)
                   * std::pow(z, 0.5 - p.nu);
        };
        // the limit is approached at the O(1/z) rate; check the convergence trend
        const double c3 = scaled(3.0), c4 = scaled(4.0), c5 = scaled(5.0);
        REQUIRE_THAT(c4 / c5, WithinAbs(1.0, 0.05));
        REQUIRE(std::abs(c4 / c5 - 1.0) < std::abs(c3 / c4 - 1.0));
    }
    // the lowest mode is already in the asymptotic regime at xi = 3
    auto scaled0 = [&](double xi) {
        const double z = p.theta * std::cosh(xi);
        return spheroidal::radial_eval(modes[0], xi, RadialKind::Third) * std::exp(z)
               * std::pow(z, 0.5 - p.nu);
    };
    REQUIRE_THAT(scaled0(3.0) / scaled0(4.0), WithinAbs(1.0, 0.01));
}

TEST_CASE("radial first kind: plane-wave expansion in elliptic coordinates")
{
    Params p{0.25, 1.0};
    const double xi = 0.5, g = 1.0;
    const auto even = spheroidal::angular_modes(p, Parity::Even, 10);
    const auto odd = spheroidal::angular_modes(p, Parity::Odd, 10);
    double s = 0.0;
    for (const auto& m : even)
        s += spheroidal::angular_eval(m, g) * spheroidal::radial_eval(m, xi, RadialKind::First);
    for (const auto& m : odd)
        s += spheroidal::angular_eval(m, g) * spheroidal::radial_eval(m, xi, RadialKind::First);
    const double expect = std::exp(p.theta * std::cosh(xi) * std::cos(g));
    REQUIRE_THAT(s, WithinAbs(expect, 1e-6));
}

TEST_CASE("radial small-xi fit recovers the stored edge coefficients")
{
    Params p{0.25, 1.0};
    const auto modes = spheroidal::angular_modes(p, Parity::Even, 2);
    for (const auto& mode : modes) {
        // independent least-squares refit on the Frobenius basis
        std::vector<double> xs, ys;
        const double xi_max = std::min(0.09, 0.3 / std::sqrt(1.0 + std::abs(mode.alpha)));
        for (double xi = 1.2e-3; xi <= xi_max; xi *= 1.18) {
            xs.push_back(xi);
            ys.push_back(spheroidal::radial_eval(mode, xi, RadialKind::Third));
        }
        Eigen::MatrixXd M(xs.size(), 5);
        Eigen::VectorXd b(xs.size());
        for (std::size_t r = 0; r < xs.size(); ++r) {
            M(r, 0) = 1.0;
            M(r, 1) = std::pow(xs[r], 1.0 + 2.0 * p.nu);
            M(r, 2) = xs[r] * xs[r];
            M(r, 3) = std::pow(xs[r], 3.0 + 2.0 * p.nu);
            M(r, 4) = std::pow(xs[r], 4.0);
            b(r) = ys[r];
        }
        Eigen::VectorXd sol = M.colPivHouseholderQr().solve(b);
        REQUIRE_THAT(sol(0), WithinRel(mode.edge_A, 1e-6));
        // the refit's own truncation bias limits the B comparison
        REQUIRE_THAT(sol(1), WithinRel(mode.edge_B, 1e-4));
    }
}

TEST_CASE("radial ODE residual for both kinds (finite differences)")
{
    Params p{0.25, 1.0};
    const auto modes = spheroidal::angular_modes(p, Parity::Even, 2);
    for (const auto& mode : modes) {
        for (RadialKind kind : {RadialKind::First, RadialKind::Third}) {
            const double xi = 0.8, h = 0.004;
            auto X = [&](double x) { return spheroidal::radial_eval(mode, x, kind); };
            const double d2 = (-X(xi + 2 * h) + 16 * X(xi + h) - 30 * X(xi) + 16 * X(xi - h)
                               - X(xi - 2 * h)) / (12 * h * h);
            const double d1 = (-X(xi + 2 * h) + 8 * X(xi + h) - 8 * X(xi - h) + X(xi - 2 * h))
                              / (12 * h);
            const double resid = d2 - 2.0 * p.nu * (std::cosh(xi) / std::sinh(xi)) * d1
                                 + (mode.alpha - 0.5 * p.theta * p.theta * std::cosh(2.0 * xi))
                                       * X(xi);
            const double scale = (std::abs(mode.alpha) + p.theta * p.theta * std::cosh(2.0 * xi))
                                 * std::abs(X(xi));
            REQUIRE_THAT(resid / scale, WithinAbs(0.0, 1e-7));
        }
    }
}

TEST_CASE("operator eigenvalue: eigen-equation quadrature check")
{
    Params p{0.25, 1.0};
    const auto modes = spheroidal::angular_modes(p, Parity::Even, 1);
    const auto& mode = modes[0];
    const double x = 0.0; // beta = pi/2
    const double sigma = p.nu + 0.5;
    auto left = [&](double t, double da, double dx) {
        return specfun::kernel_eval(p, dx) * std::pow(da, -sigma)
               * std::pow((1.0 - x) + dx, -sigma) * Y_of_t(mode, t);
    };
    auto right = [&](double t, double dx, double db) {
        return specfun::kernel_eval(p, dx) * std::pow(db, -sigma)
               * std::pow((1.0 + x) + dx, -sigma) * Y_of_t(mode, t);
    };
    const double integral = quad::integrate_graded(left, -1.0, x, true, true)
                            + quad::integrate_graded(right, x, 1.0, true, true);
    REQUIRE_THAT(mode.mu * integral, WithinAbs(Y_of_t(mode, x), 1e-5));
}

TEST_CASE("mu_m is real and of a single sign across m <= 6 (regression)")
{
    Params p{0.25, 1.0};
    const auto even = spheroidal::angular_modes(p, Parity::Even, 4);
    const auto odd = spheroidal::angular_modes(p, Parity::Odd, 3);
    const double s0 = even[0].mu > 0 ? 1.0 : -1.0;
    for (const auto& m : even) REQUIRE(m.mu * s0 > 0.0);
    for (const auto& m : odd) REQUIRE(m.mu * s0 > 0.0);
}

TEST_CASE("eigenbasis completeness proxy: cosh(theta cos g) re-expansion")
{
    Params p{0.25, 2.0};
    const auto modes = spheroidal::angular_modes(p, Parity::Even, 20, 128);
    for (double g : {0.3, 1.0, 2.2}) {
        double s = 0.0;
        for (const auto& m : modes)
            s += spheroidal::radial_eval(m, 0.0, RadialKind::First) * spheroidal::angular_eval(m, g);
        REQUIRE_THAT(s, WithinAbs(std::cosh(p.theta * std::cos(g)), 1e-8));
    }
}

TEST_CASE("truncation stability of alpha_m")
{
    Params p{-0.25, 1.5};
    const auto a = spheroidal::angular_modes(p, Parity::Even, 4, 64);
    const auto b = spheroidal::angular_modes(p, Parity::Even, 4, 74);
    for (int j = 0; j < 4; ++j) REQUIRE_THAT(a[j].alpha, WithinAbs(b[j].alpha, 1e-10));
}

TEST_CASE("coefficient decay invariant")
{
    Params p{0.25, 4.0};
    const auto modes = spheroidal::angular_modes(p, Parity::Even, 6);
    for (const auto& m : modes) {
        double mx = 0.0;
        for (double c : m.coeffs) mx = std::max(mx, std::abs(c));
        REQUIRE(mx == 1.0);
        REQUIRE(m.norm > 0.0);
        // decay at the pencil boundary
        REQUIRE(std::abs(m.coeffs[40]) <= 1e-12);
    }
}
