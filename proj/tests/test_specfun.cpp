#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "paineq/bessel.hpp"
#include "paineq/gamma.hpp"
#include "paineq/kernel.hpp"
#include "paineq/polynomials.hpp"
#include "paineq/quadrature.hpp"

using namespace paineq;
using specfun::Params;
using std::numbers::pi;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("gamma_fn basic values and reflection")
{
    REQUIRE_THAT(specfun::gamma_fn(0.5), WithinRel(1.7724538509055160, 1e-14));
    REQUIRE_THAT(specfun::gamma_fn(1.0), WithinRel(1.0, 1e-14));
    REQUIRE_THAT(specfun::gamma_fn(20.0), WithinRel(1.21645100408832e17, 1e-13));

    // Gamma(1/2+nu) Gamma(1/2-nu) = pi / cos(pi nu) at nu = 1/4
    const double prod = specfun::gamma_fn(0.75) * specfun::gamma_fn(0.25);
    REQUIRE_THAT(prod, WithinRel(4.442882938158366, 1e-13));
    REQUIRE_THAT(prod, WithinRel(pi / std::cos(pi * 0.25), 1e-13));

    REQUIRE_THROWS_AS(specfun::gamma_fn(0.0), std::domain_error);
    REQUIRE_THROWS_AS(specfun::gamma_fn(-3.0), std::domain_error);
}

TEST_CASE("gamma_fn relative accuracy <= 1e-13 on |x| <= 30")
{
    // libm tgamma is correctly rounded to a few ulp; use it as the oracle
    for (double x = -29.85; x <= 30.0; x += 0.3) {
        if (std::abs(x - std::round(x)) < 0.05 && x < 0.5) continue;
        const double ref = std::tgamma(x);
        REQUIRE_THAT(specfun::gamma_fn(x), WithinRel(ref, 1e-13));
    }
}

TEST_CASE("log_abs_gamma and gamma_sign")
{
    REQUIRE_THAT(specfun::log_abs_gamma(101.0), WithinRel(std::lgamma(101.0), 1e-13));
    REQUIRE(specfun::gamma_sign(-0.25) == -1);
    REQUIRE(specfun::gamma_sign(-1.5) == 1);
    REQUIRE(specfun::gamma_sign(2.0) == 1);
    REQUIRE_THAT(specfun::gamma_ratio(3.5, 1.5), WithinRel(2.5 * 1.5, 1e-13));
}

TEST_CASE("bessel_k closed form, limits, symmetry")
{
    // K_{1/2}(w) = sqrt(pi/2w) e^{-w}
    REQUIRE_THAT(specfun::bessel_k(0.5, 1.0),
                 WithinRel(std::sqrt(pi / 2.0) * std::exp(-1.0), 1e-13));
    REQUIRE_THAT(specfun::bessel_k(0.5, 1.0), WithinRel(0.4610685044478946, 1e-10));

    // small-w two-term law at (0.25, 1e-6)
    {
        const double nu = 0.25, w = 1e-6;
        const double lead = std::pow(2.0, nu - 1.0) * specfun::gamma_fn(nu) * std::pow(w, -nu)
                            + std::pow(2.0, -nu - 1.0) * specfun::gamma_fn(-nu) * std::pow(w, nu);
        REQUIRE_THAT(specfun::bessel_k(nu, w), WithinRel(lead, 1e-6));
    }

    // large-w exponential law at (0.25, 30): ratio to sqrt(pi/2w) e^{-w} within 1%
    {
        const double w = 30.0;
        const double asym = std::sqrt(pi / (2.0 * w)) * std::exp(-w);
        REQUIRE_THAT(specfun::bessel_k(0.25, w) / asym, WithinAbs(1.0, 0.01));
    }

    // K_nu = K_{-nu}
    for (double nu : {0.1, 0.25, 0.4, 0.49})
        for (double w : {0.3, 1.0, 2.5, 7.0})
            REQUIRE_THAT(specfun::bessel_k(nu, w), WithinRel(specfun::bessel_k(-nu, w), 1e-12));

    REQUIRE_THROWS_AS(specfun::bessel_k(0.25, 0.0), std::domain_error);
    REQUIRE_THROWS_AS(specfun::bessel_k(0.25, -1.0), std::domain_error);
}

TEST_CASE("bessel_k seam: series and integral branches agree at w = 2")
{
    // Temme vs trapezoid-integral branches at the switch point, |nu| <= 1/2
    for (double nu : {0.0, 1e-4, 0.1, 0.25, 0.4, 0.49}) {
        const auto [a, a1] = specfun::detail::bessel_k_temme_pair(nu, 2.0);
        const double b = std::exp(specfun::detail::bessel_k_integral_log(nu, 2.0));
        const double b1 = std::exp(specfun::detail::bessel_k_integral_log(nu + 1.0, 2.0));
        REQUIRE_THAT(a, WithinRel(b, 1e-12));
        REQUIRE_THAT(a1, WithinRel(b1, 1e-12));
    }
    // three-way: the independent two-sided series agrees away from order 0
    for (double nu : {0.1, 0.25, 0.4, 0.49}) {
        const auto [a, a1] = specfun::detail::bessel_k_temme_pair(nu, 1.3);
        REQUIRE_THAT(a, WithinRel(specfun::detail::bessel_k_series(nu, 1.3), 1e-12));
        (void)a1;
    }
}

TEST_CASE("bessel_k high order ladder consistency")
{
    // recurrence ladder vs direct integral evaluation at a mid order
    const auto lad = specfun::bessel_k_log_ladder(-0.25, 3.0, 12);
    const double direct = std::exp(specfun::detail::bessel_k_integral_log(7.0 - 0.25, 3.0));
    REQUIRE_THAT(std::exp(lad[7]), WithinRel(direct, 1e-11));
}

TEST_CASE("bessel_i closed form and Wronskian")
{
    REQUIRE_THAT(specfun::bessel_i(0.5, 1.0),
                 WithinRel(std::sqrt(2.0 / pi) * std::sinh(1.0), 1e-13));
    REQUIRE(specfun::bessel_i(0.25, 0.0) == 0.0);

    // I_nu(w) K_nu'(w) - I_nu'(w) K_nu(w) = -1/w at (0.25, 2.0)
    const double nu = 0.25, w = 2.0;
    const double lhs = specfun::bessel_i(nu, w) * specfun::bessel_k_deriv(nu, w)
                       - specfun::bessel_i_deriv(nu, w) * specfun::bessel_k(nu, w);
    REQUIRE_THAT(lhs, WithinAbs(-0.5, 1e-10));

    REQUIRE_THAT(std::exp(specfun::bessel_i_log(0.5, 1.0)),
                 WithinRel(specfun::bessel_i(0.5, 1.0), 1e-13));
}

TEST_CASE("kernel_eval: closed form, small-w limit, singularity exponent")
{
    // half-integer reference point (nu validity check deliberately not applied here)
    Params half{0.5, 1.0};
    REQUIRE_THAT(specfun::kernel_eval(half, 1.0), WithinRel(0.4610685044478946, 1e-10));

    // w -> 0 limit theta^{-nu} 2^{nu-1} Gamma(nu) at (0.25, 1)
    Params p{0.25, 1.0};
    const double lim = specfun::kernel_small_w_limit(p);
    REQUIRE_THAT(lim, WithinRel(std::pow(2.0, -0.75) * specfun::gamma_fn(0.25), 1e-14));
    REQUIRE_THAT(specfun::kernel_eval(p, 1e-9), WithinRel(lim, 1e-4));

    // two-order small-w law: K(w) - [c0 + c1 w^{2 nu}] = O(w^2)
    const double c0 = std::pow(2.0, p.nu - 1.0) * specfun::gamma_fn(p.nu) * std::pow(p.theta, -p.nu);
    const double c1 = std::pow(2.0, -p.nu - 1.0) * specfun::gamma_fn(-p.nu) * std::pow(p.theta, p.nu);
    const double w = 1e-3;
    const double resid = specfun::kernel_eval(p, w) - (c0 + c1 * std::pow(w, 2.0 * p.nu));
    REQUIRE(std::abs(resid) < 1e-5 * specfun::kernel_eval(p, w));

    // nu = -0.25: integrable divergence with exponent 2 nu = -0.5
    Params m{-0.25, 1.0};
    const double slope = std::log(specfun::kernel_eval(m, 1e-10) / specfun::kernel_eval(m, 1e-8))
                         / std::log(1e-10 / 1e-8);
    REQUIRE_THAT(slope, WithinAbs(-0.5, 1e-4));

    REQUIRE_THROWS_AS(specfun::kernel_eval(p, 0.0), std::domain_error);
}

TEST_CASE("kernel_fourier: value, quadrature oracle, positivity")
{
    REQUIRE_THAT(specfun::kernel_fourier(Params{0.0, 1.0}, 0.0), WithinRel(pi, 1e-13));

    // cosine-transform oracle: khat(p) = 2 int_0^inf cos(p w) K(w) dw
    Params p{0.25, 1.0};
    const double mom = 2.0;
    auto f = [&](double t, double da, double /*db*/) {
        return std::cos(mom * t) * specfun::kernel_eval(p, da);
    };
    const double oracle = 2.0 * quad::integrate_graded(f, 0.0, 45.0, true, false, 0.5);
    REQUIRE_THAT(specfun::kernel_fourier(p, mom), WithinAbs(oracle, 1e-8));

    for (double nu : {-0.25, 0.25}) {
        Params q{nu, 1.0};
        for (double mm = -50.0; mm <= 50.0; mm += 2.5)
            REQUIRE(specfun::kernel_fourier(q, mm) > 0.0);
    }
}

TEST_CASE("gegenbauer: normalization, recurrence, orthogonality")
{
    REQUIRE(specfun::gegenbauer(0, -0.25, 0.3) == 1.0);

    // C_n^mu(1) = Gamma(n+2mu)/(n! Gamma(2mu)) at n=3, mu=-0.25
    {
        const double mu = -0.25;
        const double expect = specfun::gamma_ratio(3.0 + 2.0 * mu, 2.0 * mu)
                              / specfun::gamma_fn(4.0);
        REQUIRE_THAT(specfun::gegenbauer(3, mu, 1.0), WithinRel(expect, 1e-12));
    }

    // three-term recurrence residual at (n=5, mu=-0.25, x=0.7)
    {
        const int n = 5;
        const double mu = -0.25, x = 0.7;
        const double r = (n + 1.0) * specfun::gegenbauer(n + 1, mu, x)
                         - 2.0 * (n + mu) * x * specfun::gegenbauer(n, mu, x)
                         + (n + 2.0 * mu - 1.0) * specfun::gegenbauer(n - 1, mu, x);
        REQUIRE_THAT(r, WithinAbs(0.0, 1e-12));
    }

    // orthogonality against (1-x^2)^{mu-1/2} with the stated norm, n,m <= 10
    {
        const double mu = -0.25;
        const auto rule = quad::gauss_jacobi(40, mu - 0.5, mu - 0.5);
        for (int n = 0; n <= 10; ++n) {
            for (int m = 0; m <= n; ++m) {
                double s = 0.0;
                for (std::size_t k = 0; k < rule.x.size(); ++k)
                    s += rule.w[k] * specfun::gegenbauer(n, mu, rule.x[k])
                         * specfun::gegenbauer(m, mu, rule.x[k]);
                const double expect = (n == m) ? specfun::gegenbauer_norm(n, mu) : 0.0;
                REQUIRE_THAT(s, WithinAbs(expect, 1e-10 * (1.0 + std::abs(expect))));
            }
        }
    }
}

TEST_CASE("laguerre: base cases and explicit-sum oracle")
{
    REQUIRE(specfun::laguerre(0, -0.75, 2.0) == 1.0);
    REQUIRE_THAT(specfun::laguerre(1, -0.75, 0.5), WithinAbs(-0.25, 1e-15));

    // L_n^l(x) = sum_k binom(n+l, n-k) (-x)^k / k!
    const int n = 4;
    const double l = -0.75, x = 1.3;
    double oracle = 0.0;
    for (int k = 0; k <= n; ++k) {
        const double binom = specfun::gamma_fn(n + l + 1.0)
                             / (specfun::gamma_fn(n - k + 1.0) * specfun::gamma_fn(l + k + 1.0));
        oracle += binom * std::pow(-x, k) / specfun::gamma_fn(k + 1.0);
    }
    REQUIRE_THAT(specfun::laguerre(n, l, x), WithinRel(oracle, 1e-12));
}

TEST_CASE("Params validity")
{
    REQUIRE_THROWS_AS((Params{0.5, 1.0}).validate(), std::domain_error);
    REQUIRE_THROWS_AS((Params{0.25, 0.0}).validate(), std::domain_error);
    REQUIRE_NOTHROW((Params{-0.49, 3.0}).validate());
}
