#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "paineq/bessel.hpp"
#include "paineq/gamma.hpp"
#include "paineq/kernel.hpp"
#include "paineq/ode.hpp"
#include "paineq/polynomials.hpp"

// Angular and radial spheroidal functions for the kernel w^nu K_nu(theta w).
//
// Angular: Y_m(gamma) = sum_{n = m mod 2} b_n C_n^{-nu}(cos gamma); the b_n solve the
// tridiagonal pencil
//   [theta^2/2 A_n - n(n-2nu)] b_n + theta^2/2 B_n b_{n+2} + theta^2/2 D_n b_{n-2} = alpha b_n.
// The pencil is non-symmetric but similar to a symmetric tridiagonal (the Gegenbauer
// norm weights provide the scaling), so the spectrum is real.
//
// Radial: X~_m (first kind, Bessel-I series) grows at infinity; X_m (third kind,
// Bessel-K series with (-1)^n) decays. Near xi = 0 the K-series converges only
// algebraically -- the xi^{1+2nu} branch lives in the infinite tail -- so X_m is
// produced there by integrating the radial ODE downward from large xi (the stable
// direction for the decaying solution) and matching the series at xi = 1.
//
// The operator eigenvalue is mu_m = -2^nu theta^{-nu}(2nu+1) B_m / (sqrt(pi) Gamma(1/2-nu) A_m)
// with (A_m, B_m) read off the small-xi behaviour X_m ~ A_m + B_m xi^{1+2nu}.

namespace paineq::spheroidal {

enum class Parity { Even, Odd };
enum class RadialKind { First, Third };

inline double coef_A(int n, double nu)
{
    const double d = (n - nu) * (n - nu) - 1.0;
    if (d == 0.0) throw std::domain_error("coef_A: degenerate at n - nu = +-1");
    return -nu * (1.0 + nu) / d;
}

inline double coef_B(int n, double nu)
{
    return (n - 2.0 * nu + 1.0) * (n - 2.0 * nu) / (2.0 * (n - nu + 2.0) * (n - nu + 1.0));
}

inline double coef_D(int n, double nu)
{
    return (n - 1.0) * n / (2.0 * (n - nu - 2.0) * (n - nu - 1.0));
}

struct Tridiag {
    std::vector<int> n_index;   // Gegenbauer degrees, fixed parity
    std::vector<double> diag;   // theta^2/2 A_n - n(n - 2 nu)
    std::vector<double> upper;  // theta^2/2 B_n  (couples slot k to k+1)
    std::vector<double> lower;  // theta^2/2 D_n  (couples slot k to k-1)
};

/// Pencil rows for degrees n = parity, parity+2, ..., <= n_trunc.
/// theta = 0 is allowed (decoupled limit, used by tests).
inline Tridiag build_pencil(const specfun::Params& p, Parity parity, int n_trunc)
{
    if (n_trunc < 8) throw std::domain_error("build_pencil: n_trunc must be >= 8");
    const double h = 0.5 * p.theta * p.theta;
    Tridiag T;
    for (int n = (parity == Parity::Even ? 0 : 1); n <= n_trunc; n += 2) {
        T.n_index.push_back(n);
        T.diag.push_back(h * coef_A(n, p.nu) - n * (n - 2.0 * p.nu));
        T.upper.push_back(h * coef_B(n, p.nu));
        T.lower.push_back(h * coef_D(n, p.nu));
    }
    return T;
}

struct SpheroidalMode {
    int m = 0;
    Parity parity = Parity::Even;
    double nu = 0.0, theta = 0.0;
    double alpha = 0.0;                // separation constant
    std::vector<int> n_index;          // degrees carried by coeffs/tail arrays
    std::vector<double> coeffs;        // b_n, scaled so max|b_n| = 1
    std::vector<double> coeff_log;     // log|b_n| including the deep tail
    std::vector<double> coeff_sign;    // sign of b_n
    double norm = 0.0;                 // N_m
    double mu = 0.0;                   // operator eigenvalue
    double edge_A = 0.0, edge_B = 0.0; // X_m(xi) ~ A + B xi^{1+2nu}
    // dense third-kind data on [xi_dense_min, 1], series normalization
    std::vector<double> xi_grid, X_vals, Xp_vals;
    // Frobenius solutions of the radial ODE around xi = 0 in s = 2 sinh^2(xi/2):
    // X = frob_A * sum a_k s^k + frob_Bt * s^{nu+1/2} sum b_k s^k
    std::vector<double> frob_a, frob_b;
    double frob_A = 0.0, frob_Bt = 0.0;
    static constexpr double xi_series_min = 0.5;
    static constexpr double xi_dense_min = 1e-3;
};

namespace detail {

// Symmetrizing scales d_k with S = D A D^{-1} and S_{k,k+1} = +sqrt(u_k l_{k+1}):
// d_{k+1}/d_k = u_k / sqrt(u_k l_{k+1}), which carries the sign of u_k (for nu > 0
// the 0<->1 couplings are both negative and the scale must flip sign with them).
inline std::vector<double> symmetrize_scales(const Tridiag& T, double nu)
{
    std::vector<double> d(T.n_index.size(), 1.0);
    for (std::size_t k = 0; k + 1 < d.size(); ++k) {
        const double bu = coef_B(T.n_index[k], nu);
        const double dl = coef_D(T.n_index[k] + 2, nu);
        const double r = bu / dl;
        if (!(r > 0.0))
            throw std::runtime_error("symmetrize_scales: pencil not symmetrizable");
        d[k + 1] = d[k] * std::sqrt(r) * (bu > 0.0 ? 1.0 : -1.0);
    }
    return d;
}

// Downward (Miller) recurrence for the minimal solution of the pencil recurrence
// at eigenvalue alpha, carried as mantissa * exp(scale). Slots 0..k_count-1.
inline void miller_tail(const specfun::Params& p, Parity parity, double alpha, int k_count,
                        std::vector<double>& mant, std::vector<double>& lsc)
{
    const int n0 = (parity == Parity::Even) ? 0 : 1;
    const int k_top = k_count + 12;
    const double h = 0.5 * p.theta * p.theta;
    std::vector<double> m(k_top + 2, 0.0), s(k_top + 2, 0.0);
    m[k_top + 1] = 0.0;
    m[k_top] = 1.0;
    s[k_top + 1] = 0.0;
    s[k_top] = 0.0;
    for (int k = k_top; k >= 1; --k) {
        const int n = n0 + 2 * k;
        const double dk = h * coef_A(n, p.nu) - n * (n - 2.0 * p.nu);
        const double uk = h * coef_B(n, p.nu);
        const double lk = h * coef_D(n, p.nu);
        // bring m[k+1] to the scale of m[k]
        const double up = m[k + 1] * std::exp(s[k + 1] - s[k]);
        double prev = ((alpha - dk) * m[k] - uk * up) / lk;
        double sc = s[k];
        if (std::abs(prev) > 1e200) {
            sc += std::log(std::abs(prev));
            prev = (prev > 0) ? 1.0 : -1.0;
        }
        m[k - 1] = prev;
        s[k - 1] = sc;
    }
    mant.assign(m.begin(), m.begin() + k_count);
    lsc.assign(s.begin(), s.begin() + k_count);
}

struct RadialOde {
    double nu, theta, alpha;
    ode::State<2> operator()(double xi, const ode::State<2>& y) const
    {
        const double cth = 1.0 / std::tanh(xi);
        return {y[1],
                2.0 * nu * cth * y[1] + (0.5 * theta * theta * std::cosh(2.0 * xi) - alpha) * y[0]};
    }
};

// Frobenius coefficients of the radial ODE around xi = 0 in the variable
// s = cosh(xi) - 1:  s(s+2) X'' + (1-2nu)(1+s) X' + (c0 + c1 s + c2 s^2) X = 0,
// c0 = alpha - theta^2/2, c1 = -2 theta^2, c2 = -theta^2; indicial roots
// r = 0 and r = nu + 1/2.
inline std::vector<double> frobenius_coeffs(double nu, double theta, double alpha, double r,
                                            int count)
{
    const double c0 = alpha - 0.5 * theta * theta;
    const double c1 = -2.0 * theta * theta;
    const double c2 = -theta * theta;
    std::vector<double> x(count, 0.0);
    x[0] = 1.0;
    for (int m = 0; m + 1 < count; ++m) {
        const double xm = x[m];
        const double xm1 = (m >= 1) ? x[m - 1] : 0.0;
        const double xm2 = (m >= 2) ? x[m - 2] : 0.0;
        const double num = xm * ((m + r) * (m + r - 1.0) + (1.0 - 2.0 * nu) * (m + r) + c0)
                           + c1 * xm1 + c2 * xm2;
        const double den = (m + 1.0 + r) * (2.0 * (m + r) + 1.0 - 2.0 * nu);
        x[m + 1] = -num / den;
    }
    return x;
}

// value and xi-derivative of the two Frobenius families at xi
struct FrobEval {
    double U, Up;   // analytic family
    double V, Vp;   // s^{nu+1/2} family
};

inline FrobEval frobenius_eval(const SpheroidalMode& mode, double xi)
{
    const double nu = mode.nu;
    const double s = 2.0 * std::pow(std::sinh(0.5 * xi), 2); // cosh(xi) - 1, stable
    const double ds = std::sinh(xi);
    auto series = [&](const std::vector<double>& c, double& val, double& dval) {
        val = 0.0;
        dval = 0.0;
        double pw = 1.0;
        for (std::size_t k = 0; k < c.size(); ++k) {
            val += c[k] * pw;
            if (k + 1 < c.size()) dval += c[k + 1] * (k + 1.0) * pw;
            pw *= s;
        }
    };
    double u, us, v, vs;
    series(mode.frob_a, u, us);
    series(mode.frob_b, v, vs);
    const double sr = std::pow(s, nu + 0.5);
    FrobEval e;
    e.U = u;
    e.Up = us * ds;
    e.V = sr * v;
    e.Vp = ((nu + 0.5) * sr / s * v + sr * vs) * ds;
    return e;
}

} // namespace detail

/// log-magnitude/sign evaluation of the radial series at z = theta*cosh(xi).
/// kind First:  pref * sum b_n (Gamma(n-2nu)/n!) z^nu I_{n-nu}(z)
/// kind Third:  pref * sum (-1)^n b_n (Gamma(n-2nu)/n!) z^nu K_{n-nu}(z)
/// pref = 2^{-nu} Gamma(1/2-nu) / (N_m Gamma(-2nu)).
inline double radial_series(const SpheroidalMode& mode, double xi, RadialKind kind)
{
    const double nu = mode.nu;
    const double z = mode.theta * std::cosh(xi);
    const std::size_t K = mode.n_index.size();
    std::vector<double> lt(K);
    std::vector<double> sg(K);
    std::vector<double> logk;
    if (kind == RadialKind::Third)
        logk = specfun::bessel_k_log_ladder(-nu, z, mode.n_index.back());
    double lmax = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < K; ++k) {
        const int n = mode.n_index[k];
        if (mode.coeff_sign[k] == 0.0) {
            lt[k] = -std::numeric_limits<double>::infinity();
            sg[k] = 0.0;
            continue;
        }
        const double lg_ratio = specfun::log_abs_gamma(n - 2.0 * nu) - specfun::log_abs_gamma(n + 1.0);
        const double sr = specfun::gamma_sign(n - 2.0 * nu);
        const double lbes = (kind == RadialKind::Third) ? logk[n] : specfun::bessel_i_log(n - nu, z);
        lt[k] = mode.coeff_log[k] + lg_ratio + lbes;
        sg[k] = mode.coeff_sign[k] * sr * ((kind == RadialKind::Third && (n % 2)) ? -1.0 : 1.0);
        lmax = std::max(lmax, lt[k]);
    }
    double s = 0.0, tail = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
        if (sg[k] == 0.0) continue;
        const double term = sg[k] * std::exp(lt[k] - lmax);
        s += term;
        if (k + 8 >= K) tail += std::abs(term);
    }
    if (kind == RadialKind::Third && tail > 1e-10 * std::abs(s))
        throw std::runtime_error("radial_series: truncation insufficient at xi="
                                 + std::to_string(xi) + " (tail/sum = "
                                 + std::to_string(tail / std::abs(s)) + ")");
    // prefactor 2^{-nu} sqrt(pi) Gamma(1/2-nu) / (N_m Gamma(-2nu)); the sqrt(pi)
    // is forced by the expansion e^{theta cosh(xi) cos(gamma)} = sum Y_m X~_m,
    // verified against the quadrature projection (see tests).
    const double lpref = -nu * std::log(2.0) + 0.5 * std::log(std::numbers::pi)
                         + specfun::log_abs_gamma(0.5 - nu)
                         - std::log(mode.norm) - specfun::log_abs_gamma(-2.0 * nu)
                         + nu * std::log(z);
    const double spref = specfun::gamma_sign(-2.0 * nu);
    return spref * s * std::exp(lpref + lmax);
}

/// mu_m from the stored small-xi coefficients of the third-kind radial solution.
inline double operator_eigenvalue(const SpheroidalMode& mode, const specfun::Params& p)
{
    using std::numbers::pi;
    const double scale = std::abs(mode.edge_A) + std::abs(mode.edge_B);
    if (!(std::abs(mode.edge_A) > 1e-13 * scale))
        throw std::runtime_error("operator_eigenvalue: degenerate mode, |A_m| ~ 0");
    return -std::pow(2.0, p.nu) * std::pow(p.theta, -p.nu) * (2.0 * p.nu + 1.0) * mode.edge_B
           / (std::sqrt(pi) * specfun::gamma_fn(0.5 - p.nu) * mode.edge_A);
}

namespace detail {

// Solve the symmetric-tridiagonal eigenproblem; returns eigenvalues ascending.
inline void pencil_eigensolve(const Tridiag& T, double nu, Eigen::VectorXd& evals,
                              Eigen::MatrixXd& evecs)
{
    const int K = static_cast<int>(T.n_index.size());
    Eigen::VectorXd diag(K), sub(std::max(K - 1, 0));
    for (int k = 0; k < K; ++k) diag(k) = T.diag[k];
    for (int k = 0; k + 1 < K; ++k) {
        // upper[k] = h B_n, lower[k+1] = h D_{n+2}; their product is positive
        // (same similarity that symmetrize_scales uses), so the symmetric
        // offdiagonal is its square root.
        const double prod = T.upper[k] * T.lower[k + 1];
        if (prod < 0.0) throw std::runtime_error("pencil_eigensolve: negative offdiag product");
        sub(k) = std::sqrt(prod);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("pencil_eigensolve: eigensolve failed (K="
                                 + std::to_string(K) + ")");
    evals = es.eigenvalues();
    evecs = es.eigenvectors();
}

// Radial ODE pass: fills edge_A/edge_B, dense data and the Frobenius fit.
inline void radial_build(SpheroidalMode& mode)
{
    const double nu = mode.nu, theta = mode.theta, alpha = mode.alpha;
    const double xi_start = std::max(std::log(90.0 / theta), 3.0);
    // output grid: geometric from 1 down to xi_dense_min
    const int G = 260;
    std::vector<double> grid(G);
    const double lo = std::log(SpheroidalMode::xi_dense_min), hi = std::log(1.0);
    for (int i = 0; i < G; ++i) grid[i] = std::exp(hi + (lo - hi) * i / (G - 1.0));
    grid.front() = 1.0;
    grid.back() = SpheroidalMode::xi_dense_min;

    RadialOde rhs{nu, theta, alpha};
    auto integ = ode::make_integrator<2>(rhs, 1e-12);
    ode::State<2> y{1.0, nu - 0.5 - 0.5 * theta * std::exp(xi_start)};
    double x = xi_start;
    std::vector<double> Xv(G), Xpv(G);
    integ.integrate_to(x, y, grid.front(), [](double, const ode::State<2>&) {});
    Xv[0] = y[0];
    Xpv[0] = y[1];
    for (int i = 1; i < G; ++i) {
        integ.integrate_to(x, y, grid[i], [](double, const ode::State<2>&) {});
        Xv[i] = y[0];
        Xpv[i] = y[1];
    }
    // normalize to the series at xi = 1
    const double Xser1 = radial_series(mode, 1.0, RadialKind::Third);
    const double scale = Xser1 / Xv[0];
    for (int i = 0; i < G; ++i) {
        Xv[i] *= scale;
        Xpv[i] *= scale;
    }
    // store ascending in xi
    mode.xi_grid.assign(grid.rbegin(), grid.rend());
    mode.X_vals.assign(Xv.rbegin(), Xv.rend());
    mode.Xp_vals.assign(Xpv.rbegin(), Xpv.rend());

    // Exact small-xi representation: match the two Frobenius families of the
    // ODE to the integrated solution at one interior point. No fit bias; the
    // accuracy is that of the ODE integration itself.
    mode.frob_a = frobenius_coeffs(nu, theta, alpha, 0.0, 120);
    mode.frob_b = frobenius_coeffs(nu, theta, alpha, nu + 0.5, 120);
    const double xi_target = std::min(0.1, 0.6 / std::sqrt(1.0 + std::abs(alpha) + theta * theta));
    int im = G - 1;
    for (int i = 0; i < G; ++i)
        if (mode.xi_grid[i] <= xi_target) im = i;
    const double xs = mode.xi_grid[im];
    const auto e = frobenius_eval(mode, xs);
    const double det = e.U * e.Vp - e.V * e.Up;
    if (det == 0.0) throw std::runtime_error("radial_build: degenerate Frobenius match");
    mode.frob_A = (mode.X_vals[im] * e.Vp - e.V * mode.Xp_vals[im]) / det;
    mode.frob_Bt = (e.U * mode.Xp_vals[im] - mode.X_vals[im] * e.Up) / det;
    mode.edge_A = mode.frob_A;
    mode.edge_B = mode.frob_Bt * std::pow(2.0, -(nu + 0.5));

    // cross-check the representation against the ODE data at a second point
    const double xi2 = std::min(2.0 * xs, 0.3);
    int i2 = G - 1;
    for (int i = 0; i < G; ++i)
        if (mode.xi_grid[i] <= xi2) i2 = i;
    const auto e2 = frobenius_eval(mode, mode.xi_grid[i2]);
    const double pred = mode.frob_A * e2.U + mode.frob_Bt * e2.V;
    const double rel = std::abs(pred - mode.X_vals[i2])
                       / (std::abs(mode.X_vals[i2]) + std::abs(mode.frob_A));
    if (!(rel < 1e-8))
        throw std::runtime_error("radial_build: Frobenius match inconsistent, rel="
                                 + std::to_string(rel));
}

} // namespace detail

/// First M modes of the given parity, alpha sorted descending. Coefficient
/// arrays reach n_ext >= n_trunc so the third-kind series converges for xi >= 0.5.
inline std::vector<SpheroidalMode> angular_modes(const specfun::Params& p, Parity parity, int M,
                                                 int n_trunc = 64)
{
    p.validate();
    if (p.nu == 0.0)
        throw std::domain_error("angular_modes: nu = 0 is outside the series machinery");
    if (2 * M > n_trunc)
        throw std::domain_error("angular_modes: require M <= n_trunc/2");

    // enlarge until the pencil eigenvector has decayed at the boundary
    Eigen::VectorXd evals;
    Eigen::MatrixXd evecs;
    Tridiag T;
    for (int attempt = 0;; ++attempt) {
        T = build_pencil(p, parity, n_trunc);
        detail::pencil_eigensolve(T, p.nu, evals, evecs);
        const int K = static_cast<int>(T.n_index.size());
        double worst = 0.0;
        for (int j = 0; j < M; ++j) {
            const Eigen::VectorXd v = evecs.col(K - 1 - j).cwiseAbs();
            worst = std::max(worst, v(K - 1) / v.maxCoeff());
        }
        if (worst <= 1e-12) break;
        if (attempt >= 6)
            throw std::runtime_error("angular_modes: coefficient decay not reached");
        n_trunc *= 2;
    }

    const int K = static_cast<int>(T.n_index.size());
    const auto dsc = detail::symmetrize_scales(T, p.nu);
    // tail length for the xi >= 0.5 series: (cosh 0.5)^{-n} below 1e-18
    const int n_ext_deg = std::max(T.n_index.back(), 360);
    const int K_ext = (n_ext_deg - T.n_index.front()) / 2 + 1;

    std::vector<SpheroidalMode> modes;
    for (int j = 0; j < M; ++j) {
        SpheroidalMode mode;
        mode.parity = parity;
        mode.m = (parity == Parity::Even) ? 2 * j : 2 * j + 1;
        mode.nu = p.nu;
        mode.theta = p.theta;
        mode.alpha = evals(K - 1 - j);

        std::vector<double> b(K);
        for (int k = 0; k < K; ++k) b[k] = evecs(k, K - 1 - j) / dsc[k];
        // scale: max |b_n| = 1, peak coefficient positive
        int peak = 0;
        for (int k = 1; k < K; ++k)
            if (std::abs(b[k]) > std::abs(b[peak])) peak = k;
        const double s0 = 1.0 / b[peak];
        for (auto& v : b) v *= s0;
        b[peak] = 1.0; // guard against the 1-ulp division round-off

        // degrees and extended tail
        mode.n_index.resize(K_ext);
        for (int k = 0; k < K_ext; ++k) mode.n_index[k] = T.n_index.front() + 2 * k;
        std::vector<double> mant, lsc;
        detail::miller_tail(p, parity, mode.alpha, K_ext, mant, lsc);
        // match index: last slot with |b| >= 1e-6
        int kstar = peak;
        for (int k = K - 1; k >= 0; --k)
            if (std::abs(b[k]) >= 1e-6) {
                kstar = k;
                break;
            }
        if (mant[kstar] == 0.0)
            throw std::runtime_error("angular_modes: Miller match failed");
        const double logfac = std::log(std::abs(b[kstar]))
                              - (std::log(std::abs(mant[kstar])) + lsc[kstar]);
        const double sgnfac = ((b[kstar] > 0) == (mant[kstar] > 0)) ? 1.0 : -1.0;

        mode.coeffs.assign(K_ext, 0.0);
        mode.coeff_log.assign(K_ext, -std::numeric_limits<double>::infinity());
        mode.coeff_sign.assign(K_ext, 0.0);
        for (int k = 0; k < K_ext; ++k) {
            if (k <= kstar) {
                if (b[k] != 0.0) {
                    mode.coeff_log[k] = std::log(std::abs(b[k]));
                    mode.coeff_sign[k] = (b[k] > 0) ? 1.0 : -1.0;
                }
                mode.coeffs[k] = (k < K) ? b[k] : 0.0;
            } else {
                if (mant[k] == 0.0) continue;
                mode.coeff_log[k] = std::log(std::abs(mant[k])) + lsc[k] + logfac;
                mode.coeff_sign[k] = ((mant[k] > 0) ? 1.0 : -1.0) * sgnfac;
                mode.coeffs[k] = mode.coeff_sign[k] * std::exp(mode.coeff_log[k]);
                if (!std::isfinite(mode.coeffs[k])) mode.coeffs[k] = 0.0;
            }
        }

        // N_m (tail contributions are negligible by the decay invariant)
        double nm = 0.0;
        for (int k = 0; k < K_ext; ++k) {
            if (mode.coeffs[k] == 0.0) continue;
            nm += mode.coeffs[k] * mode.coeffs[k]
                  * specfun::gegenbauer_norm(mode.n_index[k], -p.nu);
        }
        if (!(nm > 0.0)) throw std::runtime_error("angular_modes: non-positive norm");
        mode.norm = nm;

        detail::radial_build(mode);
        mode.mu = operator_eigenvalue(mode, p);
        modes.push_back(std::move(mode));
    }
    return modes;
}

/// Y_m(gamma) = sum b_n C_n^{-nu}(cos gamma), 0 <= gamma <= pi (any real works).
inline double angular_eval(const SpheroidalMode& mode, double gamma)
{
    const double x = std::cos(gamma);
    const double mu = -mode.nu;
    // run the Gegenbauer recurrence once, accumulating all coefficients
    double s = 0.0;
    double cm1 = 1.0;          // C_0
    double c0 = 2.0 * mu * x;  // C_1
    const int n_max = mode.n_index.back();
    std::size_t slot = 0;
    for (int n = 0; n <= n_max; ++n) {
        const double cn = (n == 0) ? cm1 : c0;
        if (slot < mode.n_index.size() && mode.n_index[slot] == n) {
            s += mode.coeffs[slot] * cn;
            ++slot;
        }
        if (n >= 1) {
            const double cp = (2.0 * (n + mu) * x * c0 - (n + 2.0 * mu - 1.0) * cm1) / (n + 1.0);
            cm1 = c0;
            c0 = cp;
        }
    }
    return s;
}

/// X~_m(xi) (kind First) or X_m(xi) (kind Third).
inline double radial_eval(const SpheroidalMode& mode, double xi, RadialKind kind)
{
    if (xi < 0.0) throw std::domain_error("radial_eval: xi must be >= 0");
    if (kind == RadialKind::First) return radial_series(mode, xi, RadialKind::First);
    if (xi >= SpheroidalMode::xi_series_min) return radial_series(mode, xi, RadialKind::Third);
    if (xi < SpheroidalMode::xi_dense_min) {
        if (xi == 0.0) return mode.frob_A;
        const auto e = detail::frobenius_eval(mode, xi);
        return mode.frob_A * e.U + mode.frob_Bt * e.V;
    }
    // cubic Hermite on the dense grid
    const auto& g = mode.xi_grid;
    auto it = std::upper_bound(g.begin(), g.end(), xi);
    std::size_t i = std::min<std::size_t>(std::max<std::ptrdiff_t>(it - g.begin() - 1, 0),
                                          g.size() - 2);
    const double h = g[i + 1] - g[i];
    const double u = (xi - g[i]) / h;
    const double y0 = mode.X_vals[i], y1 = mode.X_vals[i + 1];
    const double d0 = mode.Xp_vals[i] * h, d1 = mode.Xp_vals[i + 1] * h;
    const double u2 = u * u, u3 = u2 * u;
    return (2 * u3 - 3 * u2 + 1) * y0 + (u3 - 2 * u2 + u) * d0 + (-2 * u3 + 3 * u2) * y1
           + (u3 - u2) * d1;
}

} // namespace paineq::spheroidal
