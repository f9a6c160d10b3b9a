#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "paineq/gamma.hpp"

// Quadrature toolbox:
//  - Gauss-Legendre and Gauss-Jacobi rules (Golub-Welsch on the symmetric
//    tridiagonal recurrence matrix);
//  - tanh-sinh panels for cells whose endpoints carry integrable singularities
//    (w^{2nu}, (1 -+ t)^{-nu-1/2}, log w -- the rule does not care which);
//  - a graded composite integrator: panels double geometrically away from the
//    singular endpoints so every smooth cell is analyticity-separated from the
//    nearest singularity by at least its own length.
//
// Integrands receive (t, da, db): the point and its distances to the two ends
// of the *segment*, computed without cancellation. Singular factors must be
// built from da/db, never from t-a.

namespace paineq::quad {

struct QuadRule {
    std::vector<double> x;
    std::vector<double> w;
};

/// Gauss-Jacobi rule for weight (1-x)^alpha (1+x)^beta on [-1,1]; alpha, beta > -1.
inline QuadRule gauss_jacobi(int n, double alpha, double beta)
{
    if (n < 1) throw std::domain_error("gauss_jacobi: n must be >= 1");
    const double ab = alpha + beta;
    Eigen::VectorXd diag(n), sub(n - 1 >= 0 ? std::max(n - 1, 0) : 0);
    diag(0) = (beta - alpha) / (ab + 2.0);
    for (int k = 1; k < n; ++k)
        diag(k) = (beta * beta - alpha * alpha) / ((2.0 * k + ab) * (2.0 * k + ab + 2.0));
    if (n > 1) {
        sub(0) = std::sqrt(4.0 * (1.0 + alpha) * (1.0 + beta)
                           / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab)));
        for (int k = 2; k < n; ++k) {
            const double num = 4.0 * k * (k + alpha) * (k + beta) * (k + ab);
            const double den = (2.0 * k + ab) * (2.0 * k + ab) * (2.0 * k + ab + 1.0)
                               * (2.0 * k + ab - 1.0);
            sub(k - 1) = std::sqrt(num / den);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("gauss_jacobi: tridiagonal eigensolve failed");
    const double mu0 = std::exp((ab + 1.0) * std::log(2.0)
                                + specfun::log_abs_gamma(alpha + 1.0)
                                + specfun::log_abs_gamma(beta + 1.0)
                                - specfun::log_abs_gamma(ab + 2.0));
    QuadRule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int k = 0; k < n; ++k) {
        r.x[k] = es.eigenvalues()(k);
        const double v = es.eigenvectors()(0, k);
        r.w[k] = mu0 * v * v;
    }
    return r;
}

inline QuadRule gauss_legendre(int n) { return gauss_jacobi(n, 0.0, 0.0); }

/// tanh-sinh rule on (-1,1). Nodes carry pre-computed stable distances to +-1.
struct TanhSinhRule {
    struct Node {
        double x;
        double dm; // x - (-1), stable near -1
        double dp; // 1 - x, stable near +1
        double w;
    };
    std::vector<Node> nodes;

    // umax = 6 keeps the truncated tail below 1e-14 for endpoint exponents up
    // to ~0.95 (|nu| <= 0.45); beyond that the rule degrades gracefully.
    explicit TanhSinhRule(double h = 0.0625, double umax = 6.0)
    {
        using std::numbers::pi;
        const int kmax = static_cast<int>(std::floor(umax / h));
        for (int k = -kmax; k <= kmax; ++k) {
            const double u = k * h;
            const double y = 0.5 * pi * std::sinh(u);
            Node nd;
            // 1 -+ tanh(y) without cancellation
            const double e2 = std::exp(-2.0 * std::abs(y));
            const double small = 2.0 * e2 / (1.0 + e2);
            const double big = 2.0 / (1.0 + e2);
            if (y >= 0.0) {
                nd.dp = small;
                nd.dm = big;
            } else {
                nd.dp = big;
                nd.dm = small;
            }
            nd.x = 0.5 * (nd.dm - nd.dp); // tanh(y), consistent with dm/dp
            const double ch = std::cosh(y);
            nd.w = h * 0.5 * pi * std::cosh(u) / (ch * ch);
            if (nd.w > 0.0 && (nd.dp > 0.0 && nd.dm > 0.0)) nodes.push_back(nd);
        }
    }

    static const TanhSinhRule& standard()
    {
        static const TanhSinhRule r;
        return r;
    }
};

// F(t, da, db) with da, db distances to the panel ends a, b.
template <class F>
inline double panel_ts(F&& f, double a, double b)
{
    const auto& rule = TanhSinhRule::standard();
    const double half = 0.5 * (b - a);
    double s = 0.0;
    for (const auto& nd : rule.nodes) {
        const double da = half * nd.dm;
        const double db = half * nd.dp;
        const double t = (nd.x <= 0.0) ? a + da : b - db;
        s += nd.w * f(t, da, db);
    }
    return half * s;
}

template <class F>
inline double panel_gl(F&& f, double a, double b, const QuadRule& gl)
{
    const double half = 0.5 * (b - a);
    double s = 0.0;
    for (std::size_t k = 0; k < gl.x.size(); ++k) {
        const double da = half * (1.0 + gl.x[k]);
        const double db = half * (1.0 - gl.x[k]);
        const double t = a + da;
        s += gl.w[k] * f(t, da, db);
    }
    return half * s;
}

namespace detail {

// Breakpoints of [a,b] grading geometrically away from whichever ends are
// singular; every panel is capped at max_len. term_a / term_b bound the
// terminal panel size: when another singularity sits at distance d *beyond*
// an endpoint (e.g. the edge weight just past a collocation point), the
// terminal panel must not exceed d or the clustered rule cannot resolve it.
inline std::vector<double> graded_breakpoints(double a, double b, bool sing_a, bool sing_b,
                                              double max_len, double term_a, double term_b)
{
    const double len = b - a;
    std::vector<double> pts;
    pts.push_back(a);
    const double mid = a + 0.5 * len;
    if (sing_a) {
        double d = std::min({0.25 * len, max_len, std::max(term_a, 1e-13 * len)});
        double p = a + d;
        while (p < mid) {
            pts.push_back(p);
            d = std::min(2.0 * d, max_len);
            p += d;
        }
    } else {
        const int n = std::max(1, static_cast<int>(std::ceil(0.5 * len / max_len)));
        for (int k = 1; k < n; ++k) pts.push_back(a + 0.5 * len * k / n);
    }
    pts.push_back(mid);
    std::vector<double> right;
    if (sing_b) {
        double d = std::min({0.25 * len, max_len, std::max(term_b, 1e-13 * len)});
        double p = b - d;
        while (p > mid) {
            right.push_back(p);
            d = std::min(2.0 * d, max_len);
            p -= d;
        }
    } else {
        const int n = std::max(1, static_cast<int>(std::ceil(0.5 * len / max_len)));
        for (int k = 1; k < n; ++k) right.push_back(b - 0.5 * len * k / n);
    }
    for (auto it = right.rbegin(); it != right.rend(); ++it) pts.push_back(*it);
    pts.push_back(b);
    return pts;
}

} // namespace detail

/// Walk the quadrature points of the graded composite rule on [A,B], calling
/// visit(t, dA, dB, weight) for each; dA, dB are stable distances to A and B.
/// sing_a / sing_b flag integrable endpoint singularities; max_len limits the
/// panel size (use ~12/theta when the smooth factors vary like e^{theta t}).
template <class Visit>
inline void graded_points(Visit&& visit, double A, double B, bool sing_a, bool sing_b,
                          double max_len = std::numeric_limits<double>::infinity(),
                          int gl_points = 20,
                          double term_a = std::numeric_limits<double>::infinity(),
                          double term_b = std::numeric_limits<double>::infinity())
{
    if (!(B > A)) return;
    static thread_local int cached_n = -1;
    static thread_local QuadRule cached_gl;
    if (cached_n != gl_points) {
        cached_gl = gauss_legendre(gl_points);
        cached_n = gl_points;
    }
    const auto pts = detail::graded_breakpoints(A, B, sing_a, sing_b, max_len, term_a, term_b);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double p = pts[i], q = pts[i + 1];
        const double offa = p - A, offb = B - q;
        const double half = 0.5 * (q - p);
        const bool terminal_a = sing_a && i == 0;
        const bool terminal_b = sing_b && i + 2 == pts.size();
        if (terminal_a || terminal_b) {
            for (const auto& nd : TanhSinhRule::standard().nodes) {
                const double da = half * nd.dm;
                const double db = half * nd.dp;
                const double t = (nd.x <= 0.0) ? p + da : q - db;
                visit(t, offa + da, offb + db, half * nd.w);
            }
        } else {
            for (std::size_t k = 0; k < cached_gl.x.size(); ++k) {
                const double da = half * (1.0 + cached_gl.x[k]);
                const double db = half * (1.0 - cached_gl.x[k]);
                visit(p + da, offa + da, offb + db, half * cached_gl.w[k]);
            }
        }
    }
}

/// Integral of f(t, dA, dB) over [A,B] with the same graded composite rule.
template <class F>
inline double integrate_graded(F&& f, double A, double B, bool sing_a, bool sing_b,
                               double max_len = std::numeric_limits<double>::infinity(),
                               int gl_points = 20,
                               double term_a = std::numeric_limits<double>::infinity(),
                               double term_b = std::numeric_limits<double>::infinity())
{
    double s = 0.0;
    graded_points([&](double t, double da, double db, double w) { s += w * f(t, da, db); }, A, B,
                  sing_a, sing_b, max_len, gl_points, term_a, term_b);
    return s;
}

} // namespace paineq::quad
