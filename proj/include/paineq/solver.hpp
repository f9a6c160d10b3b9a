#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "paineq/interp.hpp"
#include "paineq/kernel.hpp"
#include "paineq/quadrature.hpp"
#include "paineq/spheroidal.hpp"

// Direct (Nystrom) and series solution of
//
//     (Gamma g)(x) = int_{-1}^{1} K(|x-t|) g(t) dt = f(x),   K(w) = w^nu K_nu(theta w).
//
// Solutions are carried in factored form g(t) = (1-t^2)^{-(nu+1/2)} h(t) with h smooth;
// the Gauss-Jacobi grid for the weight (1-t^2)^{-(nu+1/2)} absorbs the edge
// singularity exactly. The operator is applied by graded panel quadrature with
// tanh-sinh cells at the three singular points (t = x, t = +-1); collocation at
// the grid nodes yields the Nystrom system. The same machinery provides an
// independent eigenvalue oracle for the spheroidal route.

namespace paineq::solver {

using specfun::Params;

enum class KernelType { Bessel, PurePower };

struct GridFunction {
    Params params;
    std::vector<double> nodes;
    std::vector<double> weights; // Gauss-Jacobi weights on the same nodes
    std::vector<double> smooth;  // h(t_j)
    int parity = 0;              // +1 even, -1 odd, 0 unconstrained
    std::shared_ptr<const quad::BarycentricInterp> interp;

    double h_at(double t) const { return interp->eval(smooth, t); }
    double g_at(double t) const
    {
        return std::pow(1.0 - t * t, -(params.nu + 0.5)) * h_at(t);
    }
};

struct LaplaceData {
    double Gc = 0.0; // Ghat_c(p)
    double Gs = 0.0; // Ghat_s(p)
    double G1 = 0.0; // Ghat_c(1) + Ghat_s(1)
};

struct EdgeData {
    double kc = 0.0;
    double ks = 0.0;
    double eta = 0.0;
};

inline int default_n_quad(double theta)
{
    const int n = std::max(64, static_cast<int>(std::ceil(40.0 + 16.0 * theta)));
    return n + (n % 2);
}

class NystromSolver {
public:
    NystromSolver(Params p, int n_quad = 0, KernelType kt = KernelType::Bessel)
        : p_(p), kt_(kt)
    {
        if (kt_ == KernelType::Bessel)
            p_.validate();
        else if (!(std::abs(p_.nu) < 0.5) || p_.nu == 0.0)
            throw std::domain_error("NystromSolver: pure-power kernel needs 0 < |nu| < 1/2");
        if (n_quad == 0) n_quad = default_n_quad(p_.theta);
        if (n_quad < 16) throw std::domain_error("NystromSolver: n_quad must be >= 16");
        n_ = n_quad + (n_quad % 2);
        sigma_ = p_.nu + 0.5;
        rule_ = quad::gauss_jacobi(n_, -sigma_, -sigma_);
        interp_ = std::make_shared<quad::BarycentricInterp>(rule_.x);
        max_len_ = (kt_ == KernelType::Bessel) ? 12.0 / p_.theta
                                               : std::numeric_limits<double>::infinity();
    }

    const Params& params() const { return p_; }
    int size() const { return n_; }
    const std::vector<double>& nodes() const { return rule_.x; }
    const std::vector<double>& weights() const { return rule_.w; }
    std::shared_ptr<const quad::BarycentricInterp> interp() const { return interp_; }

    double kernel(double w) const
    {
        if (kt_ == KernelType::Bessel) return specfun::kernel_eval(p_, w);
        return std::pow(w, 2.0 * p_.nu);
    }

    /// Quadrature walk of int K(|x-t|) (1-t^2)^{-sigma} (...) dt; visit(t, fac)
    /// receives the combined kernel*weight*quadrature factor.
    /// Quadrature walk of int K(|x-t|) (1-t^2)^{-sigma} (...) dt in the angular
    /// variable t = cos(gamma):
    ///     int_0^pi (sin g)^{-2nu} K(|cos b - cos g|) (...) dg,  b = acos(x).
    /// In gamma the grid cardinals oscillate uniformly (trig degree n), so a
    /// panel cap ~ gl_points/n keeps every panel within the rule's bandwidth;
    /// in t the oscillations pack at the edges and no fixed panel layout works.
    /// The kernel factor |cos b - cos g|^{2nu} carries phantom singularities at
    /// g = -b and g = 2pi - b just outside the interval; terminal panel scales
    /// shrink accordingly.
    template <class Visit>
    void walk(double x, Visit&& visit) const
    {
        const double beta = std::acos(std::clamp(x, -1.0, 1.0));
        const double betac = std::acos(std::clamp(-x, -1.0, 1.0)); // pi - beta, stable
        const double mlen = std::min(max_len_, 28.0 / n_);
        const double tnu = 2.0 * p_.nu;
        // [0, beta]: g = da, kernel distance db = beta - g, pi - g = betac + db
        quad::graded_points(
            [&](double g, double da, double db, double w) {
                const double sg = std::sin(std::min(da, betac + db));
                const double hs = std::sin(std::min(0.5 * (g + beta), betac + 0.5 * db));
                const double arg = 2.0 * hs * std::sin(0.5 * db);
                visit(std::cos(g), w * std::pow(sg, -tnu) * kernel(arg));
            },
            0.0, beta, true, true, mlen, 20, beta, std::min(beta, betac));
        // [beta, pi]: kernel distance da = g - beta, edge distance db = pi - g
        quad::graded_points(
            [&](double g, double da, double db, double w) {
                const double sg = std::sin(std::min(beta + da, db));
                const double hs = std::sin(std::min(0.5 * (g + beta), 0.5 * (db + betac)));
                const double arg = 2.0 * hs * std::sin(0.5 * da);
                visit(std::cos(g), w * std::pow(sg, -tnu) * kernel(arg));
            },
            beta, std::numbers::pi, true, true, mlen, 20, std::min(beta, betac), betac);
    }

    /// (Gamma g)(x) for g = weight * h with h given at the grid nodes.
    double apply_at(double x, std::span<const double> h) const
    {
        double s = 0.0;
        walk(x, [&](double t, double fac) { s += fac * interp_->eval(h, t); });
        return s;
    }

    /// Dense collocation matrix: row i maps nodal h values to (Gamma g)(x_i).
    const Eigen::MatrixXd& matrix() const
    {
        if (mat_.size() == 0) {
            mat_.resize(n_, n_);
            std::vector<double> card;
            for (int i = 0; i < n_; ++i) {
                Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(n_);
                walk(rule_.x[i], [&](double t, double fac) {
                    interp_->cardinal(t, card);
                    for (int j = 0; j < n_; ++j) row(j) += fac * card[j];
                });
                mat_.row(i) = row;
            }
        }
        return mat_;
    }

    /// Solve (Gamma g) = rhs by full collocation.
    GridFunction solve(const std::function<double(double)>& rhs) const
    {
        const auto& A = matrix();
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
        check_condition(lu);
        Eigen::VectorXd f(n_);
        for (int i = 0; i < n_; ++i) f(i) = rhs(rule_.x[i]);
        const Eigen::VectorXd h = lu.solve(f);
        return wrap(h, 0);
    }

    /// Parity-reduced solve (rhs must have the stated parity); the returned
    /// smooth factor satisfies the parity exactly.
    GridFunction solve_parity(const std::function<double(double)>& rhs, int parity) const
    {
        const auto& A = matrix();
        const int half = n_ / 2;
        Eigen::MatrixXd Ah(half, half);
        Eigen::VectorXd f(half);
        for (int i = 0; i < half; ++i) {
            for (int j = 0; j < half; ++j)
                Ah(i, j) = A(i, j) + parity * A(i, n_ - 1 - j);
            f(i) = rhs(rule_.x[i]);
        }
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(Ah);
        check_condition(lu);
        const Eigen::VectorXd hh = lu.solve(f);
        Eigen::VectorXd h(n_);
        for (int j = 0; j < half; ++j) {
            h(j) = hh(j);
            h(n_ - 1 - j) = parity * hh(j);
        }
        return wrap(h, parity);
    }

    /// sup-norm residual of (Gamma g) - rhs on a grid `refine` times finer.
    double residual_sup(const GridFunction& g, const std::function<double(double)>& rhs,
                        int refine = 3) const
    {
        const auto fine = quad::gauss_jacobi(refine * n_, -sigma_, -sigma_);
        double r = 0.0;
        for (double x : fine.x)
            r = std::max(r, std::abs(apply_at(x, g.smooth) - rhs(x)));
        return r;
    }

    /// Eigenvalues of the parity-folded operator, descending by magnitude;
    /// these approximate 1/mu_m for modes of that parity (independent oracle
    /// for the spheroidal eigenvalue route).
    std::vector<double> operator_eigenvalues(int parity, int count) const
    {
        const auto& A = matrix();
        const int half = n_ / 2;
        Eigen::MatrixXd Ah(half, half);
        for (int i = 0; i < half; ++i)
            for (int j = 0; j < half; ++j)
                Ah(i, j) = A(i, j) + parity * A(i, n_ - 1 - j);
        Eigen::EigenSolver<Eigen::MatrixXd> es(Ah, false);
        if (es.info() != Eigen::Success)
            throw std::runtime_error("operator_eigenvalues: eigensolve failed");
        std::vector<double> ev;
        for (int i = 0; i < half; ++i) {
            const auto z = es.eigenvalues()(i);
            if (std::abs(z.imag()) > 1e-10 * std::abs(z))
                throw std::runtime_error("operator_eigenvalues: non-real eigenvalue");
            ev.push_back(z.real());
        }
        std::sort(ev.begin(), ev.end(), [](double a, double b) {
            return std::abs(a) > std::abs(b);
        });
        ev.resize(std::min<std::size_t>(ev.size(), count));
        return ev;
    }

private:
    GridFunction wrap(const Eigen::VectorXd& h, int parity) const
    {
        GridFunction g;
        g.params = p_;
        g.nodes = rule_.x;
        g.weights = rule_.w;
        g.smooth.assign(h.data(), h.data() + n_);
        g.parity = parity;
        g.interp = interp_;
        return g;
    }

    template <class LU>
    void check_condition(const LU& lu) const
    {
        const double rc = lu.rcond();
        if (!(rc > 1e-12))
            throw std::runtime_error("NystromSolver: system ill-conditioned, rcond="
                                     + std::to_string(rc));
    }

    Params p_;
    KernelType kt_;
    int n_ = 0;
    double sigma_ = 0.0;
    double max_len_ = 0.0;
    quad::QuadRule rule_;
    std::shared_ptr<quad::BarycentricInterp> interp_;
    mutable Eigen::MatrixXd mat_;
};

/// Direct solve of (Gamma g) = rhs; independent oracle for everything else.
inline GridFunction solve_nystrom(const Params& p, const std::function<double(double)>& rhs,
                                  int n_quad = 0, KernelType kt = KernelType::Bessel)
{
    NystromSolver s(p, n_quad, kt);
    return s.solve(rhs);
}

enum class Method { Nystrom, Series };

/// The two special solutions (Gamma g_c) = cosh(theta x), (Gamma g_s) = sinh(theta x).
inline std::pair<GridFunction, GridFunction> special_solutions(const Params& p,
                                                               Method method = Method::Nystrom,
                                                               int n_quad = 0, int modes = 16)
{
    NystromSolver s(p, n_quad);
    if (method == Method::Nystrom) {
        auto gc = s.solve_parity([&](double x) { return std::cosh(p.theta * x); }, +1);
        auto gs = s.solve_parity([&](double x) { return std::sinh(p.theta * x); }, -1);
        return {std::move(gc), std::move(gs)};
    }
    // series: h(t) = sum_m mu_m X~_m(0) Y_m(t), even modes for g_c, odd for g_s
    const auto even = spheroidal::angular_modes(p, spheroidal::Parity::Even, modes);
    const auto odd = spheroidal::angular_modes(p, spheroidal::Parity::Odd, modes);
    auto series_on_grid = [&](const std::vector<spheroidal::SpheroidalMode>& ms) {
        GridFunction g;
        g.params = p;
        g.nodes = s.nodes();
        g.weights = s.weights();
        g.interp = s.interp();
        g.smooth.assign(g.nodes.size(), 0.0);
        for (const auto& m : ms) {
            const double amp = m.mu * spheroidal::radial_eval(m, 0.0, spheroidal::RadialKind::First);
            for (std::size_t j = 0; j < g.nodes.size(); ++j)
                g.smooth[j] += amp * spheroidal::angular_eval(m, std::acos(g.nodes[j]));
        }
        return g;
    };
    auto gc = series_on_grid(even);
    gc.parity = +1;
    auto gs = series_on_grid(odd);
    gs.parity = -1;
    return {std::move(gc), std::move(gs)};
}

struct SeriesEta {
    double eta = 0.0;
    double tail = 0.0; // relative tail estimate of the truncated sums
};

/// eta as the ratio of the two spheroidal series at gamma = 0.
inline SeriesEta eta_from_series(const Params& p, int M = 16)
{
    if (M < 4) throw std::domain_error("eta_from_series: M must be >= 4");
    const auto even = spheroidal::angular_modes(p, spheroidal::Parity::Even, M);
    const auto odd = spheroidal::angular_modes(p, spheroidal::Parity::Odd, M);
    auto sum_at_zero = [](const std::vector<spheroidal::SpheroidalMode>& ms, double& last) {
        double s = 0.0;
        for (const auto& m : ms) {
            last = m.mu * spheroidal::radial_eval(m, 0.0, spheroidal::RadialKind::First)
                   * spheroidal::angular_eval(m, 0.0);
            s += last;
        }
        return s;
    };
    double last_e = 0.0, last_o = 0.0;
    const double den = sum_at_zero(even, last_e);
    const double num = sum_at_zero(odd, last_o);
    if (!(std::abs(den) > 1e-300))
        throw std::runtime_error("eta_from_series: degenerate denominator");
    SeriesEta r;
    r.eta = num / den;
    // geometric tail estimate from the last retained terms
    r.tail = (std::abs(last_e) + std::abs(last_o)) / std::abs(den);
    return r;
}

/// Laplace transforms Ghat_c(p), Ghat_s(p) and G(1) by Gauss-Jacobi quadrature.
inline LaplaceData laplace_transforms(const GridFunction& gc, const GridFunction& gs,
                                      double p_arg)
{
    const double theta = gc.params.theta;
    auto lap = [&](const GridFunction& g, double p) {
        double s = 0.0;
        for (std::size_t j = 0; j < g.nodes.size(); ++j)
            s += g.weights[j] * g.smooth[j] * std::exp(p * theta * g.nodes[j]);
        return s;
    };
    LaplaceData d;
    d.Gc = lap(gc, p_arg);
    d.Gs = lap(gs, p_arg);
    d.G1 = lap(gc, 1.0) + lap(gs, 1.0);
    return d;
}

/// k_c, k_s by polynomial extrapolation of the smooth factors to t = 1, and
/// eta = k_s / k_c. Degree-4 fit in (1-t) over the 6 nodes nearest the edge.
inline EdgeData edge_coefficients(const GridFunction& gc, const GridFunction& gs)
{
    const auto& nodes = gc.nodes;
    const std::size_t n = nodes.size();
    auto extrapolate = [&](const GridFunction& g) {
        Eigen::MatrixXd M(6, 5);
        Eigen::VectorXd b(6);
        for (int r = 0; r < 6; ++r) {
            const double u = 1.0 - nodes[n - 6 + r];
            double pw = 1.0;
            for (int c = 0; c < 5; ++c) {
                M(r, c) = pw;
                pw *= u;
            }
            b(r) = g.smooth[n - 6 + r];
        }
        const Eigen::VectorXd sol = M.colPivHouseholderQr().solve(b);
        if (!std::isfinite(sol(0)))
            throw std::runtime_error("edge_coefficients: extrapolation diverged");
        return sol(0);
    };
    EdgeData e;
    const double scale = std::pow(2.0, gc.params.nu + 0.5);
    e.kc = extrapolate(gc) / scale;
    e.ks = extrapolate(gs) / scale;
    if (!(std::abs(e.kc) > 1e-300))
        throw std::runtime_error("edge_coefficients: vanishing k_c");
    e.eta = e.ks / e.kc;
    return e;
}

} // namespace paineq::solver
