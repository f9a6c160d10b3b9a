#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

// Adaptive Dormand-Prince 5(4) with exact landing on requested output points.
// Works in either direction of the independent variable.

namespace paineq::ode {

template <std::size_t N>
using State = std::array<double, N>;

template <std::size_t N, class RHS>
class DormandPrince {
public:
    DormandPrince(RHS rhs, double tol) : rhs_(std::move(rhs)), tol_(tol) {}

    /// Advance (x, y) to x_end; calls observer(x, y) after every accepted step
    /// if observe_steps, and always at x_end.
    template <class Obs>
    void integrate_to(double& x, State<N>& y, double x_end, Obs&& observer,
                      bool observe_steps = false)
    {
        const double dir = (x_end >= x) ? 1.0 : -1.0;
        if (x == x_end) return;
        double h = h_;
        if (h == 0.0 || h * dir <= 0.0) h = dir * std::abs(x_end - x) * 1e-3;
        std::size_t steps = 0;
        while (dir * (x_end - x) > 0.0) {
            if (++steps > max_steps_)
                throw std::runtime_error("DormandPrince: step limit exceeded");
            if (dir * (x + h) > dir * x_end) h = x_end - x;
            State<N> ynew, yerr;
            step(x, y, h, ynew, yerr);
            double err = 0.0;
            for (std::size_t i = 0; i < N; ++i) {
                const double sc = tol_ + tol_ * std::max(std::abs(y[i]), std::abs(ynew[i]));
                err = std::max(err, std::abs(yerr[i]) / sc);
            }
            if (err <= 1.0) {
                x += h;
                y = ynew;
                if (observe_steps) observer(x, y);
                const double fac = std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 5.0);
                h *= fac;
            } else {
                h *= std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
                if (std::abs(h) < 16.0 * std::numeric_limits<double>::epsilon()
                                      * std::max(std::abs(x), 1.0))
                    throw std::runtime_error("DormandPrince: step size underflow");
            }
        }
        h_ = h;
        if (!observe_steps) observer(x, y);
    }

    /// Integrate hitting every point of `outputs` (sorted along the direction
    /// of travel) exactly; observer(x, y) is called at each.
    template <class Obs>
    void integrate_outputs(double x0, const State<N>& y0, const std::vector<double>& outputs,
                           Obs&& observer)
    {
        double x = x0;
        State<N> y = y0;
        for (double target : outputs) {
            if (target == x) {
                observer(x, y);
                continue;
            }
            integrate_to(x, y, target, [](double, const State<N>&) {});
            observer(x, y);
        }
    }

private:
    void step(double x, const State<N>& y, double h, State<N>& out, State<N>& err) const
    {
        constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
        const State<N> k1 = rhs_(x, y);
        State<N> t;
        auto lin = [&](std::initializer_list<std::pair<const State<N>*, double>> terms) {
            for (std::size_t i = 0; i < N; ++i) {
                double s = y[i];
                for (const auto& [k, c] : terms) s += h * c * (*k)[i];
                t[i] = s;
            }
        };
        lin({{&k1, 1.0 / 5}});
        const State<N> k2 = rhs_(x + c2 * h, t);
        lin({{&k1, 3.0 / 40}, {&k2, 9.0 / 40}});
        const State<N> k3 = rhs_(x + c3 * h, t);
        lin({{&k1, 44.0 / 45}, {&k2, -56.0 / 15}, {&k3, 32.0 / 9}});
        const State<N> k4 = rhs_(x + c4 * h, t);
        lin({{&k1, 19372.0 / 6561}, {&k2, -25360.0 / 2187}, {&k3, 64448.0 / 6561},
             {&k4, -212.0 / 729}});
        const State<N> k5 = rhs_(x + c5 * h, t);
        lin({{&k1, 9017.0 / 3168}, {&k2, -355.0 / 33}, {&k3, 46732.0 / 5247},
             {&k4, 49.0 / 176}, {&k5, -5103.0 / 18656}});
        const State<N> k6 = rhs_(x + h, t);
        lin({{&k1, 35.0 / 384}, {&k3, 500.0 / 1113}, {&k4, 125.0 / 192},
             {&k5, -2187.0 / 6784}, {&k6, 11.0 / 84}});
        out = t;
        const State<N> k7 = rhs_(x + h, out);
        constexpr double e1 = 35.0 / 384 - 5179.0 / 57600;
        constexpr double e3 = 500.0 / 1113 - 7571.0 / 16695;
        constexpr double e4 = 125.0 / 192 - 393.0 / 640;
        constexpr double e5 = -2187.0 / 6784 + 92097.0 / 339200;
        constexpr double e6 = 11.0 / 84 - 187.0 / 2100;
        constexpr double e7 = -1.0 / 40;
        for (std::size_t i = 0; i < N; ++i)
            err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i]
                          + e7 * k7[i]);
    }

    RHS rhs_;
    double tol_;
    double h_ = 0.0;
    std::size_t max_steps_ = 20'000'000;
};

template <std::size_t N, class RHS>
DormandPrince<N, RHS> make_integrator(RHS rhs, double tol)
{
    return DormandPrince<N, RHS>(std::move(rhs), tol);
}

} // namespace paineq::ode
