#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

namespace paineq::quad {

/// Barycentric Lagrange interpolation on a fixed node set (second form).
/// Weights are scaled by the interval capacity so products stay in range for
/// a few hundred nodes.
class BarycentricInterp {
public:
    explicit BarycentricInterp(std::vector<double> nodes) : nodes_(std::move(nodes))
    {
        const std::size_t n = nodes_.size();
        if (n < 2) throw std::domain_error("BarycentricInterp: need >= 2 nodes");
        wts_.assign(n, 1.0);
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                if (k == j) continue;
                wts_[j] *= 2.0 * (nodes_[j] - nodes_[k]);
            }
            wts_[j] = 1.0 / wts_[j];
        }
    }

    const std::vector<double>& nodes() const { return nodes_; }

    double eval(std::span<const double> values, double t) const
    {
        double num = 0.0, den = 0.0;
        for (std::size_t j = 0; j < nodes_.size(); ++j) {
            const double d = t - nodes_[j];
            if (d == 0.0) return values[j];
            const double c = wts_[j] / d;
            num += c * values[j];
            den += c;
        }
        return num / den;
    }

    /// All cardinal functions ell_j(t) at once.
    void cardinal(double t, std::vector<double>& out) const
    {
        const std::size_t n = nodes_.size();
        out.assign(n, 0.0);
        double den = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double d = t - nodes_[j];
            if (d == 0.0) {
                out.assign(n, 0.0); // drop the partial w/d entries written so far
                out[j] = 1.0;
                return;
            }
            out[j] = wts_[j] / d;
            den += out[j];
        }
        for (std::size_t j = 0; j < n; ++j) out[j] /= den;
    }

private:
    std::vector<double> nodes_;
    std::vector<double> wts_;
};

} // namespace paineq::quad
