#pragma once

#include <fdkp/errors.hpp>

#include <cmath>
#include <complex>
#include <vector>

// Barycentric Chebyshev-Lobatto interpolation of a complex-valued function on
// an interval.  Used to tabulate the slowly varying Laplace factors of the
// asymmetric Bessel assembly once per kernel evaluation; for functions
// analytic in a neighbourhood of the interval the error decays geometrically
// in the node count.

namespace fdkp::cheb {

class ChebInterp {
public:
    template <class F>
    static ChebInterp build(F&& f, double a, double b, int n) {
        if (!(a < b) || n < 2) throw domain_error("ChebInterp: need a < b and n >= 2");
        ChebInterp c;
        c.a_ = a;
        c.b_ = b;
        c.x_.resize(n + 1);
        c.v_.resize(n + 1);
        for (int j = 0; j <= n; ++j) {
            // Lobatto nodes, descending cos(j pi / n) mapped to [a,b].
            const double t = std::cos(M_PI * j / n);
            c.x_[j] = 0.5 * (a + b) + 0.5 * (b - a) * t;
            c.v_[j] = f(c.x_[j]);
        }
        return c;
    }

    std::complex<double> operator()(double x) const {
        // Barycentric weights for Lobatto nodes: (-1)^j, halved at the ends.
        const int n = static_cast<int>(x_.size()) - 1;
        std::complex<double> num = 0.0;
        std::complex<double> den = 0.0;
        double sgn = 1.0;
        for (int j = 0; j <= n; ++j) {
            const double dx = x - x_[j];
            if (dx == 0.0) return v_[j];
            double w = sgn;
            if (j == 0 || j == n) w *= 0.5;
            const double q = w / dx;
            num += q * v_[j];
            den += q;
            sgn = -sgn;
        }
        return num / den;
    }

    double lo() const { return a_; }
    double hi() const { return b_; }

private:
    double a_ = 0.0, b_ = 1.0;
    std::vector<double> x_;
    std::vector<std::complex<double>> v_;
};

} // namespace fdkp::cheb
