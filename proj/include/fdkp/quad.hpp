#pragma once

#include <fdkp/errors.hpp>

#include <cmath>
#include <complex>
#include <queue>
#include <vector>

// 1-D quadrature engines shared by the Bessel and kernel evaluators:
//  - adaptive Gauss-Kronrod 7-15 on finite intervals (globally adaptive,
//    worst-interval-first, ties broken toward the left subinterval),
//  - semi-infinite Laplace-type integrals int_0^inf e^{-rs} g(s) ds with the
//    s = u^2 substitution absorbing a possible s^{-1/2} endpoint,
//  - arcsine-weight integrals int h(s) (1-s^2)^{-1/2} ds via s = sin(phi),
//  - non-adaptive composite GK15 panels for tensor-product cubature.

namespace fdkp::quad {

struct ComplexQuadResult {
    std::complex<double> value;
    double abs_error_estimate = 0.0;
    int nodes_used = 0;
};

namespace detail {

// Kronrod 15 abscissae (positive half), Kronrod weights, and the embedded
// Gauss 7 weights; the Gauss nodes are xgk[1], xgk[3], xgk[5], xgk[7].
// Standard dqk15 constants, validated by polynomial exactness in the tests.
inline constexpr double xgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
inline constexpr double wgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
inline constexpr double wg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

// One GK15 panel on [a,b]: fills the Kronrod value and the |K-G| estimate.
template <class F>
inline void gk15_panel(F&& f, double a, double b, std::complex<double>& k15, double& err) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    std::complex<double> fc = f(c);
    std::complex<double> sk = wgk[7] * fc;
    std::complex<double> sg = wg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double d = h * xgk[j];
        const std::complex<double> fs = f(c - d) + f(c + d);
        sk += wgk[j] * fs;
        if (j % 2 == 1) sg += wg[j / 2] * fs;
    }
    k15 = sk * h;
    err = std::abs((sk - sg) * h);
}

struct Interval {
    double a, b;
    std::complex<double> val;
    double err;
    int depth;
};

struct WorstFirst {
    // Largest error first; equal errors resolve to the leftmost interval.
    bool operator()(const Interval& p, const Interval& q) const {
        if (p.err != q.err) return p.err < q.err;
        return p.a > q.a;
    }
};

} // namespace detail

// Globally adaptive GK15 on [a,b].  Succeeds when the summed error estimate
// drops below max(tol, tol*|integral|); throws convergence_error (carrying
// the partial value) if the bisection depth or interval budget is exhausted.
template <class F>
ComplexQuadResult integrate_finite(F&& f, double a, double b, double tol, int max_depth = 50) {
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
        throw domain_error("integrate_finite: need finite a < b");
    if (!(tol > 0.0)) throw domain_error("integrate_finite: need tol > 0");

    constexpr int max_intervals = 20000;
    std::priority_queue<detail::Interval, std::vector<detail::Interval>, detail::WorstFirst> heap;

    detail::Interval whole{a, b, {}, 0.0, 0};
    detail::gk15_panel(f, a, b, whole.val, whole.err);
    heap.push(whole);
    std::complex<double> total = whole.val;
    double total_err = whole.err;
    int panels = 1;

    auto target = [&] { return std::max(tol, tol * std::abs(total)); };

    while (total_err > target()) {
        if (panels >= max_intervals)
            throw convergence_error("integrate_finite: interval budget exhausted", total, total_err);
        detail::Interval worst = heap.top();
        if (worst.depth >= max_depth)
            throw convergence_error("integrate_finite: max bisection depth reached", total, total_err);
        heap.pop();
        total -= worst.val;
        total_err -= worst.err;

        const double mid = 0.5 * (worst.a + worst.b);
        detail::Interval left{worst.a, mid, {}, 0.0, worst.depth + 1};
        detail::Interval right{mid, worst.b, {}, 0.0, worst.depth + 1};
        detail::gk15_panel(f, left.a, left.b, left.val, left.err);
        detail::gk15_panel(f, right.a, right.b, right.val, right.err);
        panels += 2;
        total += left.val + right.val;
        total_err += left.err + right.err;
        heap.push(left);
        heap.push(right);
    }
    return {total, total_err, 15 * panels};
}

// int_0^inf e^{-rs} g(s) ds for r > 0, truncated at s_max = max(40/r, 40)
// (truncation error <= e^{-40} of scale), with the substitution s = u^2 so
// integrands behaving like s^{-1/2} at the origin become bounded.
template <class G>
ComplexQuadResult integrate_laplace(G&& g, double r, double tol) {
    if (!(r > 0.0) || !std::isfinite(r)) throw domain_error("integrate_laplace: need r > 0");
    const double s_max = std::max(40.0 / r, 40.0);
    const double u_max = std::sqrt(s_max);
    auto fu = [&](double u) -> std::complex<double> {
        const double s = u * u;
        return std::exp(-r * s) * g(s) * (2.0 * u);
    };
    return integrate_finite(fu, 0.0, u_max, tol);
}

// int_a^b h(s) (1-s^2)^{-1/2} ds for -1 <= a <= b <= 1 via s = sin(phi):
// the substituted integrand h(sin phi) is smooth up to the endpoints.
template <class H>
ComplexQuadResult integrate_arcsine(H&& h, double a, double b, double tol) {
    if (!(a >= -1.0 && b <= 1.0 && a <= b))
        throw domain_error("integrate_arcsine: need -1 <= a <= b <= 1");
    if (a == b) return {0.0, 0.0, 0};
    auto fphi = [&](double phi) { return h(std::sin(phi)); };
    return integrate_finite(fphi, std::asin(a), std::asin(b), tol);
}

// Composite GK15 on npanels uniform panels; the error estimate is the sum of
// per-panel |K-G|.  Non-adaptive, for callers that size panels themselves.
template <class F>
ComplexQuadResult fixed_panels(F&& f, double a, double b, int npanels) {
    if (!(a < b) || npanels < 1) throw domain_error("fixed_panels: bad interval or panel count");
    std::complex<double> total = 0.0;
    double err = 0.0;
    const double h = (b - a) / npanels;
    for (int p = 0; p < npanels; ++p) {
        std::complex<double> v;
        double e;
        detail::gk15_panel(f, a + p * h, a + (p + 1) * h, v, e);
        total += v;
        err += e;
    }
    return {total, err, 15 * npanels};
}

} // namespace fdkp::quad
