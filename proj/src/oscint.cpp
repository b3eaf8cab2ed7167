#include <fdkp/oscint.hpp>

#include <fdkp/bump.hpp>
#include <fdkp/quad.hpp>
#include <fdkp/symbol.hpp>
#include <fdkp/util.hpp>

#include <algorithm>
#include <cmath>
#include <optional>

namespace fdkp::oscint {

using cplx = std::complex<double>;
constexpr cplx I{0.0, 1.0};

double critical_speed(double beta, double lambda) {
    if (!(lambda > 0.0) || beta < 0.0) throw domain_error("critical_speed: need lambda > 0, beta >= 0");
    return symbol::bracket(std::sqrt(beta) * lambda) / std::sqrt(symbol::bracket(lambda));
}

namespace {

void check_query(const KernelQuery& q) {
    if (!(q.lambda > 0.0) || !std::isfinite(q.lambda))
        throw domain_error("kernel: need lambda > 0");
    if (q.beta < 0.0 || !std::isfinite(q.beta)) throw domain_error("kernel: need beta >= 0");
    if (!std::isfinite(q.t)) throw domain_error("kernel: non-finite t");
}

double max_m_prime(double beta, double lambda) {
    double mp = 0.0;
    for (double r : util::geomspace(0.5 * lambda, 2.0 * lambda, 33))
        mp = std::max(mp, symbol::m_prime(beta, r));
    return mp;
}

} // namespace

// I = L^2 int_{1/2}^2 [e^{itm} J_+ + e^{-itm} conj(J_+)](L r x) r rho(r) dr.
// Panels are sized from the accumulated phase (radial t m(L r) plus the
// J_+ oscillation ~ 1.5 L|x| across the annulus) and doubled until two
// successive composite rules agree to tolerance.  For L|x| >= 8 the Bessel
// factor comes from the fixed-direction assembly evaluator; below that the
// direct angular quadrature is cheap.
std::complex<double> kernel_radial(const KernelQuery& q, double tol) {
    check_query(q);
    if (!(tol > 0.0)) throw domain_error("kernel_radial: need tol > 0");
    const double L = q.lambda;
    const double W = L * q.x.r;
    const double phase =
        std::abs(q.t) * (symbol::m(q.beta, 2.0 * L) - symbol::m(q.beta, 0.5 * L)) + 1.5 * W;

    std::optional<bessel::JplusEvaluator> ev;
    if (W >= 8.0)
        ev.emplace(q.x.s1, q.x.a, 0.5 * W * (1.0 - 1e-9), 2.0 * W * (1.0 + 1e-9), 0.01 * tol);

    auto integrand = [&](double r) -> cplx {
        const double w = bump::rho(r);
        if (w == 0.0) return 0.0;
        cplx J;
        if (ev) {
            J = (*ev)(W * r);
        } else {
            const bessel::PlanePoint p(L * r * q.x.x1, L * r * q.x.x2);
            J = bessel::j_plus_direct(p, 1e-3 * tol);
        }
        const cplx osc = std::exp(I * (q.t * symbol::m(q.beta, L * r)));
        return (osc * J + std::conj(osc * J)) * (r * w);
    };

    int npanels = std::max(12, static_cast<int>(std::ceil(phase / 3.0)));
    cplx prev = L * L * quad::fixed_panels(integrand, 0.5, 2.0, npanels).value;
    for (int round = 0; round < 6; ++round) {
        npanels *= 2;
        const cplx cur = L * L * quad::fixed_panels(integrand, 0.5, 2.0, npanels).value;
        if (std::abs(cur - prev) <= std::max(tol, tol * std::abs(cur))) return cur;
        prev = cur;
    }
    throw convergence_error("kernel_radial: panel doubling did not settle", prev, tol);
}

// Brute-force tensor cubature of the full annulus, split at xi1 = 0 where
// sgn jumps; each half is a smooth compactly supported integrand on its box.
std::complex<double> kernel_2d(const KernelQuery& q, double tol) {
    check_query(q);
    const double L = q.lambda;
    const double budget = std::abs(q.t) * symbol::m(q.beta, 2.0 * L) + q.x.r * 2.0 * L;
    if (budget > 1e5)
        throw budget_error("kernel_2d: oscillation budget |t| m(2L) + 2L|x| exceeds 1e5");

    const double mp = max_m_prime(q.beta, L);
    auto integrand = [&](double sgn, double xi1, double xi2) -> cplx {
        const double rxi = std::hypot(xi1, xi2);
        const double w = bump::rho(rxi / L);
        if (w == 0.0) return 0.0;
        const double ph = q.x.x1 * xi1 + q.x.x2 * xi2 + q.t * sgn * symbol::m(q.beta, rxi);
        return std::exp(I * ph) * w;
    };

    const double rad1 = 2.0 * L * (std::abs(q.x.x1) + std::abs(q.t) * mp);
    const double rad2 = 2.0 * L * (std::abs(q.x.x2) + std::abs(q.t) * mp);
    int n1 = std::max(8, static_cast<int>(std::ceil(rad1 / 4.0)));
    int n2 = std::max(8, static_cast<int>(std::ceil(rad2 / 4.0)));

    auto whole = [&](int p1, int p2) -> cplx {
        cplx total = 0.0;
        for (double sgn : {1.0, -1.0}) {
            auto outer = [&](double xi1) {
                auto inner = [&](double xi2) { return integrand(sgn, xi1, xi2); };
                return quad::fixed_panels(inner, -2.0 * L, 2.0 * L, p2).value;
            };
            total += quad::fixed_panels(outer, sgn > 0 ? 0.0 : -2.0 * L, sgn > 0 ? 2.0 * L : 0.0, p1).value;
        }
        return total;
    };

    cplx prev = whole(n1, n2);
    for (int round = 0; round < 4; ++round) {
        n1 = n1 + (n1 + 1) / 2; // x1.5 refinement
        n2 = n2 + (n2 + 1) / 2;
        const cplx cur = whole(n1, n2);
        if (std::abs(cur - prev) <= std::max(tol, tol * std::abs(cur))) return cur;
        prev = cur;
    }
    throw convergence_error("kernel_2d: refinement did not settle", prev, tol);
}

PhaseRegime phase_regime(const KernelQuery& q) {
    check_query(q);
    if (!(q.t > 0.0)) throw domain_error("phase_regime: need t > 0");
    const double ratio = (q.x.r / q.t) / critical_speed(q.beta, q.lambda);
    if (ratio > 4.0) return PhaseRegime::nonstationary_plus;
    if (ratio < 0.25) return PhaseRegime::nonstationary_minus;
    return PhaseRegime::stationary;
}

namespace {

struct SweepEval {
    double beta, lambda, t, tol;
    mutable int evals = 0;
    double operator()(double radius, double theta) const {
        ++evals;
        KernelQuery q{beta, lambda, t, bessel::PlanePoint(radius * std::cos(theta), radius * std::sin(theta))};
        return std::abs(kernel_radial(q, tol).real());
    }
};

} // namespace

// The stationary set of the radial phase t m(L r) + (J_+ oscillation ~ L r |x|)
// lies at |x|/t = m'(|xi|) for |xi| in the annulus, so radii are scanned on a
// fixed relative grid bracketing [min m', max m'] t (plus a few sub-critical
// speeds), and in the full mode directions cover [0, pi] -- the kernel is even
// in x2 but has no symmetry in x1, and its maximum generally sits far from the
// coordinate axes.  Golden-section passes in radius / angle / radius polish
// the grid winner.
SupResult kernel_sup(double beta, double lambda, double t, SweepMode mode, double tol) {
    if (!(t != 0.0) || !std::isfinite(t)) throw domain_error("kernel_sup: need t != 0");
    const double at = std::abs(t);
    SweepEval ev{beta, lambda, at, tol};

    double vmin = 1e300, vmax = 0.0;
    for (double r : util::geomspace(0.5 * lambda, 2.0 * lambda, 41)) {
        const double mp = symbol::m_prime(beta, r);
        vmin = std::min(vmin, mp);
        vmax = std::max(vmax, mp);
    }

    std::vector<double> radii;
    std::vector<double> thetas;
    if (mode == SweepMode::direction_full) {
        for (double c : {0.05, 0.2, 0.45, 0.7}) radii.push_back(c * vmin * at);
        for (double v : util::linspace(0.85 * vmin, 1.12 * vmax, 24)) radii.push_back(v * at);
        thetas = util::linspace(0.0, M_PI, 25);
    } else {
        const double rc = 3.0 * critical_speed(beta, lambda) * at;
        for (double v : util::linspace(rc / 40.0, rc, 40)) radii.push_back(v);
        thetas = {0.0, M_PI, M_PI / 2.0, -M_PI / 2.0, M_PI / 4.0, M_PI + M_PI / 4.0};
    }

    double best = -1.0, best_r = radii.front(), best_th = thetas.front();
    for (double th : thetas)
        for (double rr : radii) {
            const double v = ev(rr, th);
            if (v > best) {
                best = v;
                best_r = rr;
                best_th = th;
            }
        }

    // Radius polish, then angle (full mode), then radius again.
    double arg = best_r;
    double v1 = util::golden_max([&](double rr) { return ev(rr, best_th); },
                                 0.80 * best_r, 1.25 * best_r, 22, &arg);
    if (v1 > best) {
        best = v1;
        best_r = arg;
    }
    if (mode == SweepMode::direction_full) {
        const double dth = M_PI / 24.0;
        double argth = best_th;
        const double v2 = util::golden_max([&](double th) { return ev(best_r, th); },
                                           best_th - dth, best_th + dth, 18, &argth);
        if (v2 > best) {
            best = v2;
            best_th = argth;
        }
        v1 = util::golden_max([&](double rr) { return ev(rr, best_th); },
                              0.92 * best_r, 1.09 * best_r, 16, &arg);
        if (v1 > best) {
            best = v1;
            best_r = arg;
        }
    }

    SupResult res;
    res.sup = best;
    res.x1 = best_r * std::cos(best_th);
    res.x2 = best_r * std::sin(best_th);
    res.evals = ev.evals;
    return res;
}

std::vector<DecayRow> decay_table(double beta, const std::vector<double>& lambdas, double tmin,
                                  double tmax, int nt, SweepMode mode, double tol) {
    if (!(tmin > 0.0 && tmax > tmin) || nt < 2)
        throw domain_error("decay_table: need 0 < tmin < tmax and nt >= 2");
    const std::vector<double> ts = util::geomspace(tmin, tmax, nt);
    const int ncell = static_cast<int>(lambdas.size()) * nt;
    std::vector<DecayRow> rows(ncell);
    util::parallel_for(ncell, [&](int idx) {
        const double lam = lambdas[idx / nt];
        const double t = ts[idx % nt];
        const SupResult s = kernel_sup(beta, lam, t, mode, tol);
        const double pred_num =
            std::pow(symbol::bracket(lam), 1.5) / symbol::bracket(std::sqrt(beta) * lam);
        rows[idx] = {lam, t, s.sup, pred_num / t, s.sup * t / pred_num};
    });
    return rows;
}

} // namespace fdkp::oscint
