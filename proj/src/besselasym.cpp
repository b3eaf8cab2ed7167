#include <fdkp/besselasym.hpp>

#include <fdkp/quad.hpp>
#include <fdkp/util.hpp>

#include <cmath>

namespace fdkp::bessel {

using cplx = std::complex<double>;
constexpr cplx I{0.0, 1.0};

PlanePoint::PlanePoint(double x1_, double x2_) : x1(x1_), x2(x2_) {
    if (!std::isfinite(x1) || !std::isfinite(x2))
        throw domain_error("PlanePoint: non-finite coordinates");
    r = std::hypot(x1, x2);
    s1 = (x1 > 0.0) - (x1 < 0.0);
    a = r > 0.0 ? std::min(std::abs(x2) / r, 1.0) : 0.0;
}

std::complex<double> j_plus_direct(const PlanePoint& x, double tol) {
    if (x.r > 1e5) throw budget_error("j_plus_direct: |x| exceeds the oscillation budget 1e5");
    auto f = [&](double th) { return std::exp(I * (x.x1 * std::cos(th) + x.x2 * std::sin(th))); };
    return quad::integrate_finite(f, -M_PI / 2.0, M_PI / 2.0, tol).value;
}

std::complex<double> F(double r, double a, double tol) {
    if (!(r >= 0.0) || !(a >= 0.0 && a <= 1.0)) throw domain_error("F: need r >= 0, a in [0,1]");
    if (a == 0.0) return 0.0;
    auto h = [&](double s) { return std::exp(I * r * s); };
    return quad::integrate_arcsine(h, -a, a, tol).value;
}

std::complex<double> F_pm(int sign, double r, double a, double tol) {
    if (sign != 1 && sign != -1) throw domain_error("F_pm: sign must be +1 or -1");
    if (!(r >= 0.0) || !(a >= 0.0 && a <= 1.0)) throw domain_error("F_pm: need r >= 0, a in [0,1]");
    if (a == 1.0) return 0.0;
    auto h = [&](double s) { return std::exp(I * (sign * r) * s); };
    return 2.0 * quad::integrate_arcsine(h, a, 1.0, tol).value;
}

namespace {

// Laplace integrand (s^2 + 1 - a^2 - sign 2 a i s)^{-1/2}, principal branch.
// The radicand's real part s^2 + 1 - a^2 stays >= 0 for a <= 1, so the branch
// cut on the negative real axis is never approached.
cplx laplace_g(int sign, double a, double s) {
    const cplx w{s * s + 1.0 - a * a, -sign * 2.0 * a * s};
    return 1.0 / std::sqrt(w);
}

void check_fa_args(int sign, double r, double a, const char* who) {
    if (sign != 1 && sign != -1) throw domain_error(std::string(who) + ": sign must be +1 or -1");
    if (!(r >= 1e-3)) throw domain_error(std::string(who) + ": representation used for r >= 1e-3");
    if (!(a >= 0.0 && a <= 1.0)) throw domain_error(std::string(who) + ": need a in [0,1]");
}

} // namespace

std::complex<double> f_a(int sign, double r, double a, double tol) {
    check_fa_args(sign, r, a, "f_a");
    auto g = [&](double s) { return laplace_g(sign, a, s); };
    return -static_cast<double>(sign) * I * quad::integrate_laplace(g, r, tol).value;
}

std::complex<double> f_a_dr(int sign, double r, double a, double tol) {
    check_fa_args(sign, r, a, "f_a_dr");
    auto g = [&](double s) { return -s * laplace_g(sign, a, s); };
    return -static_cast<double>(sign) * I * quad::integrate_laplace(g, r, tol).value;
}

std::complex<double> j_plus_identity(const PlanePoint& x, double tol) {
    if (x.r == 0.0) return M_PI;
    if (x.s1 == 0) return j_plus_direct(x, tol); // measure-zero column x1 = 0
    return F(x.r, x.a, 0.5 * tol) + F_pm(x.s1, x.r, x.a, 0.5 * tol);
}

DecayReport verify_fa_decay(int sign, const std::vector<double>& a_grid,
                            const std::vector<double>& r_grid, double tol, double r_lo_cap) {
    const int na = static_cast<int>(a_grid.size());
    const int nr = static_cast<int>(r_grid.size());
    struct Cell {
        double w0 = 0.0, w1 = 0.0;
        bool finite = true;
    };
    std::vector<Cell> cells(static_cast<size_t>(na) * nr);
    util::parallel_for(na * nr, [&](int idx) {
        const double a = a_grid[idx / nr];
        const double r = r_grid[idx % nr];
        const double v = std::abs(f_a(sign, r, a, tol));
        const double d = std::abs(f_a_dr(sign, r, a, tol));
        Cell& c = cells[idx];
        c.w0 = std::sqrt(r) * v;
        c.w1 = r * std::sqrt(r) * d;
        c.finite = std::isfinite(c.w0) && std::isfinite(c.w1);
    });
    DecayReport rep;
    rep.r_lo_cap = r_lo_cap;
    for (int idx = 0; idx < na * nr; ++idx) {
        const double r = r_grid[idx % nr];
        const Cell& c = cells[idx];
        rep.all_finite = rep.all_finite && c.finite;
        rep.sup_f = std::max(rep.sup_f, c.w0);
        rep.sup_df = std::max(rep.sup_df, c.w1);
        if (r <= r_lo_cap) {
            rep.sup_f_lo = std::max(rep.sup_f_lo, c.w0);
            rep.sup_df_lo = std::max(rep.sup_df_lo, c.w1);
        }
    }
    return rep;
}

// J_+(R xhat) = e^{iaR} f_a^+ + e^{-iaR} f_a^-
//             + s1 != 0:  2 e^{i s1 R} f_1^{s1} - 2 e^{i s1 a R} f_a^{s1}.
// The f-factors are smooth, non-oscillatory functions of log R; tabulating
// them once makes each subsequent J_+ query O(nodes) arithmetic.
JplusEvaluator::JplusEvaluator(int s1, double a, double Rmin, double Rmax, double tol, int nodes)
    : s1_(s1), a_(a) {
    if (!(Rmin > 0.0 && Rmax > Rmin)) throw domain_error("JplusEvaluator: need 0 < Rmin < Rmax");
    if (!(a >= 0.0 && a <= 1.0)) throw domain_error("JplusEvaluator: need a in [0,1]");
    const double la = std::log(Rmin), lb = std::log(Rmax);
    const double qt = 0.01 * tol;
    fap_ = cheb::ChebInterp::build([&](double lr) { return f_a(+1, std::exp(lr), a, qt); }, la, lb, nodes);
    fam_ = cheb::ChebInterp::build([&](double lr) { return f_a(-1, std::exp(lr), a, qt); }, la, lb, nodes);
    if (s1_ != 0)
        f1s_ = cheb::ChebInterp::build([&](double lr) { return f_a(s1_, std::exp(lr), 1.0, qt); }, la, lb, nodes);
}

std::complex<double> JplusEvaluator::operator()(double R) const {
    const double lr = std::log(R);
    const cplx fap = fap_(lr);
    const cplx fam = fam_(lr);
    cplx J = std::exp(I * (a_ * R)) * fap + std::exp(-I * (a_ * R)) * fam;
    if (s1_ != 0) {
        const double s = static_cast<double>(s1_);
        const cplx fas = s1_ > 0 ? fap : fam;
        J += 2.0 * std::exp(I * (s * R)) * f1s_(lr) - 2.0 * std::exp(I * (s * a_ * R)) * fas;
    }
    return J;
}

} // namespace fdkp::bessel
