#pragma once

#include <fdkp/cheb.hpp>
#include <fdkp/errors.hpp>

#include <complex>
#include <vector>

// Asymmetric Bessel functions.  J_+ is the half-circle angular integral
//
//     J_+(x) = int_{-pi/2}^{pi/2} e^{i x.(cos th, sin th)} d th,
//
// and J_- = conj(J_+).  With r = |x|, s1 = sgn(x1), a = |x2|/r it decomposes
// as J_+ = F(r,a) + F^{s1}(r,a) where
//
//     F(r,a)      = int_{-a}^{a} e^{irs} (1-s^2)^{-1/2} ds,
//     F^{pm}(r,a) = 2 int_a^1 e^{pm irs} (1-s^2)^{-1/2} ds,
//
// and both reduce to the Laplace representations
//
//     f_a^{pm}(r) = mp i int_0^inf e^{-rs} (s^2 + 1 - a^2 mp 2ais)^{-1/2} ds,
//     F      = e^{iar} f_a^+ + e^{-iar} f_a^-,
//     F^{pm} = 2 e^{pm ir} f_1^{pm} - 2 e^{pm iar} f_a^{pm},
//
// with the principal branch of the square root (the radicand has
// non-negative real part for s >= 0, a in [0,1], which is asserted).
// These identities and the decay |d_r^j f_a^pm| <= C r^{-j-1/2} are what the
// verification suite measures.

namespace fdkp::bessel {

struct PlanePoint {
    double x1 = 0.0, x2 = 0.0;
    double r = 0.0; // |x|
    int s1 = 0;     // sgn(x1)
    double a = 0.0; // |x2|/|x|, 0 at the origin

    PlanePoint() = default;
    PlanePoint(double x1_, double x2_);
};

// Direct angular quadrature; oscillation budget |x| <= 1e5.
std::complex<double> j_plus_direct(const PlanePoint& x, double tol);

// F and F^pm by finite quadrature with the arcsine endpoint substitution.
std::complex<double> F(double r, double a, double tol);
std::complex<double> F_pm(int sign, double r, double a, double tol);

// Laplace representation f_a^{sign}(r) and its r-derivative (differentiation
// under the integral sign contributes a factor -s).  Valid for r >= 1e-3.
std::complex<double> f_a(int sign, double r, double a, double tol);
std::complex<double> f_a_dr(int sign, double r, double a, double tol);

// J_+ assembled from F and F^{s1}; the measure-zero column x1 = 0 (s1 = 0)
// is delegated to the direct quadrature.
std::complex<double> j_plus_identity(const PlanePoint& x, double tol);

// Weighted decay sups of Prop-type estimates: over the given grids,
//   sup r^{1/2} |f_a^{sign}(r)|   and   sup r^{3/2} |d_r f_a^{sign}(r)|,
// reported both over the full r-grid and restricted to r <= r_lo_cap so the
// stability of the constant across decades can be checked.
struct DecayReport {
    double sup_f = 0.0;       // weight r^{1/2}, full grid
    double sup_df = 0.0;      // weight r^{3/2}, full grid
    double sup_f_lo = 0.0;    // same, restricted to r <= r_lo_cap
    double sup_df_lo = 0.0;
    double r_lo_cap = 0.0;
    bool all_finite = true;
};
DecayReport verify_fa_decay(int sign, const std::vector<double>& a_grid,
                            const std::vector<double>& r_grid, double tol,
                            double r_lo_cap = 1e2);

// Fast evaluator of R -> J_+ along a fixed direction (fixed s1 and a), for
// R in [Rmin, Rmax].  The four-term assembly keeps the explicit phases
// e^{i alpha R} exact and Chebyshev-interpolates the slowly varying Laplace
// factors in log R, so a radial kernel quadrature can query J_+ at thousands
// of radii for the cost of three interpolant builds.
class JplusEvaluator {
public:
    JplusEvaluator(int s1, double a, double Rmin, double Rmax, double tol, int nodes = 48);
    std::complex<double> operator()(double R) const;

private:
    int s1_;
    double a_;
    cheb::ChebInterp fap_, fam_, f1s_; // f_a^+, f_a^-, f_1^{s1} in log R
};

} // namespace fdkp::bessel
