#include <doctest.h>

#include <fdkp/besselasym.hpp>
#include <fdkp/util.hpp>

#include <cmath>
#include <complex>

// The half-circle integral J_+ has one perfect external oracle: adding its
// conjugate closes the circle, so Re J_+(x) = pi J_0(|x|) with the standard
// library Bessel function on the other side.  The assembly identities
// (F / F^pm splitting, Laplace representations) are then checked against the
// direct angular quadrature, and the fast fixed-direction evaluator against
// its slow definition.

namespace bes = fdkp::bessel;
using cplx = std::complex<double>;
constexpr cplx I{0.0, 1.0};

TEST_CASE("bessel: PlanePoint geometry") {
    const bes::PlanePoint p(3.0, -4.0);
    CHECK(p.r == 5.0);
    CHECK(p.s1 == 1);
    CHECK(p.a == doctest::Approx(0.8).epsilon(1e-15)); // |x2|/r
    CHECK(bes::PlanePoint(-3.0, 4.0).s1 == -1);
    CHECK(bes::PlanePoint(0.0, 2.0).s1 == 0);
    CHECK(bes::PlanePoint(0.0, 0.0).a == 0.0);
    CHECK_THROWS_AS(bes::PlanePoint(NAN, 0.0), fdkp::domain_error);
}

TEST_CASE("bessel: Re J_+ = pi J_0 against the standard library") {
    for (double r : {0.3, 1.0, 4.0, 15.0, 60.0}) {
        for (double th : {0.1, 0.9, 2.0, 3.0}) {
            const bes::PlanePoint x(r * std::cos(th), r * std::sin(th));
            const cplx J = bes::j_plus_direct(x, 1e-12);
            CHECK(std::abs(J.real() - M_PI * std::cyl_bessel_j(0.0, r)) < 1e-10);
        }
    }
}

TEST_CASE("bessel: J_+ symmetries") {
    for (double r : {0.7, 5.0, 23.0}) {
        const bes::PlanePoint x(r * 0.6, r * 0.8);
        const cplx J = bes::j_plus_direct(x, 1e-12);
        // x2 -> -x2 is the reflection th -> -th of the integration arc.
        CHECK(std::abs(bes::j_plus_direct(bes::PlanePoint(x.x1, -x.x2), 1e-12) - J) < 1e-11);
        // x -> -x conjugates the integrand.
        CHECK(std::abs(bes::j_plus_direct(bes::PlanePoint(-x.x1, -x.x2), 1e-12) - std::conj(J)) <
              1e-11);
    }
    CHECK(std::abs(bes::j_plus_direct(bes::PlanePoint(0.0, 0.0), 1e-12) - cplx{M_PI}) < 1e-11);
    CHECK_THROWS_AS(bes::j_plus_direct(bes::PlanePoint(2e5, 0.0), 1e-8), fdkp::budget_error);
}

TEST_CASE("bessel: splitting identity J_+ = F + F^{s1} in all quadrants") {
    for (double r : {0.5, 2.0, 9.0, 40.0}) {
        for (double th : {0.2, 0.7, 1.2}) {
            for (double qx : {1.0, -1.0}) {
                for (double qy : {1.0, -1.0}) {
                    const bes::PlanePoint x(qx * r * std::cos(th), qy * r * std::sin(th));
                    const cplx a = bes::j_plus_direct(x, 1e-12);
                    const cplx b = bes::j_plus_identity(x, 1e-11);
                    CHECK(std::abs(a - b) < 1e-9);
                }
            }
        }
    }
    // Degenerate columns: a = 1 kills F^pm, a = 0 kills F, x1 = 0 delegates.
    CHECK(bes::F(3.0, 0.0, 1e-10) == cplx{0.0});
    CHECK(bes::F_pm(1, 3.0, 1.0, 1e-10) == cplx{0.0});
    const bes::PlanePoint axis(0.0, 7.0);
    CHECK(std::abs(bes::j_plus_identity(axis, 1e-11) - bes::j_plus_direct(axis, 1e-12)) < 1e-10);
}

TEST_CASE("bessel: F at a = 1 closes the full arcsine integral pi J_0") {
    for (double r : {1.0, 6.0, 25.0})
        CHECK(std::abs(bes::F(r, 1.0, 1e-12).real() - M_PI * std::cyl_bessel_j(0.0, r)) < 1e-10);
}

TEST_CASE("bessel: Laplace representation of F and F^pm") {
    // F = e^{iar} f_a^+ + e^{-iar} f_a^-;  F^pm = 2 e^{pm ir} f_1^pm
    // - 2 e^{pm iar} f_a^pm.  Finite quadrature on the left, semi-infinite
    // Laplace quadrature on the right: independent code paths.
    for (double r : {1.0, 7.0, 50.0, 300.0}) {
        for (double a : {0.1, 0.5, 0.9}) {
            const cplx fap = bes::f_a(+1, r, a, 1e-13);
            const cplx fam = bes::f_a(-1, r, a, 1e-13);
            const cplx lhsF = bes::F(r, a, 1e-12);
            const cplx rhsF = std::exp(I * (a * r)) * fap + std::exp(-I * (a * r)) * fam;
            CHECK(std::abs(lhsF - rhsF) < 1e-10);
            for (int sign : {1, -1}) {
                const cplx lhs = bes::F_pm(sign, r, a, 1e-12);
                const cplx rhs =
                    2.0 * std::exp(I * (sign * r)) * bes::f_a(sign, r, 1.0, 1e-13) -
                    2.0 * std::exp(I * (sign * a * r)) * (sign > 0 ? fap : fam);
                CHECK(std::abs(lhs - rhs) < 1e-10);
            }
        }
    }
}

TEST_CASE("bessel: conjugation symmetry of the Laplace factors") {
    // The two branches are conjugate: f_a^-(r) = conj(f_a^+(r)).
    for (double r : {0.5, 3.0, 80.0})
        for (double a : {0.0, 0.4, 1.0})
            CHECK(std::abs(bes::f_a(-1, r, a, 1e-13) - std::conj(bes::f_a(+1, r, a, 1e-13))) <
                  1e-12);
}

TEST_CASE("bessel: f_a_dr is the r-derivative of f_a") {
    for (double r : {1.0, 5.0, 40.0}) {
        for (double a : {0.2, 0.8}) {
            const double h = 1e-4 * r;
            const cplx fd = (bes::f_a(+1, r + h, a, 1e-13) - bes::f_a(+1, r - h, a, 1e-13)) /
                            (2.0 * h);
            CHECK(std::abs(bes::f_a_dr(+1, r, a, 1e-13) - fd) < 1e-6 / r);
        }
    }
    CHECK_THROWS_AS(bes::f_a(+1, 1e-4, 0.5, 1e-10), fdkp::domain_error); // below validity
    CHECK_THROWS_AS(bes::f_a(0, 1.0, 0.5, 1e-10), fdkp::domain_error);
}

TEST_CASE("bessel: weighted decay sups are finite and settle across decades") {
    const std::vector<double> a_grid{0.0, 0.5, 1.0};
    const auto r_grid = fdkp::util::geomspace(1.0, 1e4, 41);
    for (int sign : {1, -1}) {
        const auto rep = bes::verify_fa_decay(sign, a_grid, r_grid, 1e-10);
        CHECK(rep.all_finite);
        CHECK(rep.sup_f > 0.0);
        CHECK(rep.sup_df > 0.0);
        // If |f| ~ c r^{-1/2} truly, the sup over r <= 100 already carries
        // the constant: the full-grid sup may exceed it only marginally.
        CHECK(rep.sup_f <= 1.2 * rep.sup_f_lo);
        CHECK(rep.sup_df <= 1.2 * rep.sup_df_lo);
    }
}

TEST_CASE("bessel: fixed-direction evaluator matches the direct quadrature") {
    const double a = 0.6;
    for (int s1 : {1, -1}) {
        const bes::JplusEvaluator ev(s1, a, 40.0, 400.0, 1e-10);
        for (double R : fdkp::util::geomspace(40.0, 400.0, 23)) {
            // Reconstruct the plane point with |x2|/R = a and sgn(x1) = s1.
            const bes::PlanePoint x(s1 * R * std::sqrt(1.0 - a * a), R * a);
            CHECK(std::abs(ev(R) - bes::j_plus_direct(x, 1e-12)) < 1e-8);
        }
    }
    // s1 = 0 carries only the F part of the assembly.
    const bes::JplusEvaluator ev0(0, a, 40.0, 400.0, 1e-10);
    for (double R : {41.0, 150.0, 390.0})
        CHECK(std::abs(ev0(R) - bes::F(R, a, 1e-12)) < 1e-8);
    CHECK_THROWS_AS(bes::JplusEvaluator(1, 0.5, -1.0, 10.0, 1e-8), fdkp::domain_error);
    CHECK_THROWS_AS(bes::JplusEvaluator(1, 2.0, 1.0, 10.0, 1e-8), fdkp::domain_error);
}
