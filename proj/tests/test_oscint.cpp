#include <doctest.h>

#include <fdkp/bump.hpp>
#include <fdkp/oscint.hpp>
#include <fdkp/quad.hpp>
#include <fdkp/symbol.hpp>

#include <cmath>
#include <complex>
#include <tuple>

// Kernel oracles.  At t = 0 the kernel is the bump's own integral, computed
// here by plain 1-D quadrature; for generic queries the radial Bessel path
// and the brute-force 2-D cubature must agree (they share no code beyond the
// panel rule); the regime classifier and sup sweeps get structural checks.

namespace osc = fdkp::oscint;
namespace sym = fdkp::symbol;
using cplx = std::complex<double>;

namespace {

osc::KernelQuery make_query(double beta, double lambda, double t, double x1, double x2) {
    osc::KernelQuery q;
    q.beta = beta;
    q.lambda = lambda;
    q.t = t;
    q.x = fdkp::bessel::PlanePoint(x1, x2);
    return q;
}

} // namespace

TEST_CASE("oscint: critical speed formula") {
    CHECK(std::abs(osc::critical_speed(0.0, 1.0) - 1.0 / std::sqrt(sym::bracket(1.0))) < 1e-15);
    CHECK(std::abs(osc::critical_speed(1.0, 1.0) - std::sqrt(sym::bracket(1.0))) < 1e-15);
    CHECK(std::abs(osc::critical_speed(1.0, 3.0) -
                   sym::bracket(3.0) / std::sqrt(sym::bracket(3.0))) < 1e-15);
}

TEST_CASE("oscint: kernel at t = 0 is the integral of the bump") {
    // I_{L,0}(0) = int rho(|xi|/L) dxi = 2 pi L^2 int_{1/2}^2 rho(r) r dr.
    const double ring =
        fdkp::quad::integrate_finite([](double r) -> cplx { return fdkp::bump::rho(r) * r; },
                                     0.5, 2.0, 1e-13)
            .value.real();
    for (double lambda : {0.5, 1.0, 4.0}) {
        const auto q = make_query(1.0, lambda, 0.0, 0.0, 0.0);
        const cplx v = osc::kernel_radial(q, 1e-10);
        CHECK(std::abs(v.real() - 2.0 * M_PI * lambda * lambda * ring) < 1e-8);
        CHECK(v.imag() == 0.0); // real by construction on the radial path
    }
}

TEST_CASE("oscint: radial path vs 2-D cubature") {
    // Independent evaluations must agree; tolerances as in the sign-off gate
    // but on a small sample (the full lattice runs there).
    for (double beta : {0.0, 1.0}) {
        for (auto [t, x1, x2] : {std::tuple{0.7, 1.5, -2.0}, std::tuple{4.0, 0.0, 3.0},
                                 std::tuple{12.0, -6.0, 1.0}}) {
            const auto q = make_query(beta, 1.0, t, x1, x2);
            const cplx a = osc::kernel_radial(q, 1e-9);
            const cplx b = osc::kernel_2d(q, 1e-9);
            CHECK(std::abs(a - b) < 1e-6);
            CHECK(std::abs(b.imag()) < 1e-7); // cancels only numerically here
        }
    }
}

TEST_CASE("oscint: kernel is even in x2 and in (t, x1) jointly") {
    const auto q0 = make_query(1.0, 1.0, 3.0, 2.0, 1.0);
    const cplx v0 = osc::kernel_radial(q0, 1e-10);
    CHECK(std::abs(osc::kernel_radial(make_query(1.0, 1.0, 3.0, 2.0, -1.0), 1e-10) - v0) < 1e-8);
    // (t, x1) -> (-t, -x1) conjugates both half-plane contributions, and the
    // kernel is real, so the value is unchanged.
    CHECK(std::abs(osc::kernel_radial(make_query(1.0, 1.0, -3.0, -2.0, 1.0), 1e-10) - v0) < 1e-8);
}

TEST_CASE("oscint: argument validation and budget refusal") {
    CHECK_THROWS_AS(osc::kernel_radial(make_query(1.0, 0.0, 1.0, 0.0, 0.0), 1e-8),
                    fdkp::domain_error);
    CHECK_THROWS_AS(osc::kernel_radial(make_query(-1.0, 1.0, 1.0, 0.0, 0.0), 1e-8),
                    fdkp::domain_error);
    CHECK_THROWS_AS(osc::kernel_2d(make_query(1.0, 4.0, 1e9, 0.0, 0.0), 1e-8),
                    fdkp::budget_error);
}

TEST_CASE("oscint: phase regime classifier") {
    const double cs = osc::critical_speed(1.0, 1.0);
    CHECK(osc::phase_regime(make_query(1.0, 1.0, 2.0, 10.0 * cs * 2.0, 0.0)) ==
          osc::PhaseRegime::nonstationary_plus);
    CHECK(osc::phase_regime(make_query(1.0, 1.0, 2.0, 0.1 * cs * 2.0, 0.0)) ==
          osc::PhaseRegime::nonstationary_minus);
    CHECK(osc::phase_regime(make_query(1.0, 1.0, 2.0, cs * 2.0, 0.0)) ==
          osc::PhaseRegime::stationary);
    CHECK_THROWS_AS(osc::phase_regime(make_query(1.0, 1.0, 0.0, 1.0, 0.0)), fdkp::domain_error);
}

TEST_CASE("oscint: sup sweep finds at least the known large value") {
    // At small time the kernel near the origin is close to its t = 0 value
    // ~ 2 pi L^2 * 0.6; any honest sweep must report a sup of that order.
    const auto full = osc::kernel_sup(1.0, 1.0, 0.5, osc::SweepMode::direction_full, 1e-7);
    CHECK(full.sup > 1.0);
    CHECK(full.evals > 0);
    CHECK(std::isfinite(full.x1));
    CHECK(std::isfinite(full.x2));
}

TEST_CASE("oscint: full direction sweep dominates the three-ray sweep") {
    // rays3 scans a measure-zero subset, so it can only undershoot.  (At
    // late times it does so badly -- the radiation peak leaves the rays --
    // which is why direction_full is the default everywhere.)
    const double t = 25.0;
    const auto full = osc::kernel_sup(1.0, 1.0, t, osc::SweepMode::direction_full, 1e-7);
    const auto rays = osc::kernel_sup(1.0, 1.0, t, osc::SweepMode::rays3, 1e-7);
    CHECK(full.sup >= 0.999 * rays.sup);
}

TEST_CASE("oscint: decay table rows are internally consistent") {
    const std::vector<double> lambdas{0.5, 1.0};
    const auto rows = osc::decay_table(1.0, lambdas, 4.0, 16.0, 3, osc::SweepMode::rays3, 1e-6);
    REQUIRE(rows.size() == 6);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        CHECK(r.lambda == lambdas[i / 3]);
        const double pred = sym::bracket(r.lambda) * std::sqrt(sym::bracket(r.lambda)) /
                            sym::bracket(std::sqrt(1.0) * r.lambda) / r.t;
        CHECK(std::abs(r.predicted - pred) < 1e-12 * pred);
        CHECK(std::abs(r.ratio - r.sup / r.predicted) < 1e-9 * std::abs(r.ratio));
        CHECK(r.sup > 0.0);
    }
    // Times are log-spaced from tmin to tmax within each lambda block.
    CHECK(rows[0].t == doctest::Approx(4.0));
    CHECK(rows[2].t == doctest::Approx(16.0));
}
