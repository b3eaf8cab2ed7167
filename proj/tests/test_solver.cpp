#include <doctest.h>

#include <fdkp/solver.hpp>
#include <fdkp/spectral.hpp>
#include <fdkp/symbol.hpp>

#include <cmath>
#include <vector>

// Solver oracles.  The linear flow has an exact closed form (the free
// propagator), the x2-independent sector has an independent 1-D
// implementation, a single trigonometric mode has a hand-computable
// Hamiltonian, and the schemes' formal order is measured directly.  The long
// high-accuracy conservation runs live in the acceptance suite; here the same
// invariants are smoke-tested at coarser resolution.

namespace sol = fdkp::solver;
namespace sp = fdkp::spectral;

namespace {

sol::SolverConfig small_cfg(int n, double L, double dt) {
    sol::SolverConfig cfg;
    cfg.n1 = cfg.n2 = n;
    cfg.L1 = cfg.L2 = L;
    cfg.dt = dt;
    return cfg;
}

} // namespace

TEST_CASE("solver: zero data stays zero") {
    const auto cfg = small_cfg(32, 8.0 * M_PI, 1.0 / 32.0);
    auto st = sol::make_state(sp::SpectralField2D::zero(32, 32, cfg.L1, cfg.L2), cfg);
    const sol::Stepper sp_(cfg);
    for (int i = 0; i < 10; ++i) sp_.advance(st);
    CHECK(st.field.l2_norm() == 0.0);
    CHECK(st.time == doctest::Approx(10.0 / 32.0));
}

TEST_CASE("solver: with the nonlinearity off the stepper is the free propagator") {
    const double L = 8.0 * M_PI;
    auto cfg = small_cfg(32, L, 1.0 / 32.0);
    cfg.nonlinear = false;
    const auto u0 = sp::random_hs_data(32, L, 3.0, 0.1, 99);
    auto st = sol::make_state(u0, cfg);
    const sol::Stepper stepper(cfg);
    for (int i = 0; i < 16; ++i) stepper.advance(st);
    const auto exact = sp::propagate_linear(u0, cfg.beta, 16.0 / 32.0);
    CHECK(sp::linf_distance(st.field, exact) < 1e-12);
}

TEST_CASE("solver: step() is a value-semantics wrapper") {
    const auto cfg = small_cfg(32, 8.0 * M_PI, 1.0 / 64.0);
    const auto u0 = sp::gaussian_derivative_data(32, cfg.L1, 0.05);
    const auto st0 = sol::make_state(u0, cfg);
    const auto st1 = sol::step(st0, cfg);
    CHECK(st0.time == 0.0); // input untouched
    CHECK(st1.time == doctest::Approx(cfg.dt));
    CHECK(sp::linf_distance(st0.field, st1.field) > 0.0);
}

TEST_CASE("solver: reality and invariants survive a short nonlinear run") {
    const auto cfg = small_cfg(64, 8.0 * M_PI, 1.0 / 64.0);
    const auto u0 = sp::gaussian_derivative_data(64, cfg.L1, 0.05);
    auto st = sol::make_state(u0, cfg);
    const sol::Stepper stepper(cfg);
    stepper.run(st, 64, 16);
    REQUIRE(st.ledger.size() >= 2);
    CHECK(st.field.hermitian_defect() < 1e-13);
    const auto& first = st.ledger.front();
    const auto& last = st.ledger.back();
    // dt = 1/64 is deliberately coarse for speed; the measured drift is
    // ~1e-6 relative here and falls as dt^4 (the acceptance run at the
    // production step size pins the tight bound).
    CHECK(std::abs(last.l2 - first.l2) < 3e-6 * first.l2);
    REQUIRE(first.hamiltonian.has_value());
    REQUIRE(last.hamiltonian.has_value());
    CHECK(std::abs(*last.hamiltonian - *first.hamiltonian) <
          1e-5 * std::max(std::abs(*first.hamiltonian), 1e-12));
    // Ledger diagnostics are populated.
    CHECK(last.grad_linf > 0.0);
    CHECK(last.hs > 0.0);
    CHECK(last.f_hsm1 > 0.0);
}

TEST_CASE("solver: Hamiltonian of a single mode matches the closed form") {
    // u = A sin(2 x1) on [0,2pi)^2: only k = (+-2, 0) carry mass, so
    // H = 1/2 L^2 m(beta,2)/2 * (A^2/4) * 2 - 0 = L^2 A^2 m(beta,2) / 8.
    const double A = 0.3, L = 2.0 * M_PI;
    const auto u = sp::SpectralField2D::from_function(
        32, 32, L, L, [&](double x1, double) { return A * std::sin(2.0 * x1); });
    for (double beta : {0.0, 1.0}) {
        const auto cq = sol::conserved_quantities(u, beta);
        CHECK(cq.constraint_violation < 1e-10);
        REQUIRE(cq.hamiltonian.has_value());
        const double want = L * L * A * A * fdkp::symbol::m(beta, 2.0) / 8.0;
        CHECK(std::abs(*cq.hamiltonian - want) < 1e-10 * std::abs(want));
    }
    // Data living on the k1 = 0 column has no finite Hamiltonian.
    const auto bad = sp::SpectralField2D::from_function(
        32, 32, L, L, [&](double, double x2) { return std::sin(x2); });
    const auto cq = sol::conserved_quantities(bad, 1.0);
    CHECK(cq.constraint_violation > 0.9);
    CHECK(!cq.hamiltonian.has_value());
}

TEST_CASE("solver: x2-independent 2-D run equals the 1-D implementation") {
    const int n = 64;
    const double L = 8.0 * M_PI;
    auto cfg = small_cfg(n, L, 1.0 / 64.0);
    cfg.n2 = 4;
    auto profile = [&](double x) {
        const double k = 2.0 * M_PI / L;
        return 0.03 * (std::sin(2.0 * k * x) + 0.4 * std::cos(4.0 * k * x + 0.7));
    };
    auto st2 = sol::make_state(
        sp::SpectralField2D::from_function(n, 4, L, L, [&](double x1, double) { return profile(x1); }),
        cfg);
    const sol::Stepper stepper(cfg);
    std::vector<double> u1(n);
    for (int i = 0; i < n; ++i) u1[i] = profile(L * i / n);
    auto st1 = sol::make_state_1d(n, L, u1);
    for (int i = 0; i < 32; ++i) {
        stepper.advance(st2);
        sol::whitham_step(st1, cfg);
    }
    double sup = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < 4; ++j)
            sup = std::max(sup, std::abs(st2.field.values()[static_cast<std::size_t>(i) * 4 + j] -
                                         st1.u[i]));
    CHECK(sup < 1e-9);
}

TEST_CASE("solver: KdV long-wave model shadows Whitham for long small waves") {
    // On a long torus with amp 1e-2 data the two multipliers differ by
    // O(xi^5) over the occupied band, so the trajectories stay close.
    const int n = 128;
    const double L = 32.0 * M_PI;
    auto cfg = small_cfg(n, L, 1.0 / 64.0);
    std::vector<double> u0(n);
    for (int i = 0; i < n; ++i) u0[i] = 0.01 * std::sin(2.0 * M_PI * i / n);
    auto sw = sol::make_state_1d(n, L, u0);
    auto sk = sol::make_state_1d(n, L, u0);
    for (int i = 0; i < 128; ++i) {
        sol::whitham_step(sw, cfg, sol::Model1D::whitham);
        sol::whitham_step(sk, cfg, sol::Model1D::kdv_long_wave);
    }
    double sup = 0.0, amp = 0.0;
    for (int i = 0; i < n; ++i) {
        sup = std::max(sup, std::abs(sw.u[i] - sk.u[i]));
        amp = std::max(amp, std::abs(sw.u[i]));
    }
    CHECK(amp > 5e-3); // neither trajectory collapsed
    CHECK(sup < 1e-5);
}

TEST_CASE("solver: measured convergence order of both schemes") {
    const double T = 0.5, L = 8.0 * M_PI;
    const auto u0 = sp::gaussian_derivative_data(32, L, 0.15);
    for (auto scheme : {sol::Scheme::etdrk4, sol::Scheme::ifrk4}) {
        auto run_at = [&](double dt) {
            auto cfg = small_cfg(32, L, dt);
            cfg.scheme = scheme;
            auto st = sol::make_state(u0, cfg);
            const sol::Stepper stepper(cfg);
            for (int i = 0; i < static_cast<int>(std::lround(T / dt)); ++i) stepper.advance(st);
            return st.field;
        };
        const auto ref = run_at(1.0 / 256.0);
        const double e0 = sp::linf_distance(run_at(1.0 / 8.0), ref);
        const double e1 = sp::linf_distance(run_at(1.0 / 16.0), ref);
        CHECK(e0 > e1);
        CHECK(std::log2(e0 / e1) > 3.0); // fourth order, honest margin
    }
}

TEST_CASE("solver: the two schemes agree to integrator accuracy") {
    const double L = 8.0 * M_PI;
    const auto u0 = sp::gaussian_derivative_data(32, L, 0.1);
    auto cfg = small_cfg(32, L, 1.0 / 64.0);
    auto a = sol::make_state(u0, cfg);
    const sol::Stepper se(cfg);
    cfg.scheme = sol::Scheme::ifrk4;
    auto b = sol::make_state(u0, cfg);
    const sol::Stepper si(cfg);
    for (int i = 0; i < 16; ++i) {
        se.advance(a);
        si.advance(b);
    }
    CHECK(sp::linf_distance(a.field, b.field) < 1e-5);
    CHECK(sp::linf_distance(a.field, b.field) > 0.0); // genuinely different schemes
}

TEST_CASE("solver: the dealias mask is inert for deeply band-limited data") {
    // Each of the four ETD stages at most doubles the occupied band, so data
    // starting at |k_i| <= 1 ends the step within |k_i| <= 16 < kmax = 21: in
    // exact arithmetic the mask removes nothing.  The transform of the squared
    // grid values does leave ~1e-17 roundoff outside the product band (which
    // only the masked run zeroes), so agreement is at roundoff, not bitwise.
    const int n = 64;
    const double L = 2.0 * M_PI;
    std::vector<std::complex<double>> c(static_cast<std::size_t>(n) * n);
    c[1] = {0.0, -0.05};                              // k = (0, 1)
    c[static_cast<std::size_t>(n) - 1] = {0.0, 0.05}; // conjugate partner
    c[static_cast<std::size_t>(1) * n + 1] = {0.01, 0.02}; // k = (1, 1)
    c[static_cast<std::size_t>(n - 1) * n + (n - 1)] = {0.01, -0.02};
    const auto u0 = sp::SpectralField2D::from_coeffs(n, n, L, L, std::move(c));

    auto cfg = small_cfg(n, L, 1.0 / 128.0);
    auto a = sol::make_state(u0, cfg);
    const sol::Stepper masked(cfg);
    masked.advance(a);
    cfg.dealias = sol::Dealias::none;
    auto b = sol::make_state(u0, cfg);
    const sol::Stepper open(cfg);
    open.advance(b);
    CHECK(sp::linf_distance(a.field, b.field) < 1e-15);
}

TEST_CASE("solver: runaway amplitude raises blowup_error with the last good time") {
    const auto cfg = small_cfg(32, 2.0 * M_PI, 0.25);
    const auto u0 = sp::gaussian_derivative_data(32, 2.0 * M_PI, 30.0);
    auto st = sol::make_state(u0, cfg);
    const sol::Stepper stepper(cfg);
    bool threw = false;
    try {
        for (int i = 0; i < 200; ++i) stepper.advance(st);
    } catch (const sol::blowup_error& e) {
        threw = true;
        CHECK(e.last_good_time >= 0.0);
        CHECK(e.last_good_time < 50.0);
    }
    CHECK(threw);
}

TEST_CASE("solver: energy monitor over a completed ledger") {
    const auto cfg = small_cfg(64, 8.0 * M_PI, 1.0 / 64.0);
    auto st = sol::make_state(sp::gaussian_derivative_data(64, cfg.L1, 0.05), cfg);
    const sol::Stepper stepper(cfg);
    stepper.run(st, 32, 4);
    const auto rep = sol::energy_monitor(st.ledger, cfg.s);
    CHECK(rep.k_integral > 0.0);
    CHECK(rep.refined_lhs > 0.0);
    CHECK(rep.refined_rhs > 0.0);
    CHECK(rep.refined_ratio == doctest::Approx(rep.refined_lhs / rep.refined_rhs));
    CHECK(rep.implied_c >= 0.0);
    CHECK_THROWS_AS(sol::energy_monitor({}, 1.76), fdkp::domain_error);
}

TEST_CASE("solver: twin stability run") {
    const double L = 8.0 * M_PI;
    const auto cfg = small_cfg(64, L, 1.0 / 64.0);
    const auto u0a = sp::gaussian_derivative_data(64, L, 0.05);
    CHECK_THROWS_AS(sol::twin_run_l2_stability(u0a, u0a, cfg, 0.25), fdkp::domain_error);

    const auto pert = sp::random_hs_data(64, L, 3.0, 1.0, 5);
    const auto u0b = sp::add(u0a, pert, 1.0, 1e-4 * u0a.l2_norm() / pert.l2_norm());
    const auto rep = sol::twin_run_l2_stability(u0a, u0b, cfg, 0.25, 4);
    REQUIRE(!rep.times.empty());
    CHECK(rep.times.size() == rep.ratios.size());
    CHECK(rep.ratios.front() == doctest::Approx(1.0));
    CHECK(rep.sup_ratio >= 1.0 - 1e-12);
    CHECK(rep.K > 0.0);
    CHECK(rep.implied_c >= 0.0);
}

TEST_CASE("solver: Bona-Smith family is Cauchy with a positive rate") {
    const double L = 2.0 * M_PI;
    const auto cfg = small_cfg(64, L, 1.0 / 64.0);
    const auto u0 = sp::random_hs_data(64, L, 3.0, 0.04, 31);
    const auto rep = sol::bona_smith_convergence(u0, 2.0, {2, 4, 8}, cfg, 0.125, {0.0}, 4);
    REQUIRE(rep.pairs.size() == 2);
    CHECK(rep.pairs[0].n == 2);
    CHECK(rep.pairs[1].n == 4);
    CHECK(rep.pairs[0].diff_hsigma[0] > rep.pairs[1].diff_hsigma[0]); // converging
    CHECK(rep.rate_h0 > 0.5);
    CHECK_THROWS_AS(sol::bona_smith_convergence(u0, 2.0, {2, 5}, cfg, 0.125, {0.0}, 4),
                    fdkp::domain_error);
}

TEST_CASE("solver: argument validation") {
    const auto cfg = small_cfg(64, 8.0 * M_PI, 1.0 / 64.0);
    const auto wrong = sp::SpectralField2D::zero(32, 32, cfg.L1, cfg.L2);
    CHECK_THROWS_AS(sol::make_state(wrong, cfg), fdkp::domain_error);
    CHECK_THROWS_AS(sol::make_state_1d(3, 1.0, {0.0, 0.0, 0.0}), fdkp::domain_error);
    auto bad = cfg;
    bad.dt = 0.0;
    CHECK_THROWS_AS(sol::Stepper{bad}, fdkp::domain_error);
}
