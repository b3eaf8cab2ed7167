#include <doctest.h>

#include <fdkp/bump.hpp>
#include <fdkp/spectral.hpp>
#include <fdkp/symbol.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

// Spectral-layer oracles: Parseval ties the two representations together,
// trigonometric monomials give exact derivatives and projections, and the
// free propagator is checked against its defining unitarity/group laws.

namespace sp = fdkp::spectral;
using cplx = std::complex<double>;

namespace {

// Deterministic random field values on an n x n grid.
std::vector<double> noise(int n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> v(static_cast<std::size_t>(n) * n);
    for (auto& x : v) x = u(gen);
    return v;
}

} // namespace

TEST_CASE("spectral: transform roundtrip and Parseval") {
    const int n = 32;
    const double L = 5.0;
    const auto f = sp::SpectralField2D::from_values(n, n, L, L, noise(n, 11));

    // values -> coeffs -> values.
    const auto g = sp::SpectralField2D::from_coeffs(n, n, L, L, f.coeffs());
    CHECK(sp::linf_distance(f, g) < 1e-13);

    // cell_area sum v^2 == L1 L2 sum |c|^2.
    double sum_c2 = 0.0;
    for (const auto& c : f.coeffs()) sum_c2 += std::norm(c);
    CHECK(std::abs(f.l2_norm() * f.l2_norm() - L * L * sum_c2) < 1e-12 * L * L * sum_c2);

    CHECK(f.hermitian_defect() < 1e-14);
    CHECK_THROWS_AS(sp::SpectralField2D::from_values(n, n, L, L, std::vector<double>(7)),
                    fdkp::domain_error);
    CHECK_THROWS_AS(sp::SpectralField2D::from_values(24, n, L, L, noise(n, 1)),
                    fdkp::domain_error); // not a power of two
}

TEST_CASE("spectral: norms of a pure mode") {
    // u = sin(2 pi 3 x / L): l2 = sqrt(L^2/2), linf = 1, l1 = (2/pi) L^2.
    const int n = 64;
    const double L = 2.0 * M_PI;
    const auto u = sp::SpectralField2D::from_function(
        n, n, L, L, [&](double x1, double) { return std::sin(3.0 * x1); });
    CHECK(std::abs(u.l2_norm() - std::sqrt(L * L / 2.0)) < 1e-12);
    CHECK(std::abs(u.linf_norm() - 1.0) < 1e-12); // grid hits the extrema (n mult of 4k)
    // |sin| has kinks, so the grid sum is only O(h^2) accurate here.
    CHECK(std::abs(u.l1_norm() - 2.0 / M_PI * L * L) < 0.2);
    // Sobolev: single frequency xi1 = 3, |c| = 1/2 in each of two modes.
    const double w = std::pow(1.0 + 9.0, 1.76 / 2.0);
    CHECK(std::abs(u.sobolev_norm(1.76) - w * std::sqrt(L * L / 2.0)) < 1e-11);
    CHECK_THROWS_AS(u.lp_norm(0.5), fdkp::domain_error);
}

TEST_CASE("spectral: derivatives of trigonometric data are exact") {
    const int n = 32;
    const double L1 = 2.0 * M_PI, L2 = M_PI;
    const auto u = sp::SpectralField2D::from_function(n, n, L1, L2, [&](double x1, double x2) {
        return std::sin(3.0 * x1) * std::cos(4.0 * x2); // xi2 = 2 pi 2 / L2 = 4
    });
    const auto d1 = u.derivative(1);
    const auto d2 = u.derivative(2);
    const auto d1_ref = sp::SpectralField2D::from_function(
        n, n, L1, L2, [&](double x1, double x2) { return 3.0 * std::cos(3.0 * x1) * std::cos(4.0 * x2); });
    const auto d2_ref = sp::SpectralField2D::from_function(
        n, n, L1, L2, [&](double x1, double x2) { return -4.0 * std::sin(3.0 * x1) * std::sin(4.0 * x2); });
    CHECK(sp::linf_distance(d1, d1_ref) < 1e-11);
    CHECK(sp::linf_distance(d2, d2_ref) < 1e-11);
    CHECK_THROWS_AS(u.derivative(3), fdkp::domain_error);

    // apply_multiplier with |xi|^2 is minus the Laplacian.
    const auto lap = u.apply_multiplier(
        [](double xi1, double xi2) -> cplx { return xi1 * xi1 + xi2 * xi2; });
    const auto lap_ref = sp::add(d1.derivative(1), d2.derivative(2), -1.0, -1.0);
    CHECK(sp::linf_distance(lap, lap_ref) < 1e-10);
}

TEST_CASE("spectral: projector symbols partition unity") {
    for (double s : {0.0, 0.3, 0.9, 1.7, 3.2, 10.0}) {
        const double lo = sp::DyadicProjector{2.0, sp::ProjKind::low_pass}.symbol(s);
        const double hi = sp::DyadicProjector{2.0, sp::ProjKind::high_pass}.symbol(s);
        CHECK(std::abs(lo + hi - 1.0) < 1e-15);
        // Annuli telescope: sum_j rho(s / 2^j) == chi(s/2^J) - chi(2s).
        double acc = 0.0;
        for (int j = 0; j <= 6; ++j)
            acc += sp::DyadicProjector{std::pow(2.0, j), sp::ProjKind::annulus}.symbol(s);
        const double want = fdkp::bump::chi(s / 64.0) - fdkp::bump::chi(2.0 * s);
        CHECK(std::abs(acc - want) < 1e-14);
    }
    // A low-pass at lambda beyond the grid's largest |xi| is the identity.
    const auto f = sp::SpectralField2D::from_values(16, 16, 3.0, 3.0, noise(16, 5));
    const double ximax = M_SQRT2 * M_PI * 16 / 3.0;
    const auto p = sp::project(f, sp::DyadicProjector{ximax, sp::ProjKind::low_pass});
    CHECK(sp::linf_distance(f, p) < 1e-13);
}

TEST_CASE("spectral: free propagator is unitary and a group") {
    const int n = 32;
    const double L = 7.0;
    const auto f = sp::SpectralField2D::from_values(n, n, L, L, noise(n, 23));

    const auto g = sp::propagate_linear(f, 1.0, 0.0);
    CHECK(sp::linf_distance(f, g) < 1e-13); // t = 0 is the identity

    const auto u1 = sp::propagate_linear(f, 1.0, 0.7);
    CHECK(std::abs(u1.l2_norm() - f.l2_norm()) < 1e-12 * f.l2_norm()); // isometry
    CHECK(u1.hermitian_defect() < 1e-13);                             // stays real

    const auto u2 = sp::propagate_linear(u1, 1.0, 1.3);
    const auto u12 = sp::propagate_linear(f, 1.0, 2.0);
    CHECK(sp::l2_distance(u2, u12) < 1e-12 * f.l2_norm()); // group law

    // The sgn(xi1) = 0 column (k1 = 0) must ride along unchanged (up to the
    // Hermitian symmetrisation every reconstruction applies).
    const auto& cf = f.coeffs();
    const auto& cu = u1.coeffs();
    for (int j = 0; j < n; ++j) CHECK(std::abs(cu[j] - cf[j]) < 1e-15);
}

TEST_CASE("spectral: admissible exponent pairs") {
    const double inf = std::numeric_limits<double>::infinity();
    CHECK(sp::MixedNormSpec{4.0, 4.0, 1.0}.admissible());
    CHECK(sp::MixedNormSpec{8.0, 8.0 / 3.0, 1.0}.admissible());
    CHECK(sp::MixedNormSpec{inf, 2.0, 1.0}.admissible());
    CHECK(!sp::MixedNormSpec{4.0, 3.0, 1.0}.admissible());  // off the scaling line
    CHECK(!sp::MixedNormSpec{2.0, inf, 1.0}.admissible());  // endpoint excluded
    CHECK(!sp::MixedNormSpec{1.5, 1.2, 1.0}.admissible());
}

TEST_CASE("spectral: time Lebesgue norms on constant samples") {
    // For constant y(t) = y0: ||y||_{L^q[0,T]} = y0 T^{1/q}; q = inf gives y0.
    const std::vector<double> ys(9, 2.5); // 9 samples, dt = 0.125, T = 1
    CHECK(std::abs(sp::time_lq(ys, 0.125, 4.0) - 2.5) < 1e-12);
    CHECK(sp::time_lq(ys, 0.125, std::numeric_limits<double>::infinity()) == 2.5);
    // Linear ramp y = t on [0,1], q = 2: norm 1/sqrt(3), trapezoid error O(dt^2).
    std::vector<double> ramp(129);
    for (int i = 0; i <= 128; ++i) ramp[i] = i / 128.0;
    CHECK(std::abs(sp::time_lq(ramp, 1.0 / 128.0, 2.0) - 1.0 / std::sqrt(3.0)) < 1e-4);
}

TEST_CASE("spectral: canonical data builders") {
    const int n = 64;
    const double L = 8.0 * M_PI;

    const auto psi = sp::gaussian_derivative_data(n, L, 0.08);
    CHECK(std::abs(psi.linf_norm() - 0.08) < 1e-14);
    CHECK(std::abs(psi.coeffs()[0]) == 0.0); // exact zero mass from d/dx1
    CHECK(psi.hermitian_defect() < 1e-15);

    const auto ra = sp::random_hs_data(n, L, 3.0, 0.05, 42);
    const auto rb = sp::random_hs_data(n, L, 3.0, 0.05, 42);
    CHECK(sp::linf_distance(ra, rb) == 0.0); // bit-reproducible
    CHECK(std::abs(ra.linf_norm() - 0.05) < 1e-14);
    CHECK(std::abs(ra.coeffs()[0]) == 0.0);
    CHECK(ra.hermitian_defect() < 1e-15);
    // Band limit: nothing beyond |ktilde| = (n-1)/3 = 21.
    const int kcap = (n - 1) / 3;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (std::abs(ra.ktilde1(i)) > kcap || std::abs(ra.ktilde2(j)) > kcap)
                CHECK(std::abs(ra.coeffs()[static_cast<std::size_t>(i) * n + j]) == 0.0);
    // Different seeds differ.
    CHECK(sp::linf_distance(ra, sp::random_hs_data(n, L, 3.0, 0.05, 43)) > 1e-6);
}

TEST_CASE("spectral: field binary IO roundtrip") {
    const std::string path = "test_field_io.bin";
    const auto f = sp::SpectralField2D::from_values(16, 16, 3.5, 2.5, noise(16, 9));
    sp::write_field(path, f, 1.75);
    double t = 0.0;
    const auto g = sp::read_field(path, &t);
    CHECK(t == 1.75);
    CHECK(g.n1() == 16);
    CHECK(g.L1() == 3.5);
    CHECK(g.L2() == 2.5);
    CHECK(sp::linf_distance(f, g) == 0.0); // bit-exact payload
    std::remove(path.c_str());
    CHECK_THROWS_AS(sp::read_field("does_not_exist.bin"), std::runtime_error);
}

TEST_CASE("spectral: dispersive sup experiment shape") {
    const auto res = sp::dispersive_sup_experiment(1.0, 1.0, {0.0, 0.5, 1.0}, 64, 32.0);
    REQUIRE(res.rows.size() == 3);
    CHECK(res.f_l1 > 0.0);
    CHECK(res.f_l2 > 0.0);
    CHECK(std::abs(res.predicted - std::pow(fdkp::symbol::bracket(1.0), 1.5) /
                                       fdkp::symbol::bracket(1.0)) < 1e-12);
    CHECK(res.rows[0].t == 0.0);
    CHECK(res.rows[0].sup > res.rows[2].sup); // the packet genuinely spreads
    for (const auto& r : res.rows) CHECK(std::isfinite(r.ratio));
}

TEST_CASE("spectral: strichartz experiment sanity") {
    const sp::MixedNormSpec spec{4.0, 4.0, 1.0};
    const auto res = sp::strichartz_experiment(1.0, 1.0, spec, 8, 64, 32.0);
    CHECK(res.norm > 0.0);
    CHECK(res.denom > 0.0);
    CHECK(std::abs(res.ratio - res.norm / res.denom) < 1e-12 * res.ratio);
    const sp::MixedNormSpec bad{4.0, 3.0, 1.0};
    CHECK_THROWS_AS(sp::strichartz_experiment(1.0, 1.0, bad, 8, 64, 32.0), fdkp::domain_error);
}
