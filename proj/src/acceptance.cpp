#include <fdkp/acceptance.hpp>

#include <fdkp/besselasym.hpp>
#include <fdkp/oscint.hpp>
#include <fdkp/solver.hpp>
#include <fdkp/spectral.hpp>
#include <fdkp/symbol.hpp>
#include <fdkp/util.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <random>

namespace fdkp::acceptance {

namespace {

using cplx = std::complex<double>;
constexpr cplx I{0.0, 1.0};
using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

#if defined(__GNUC__)
__attribute__((format(printf, 1, 2)))
#endif
std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

} // namespace

// 1. |j_plus_direct - j_plus_identity| < 1e-8 at 100 seeded points in all
//    four sign quadrants, |x| in [1, 200]; the F and F^pm factorisations hold
//    to 1e-8 on a 20 x 11 (r, a) grid.  quick: 28 points, 8 x 6 grid.
CriterionResult criterion1_bessel_identities(bool quick) {
    CriterionResult res;
    res.id = 1;
    res.name = "bessel-identities";
    const auto t0 = clock_type::now();
    try {
        const double tol_cmp = 1e-8, tol_quad = 1e-10;
        std::mt19937_64 gen(20240801);
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        const int per_quad = quick ? 7 : 25;

        double worst_pt = 0.0;
        int npts = 0;
        for (int qx : {1, -1})
            for (int qy : {1, -1})
                for (int k = 0; k < per_quad; ++k) {
                    const double r = std::exp(std::log(200.0) * u01(gen)); // [1, 200]
                    const double ph = (0.05 + 0.90 * u01(gen)) * M_PI_2;
                    const bessel::PlanePoint x(qx * r * std::cos(ph), qy * r * std::sin(ph));
                    const double d =
                        std::abs(bessel::j_plus_direct(x, tol_quad) - bessel::j_plus_identity(x, tol_quad));
                    worst_pt = std::max(worst_pt, d);
                    ++npts;
                }

        double worst_F = 0.0, worst_Fpm = 0.0;
        const auto rg = util::geomspace(1.0, 200.0, quick ? 8 : 20);
        const auto ag = util::linspace(0.0, 1.0, quick ? 6 : 11);
        for (double r : rg)
            for (double a : ag) {
                const cplx fap = bessel::f_a(+1, r, a, tol_quad);
                const cplx fam = bessel::f_a(-1, r, a, tol_quad);
                worst_F = std::max(worst_F, std::abs(bessel::F(r, a, tol_quad) -
                                                     (std::exp(I * (a * r)) * fap +
                                                      std::exp(-I * (a * r)) * fam)));
                for (int sign : {1, -1}) {
                    const cplx f1 = bessel::f_a(sign, r, 1.0, tol_quad);
                    const cplx fa = sign > 0 ? fap : fam;
                    const cplx rhs = 2.0 * std::exp(I * (sign * r)) * f1 -
                                     2.0 * std::exp(I * (sign * a * r)) * fa;
                    worst_Fpm = std::max(worst_Fpm, std::abs(bessel::F_pm(sign, r, a, tol_quad) - rhs));
                }
            }

        res.pass = worst_pt < tol_cmp && worst_F < tol_cmp && worst_Fpm < tol_cmp;
        res.detail.push_back(fmt("max |direct - identity| = %.3e over %d points (tol 1e-8)",
                                 worst_pt, npts));
        res.detail.push_back(fmt("max F-identity defect   = %.3e on %zux%zu grid (tol 1e-8)",
                                 worst_F, rg.size(), ag.size()));
        res.detail.push_back(fmt("max Fpm-identity defect = %.3e (tol 1e-8)", worst_Fpm));
    } catch (const std::exception& e) {
        res.pass = false;
        res.detail.push_back(std::string("aborted: ") + e.what());
    }
    res.seconds = seconds_since(t0);
    return res;
}

// 2. Weighted decay sups of f_a^pm: sup r^{1/2}|f| and r^{3/2}|d_r f| over
//    r in [1, 1e4] (log grid), a in {0, .25, .5, 1/sqrt2, .9, 1} are finite
//    and grow by < 20% when the grid extends from r <= 1e2 to r <= 1e4.
CriterionResult criterion2_bessel_decay(bool quick) {
    CriterionResult res;
    res.id = 2;
    res.name = "bessel-decay";
    const auto t0 = clock_type::now();
    try {
        const std::vector<double> a_grid{0.0, 0.25, 0.5, 1.0 / std::sqrt(2.0), 0.9, 1.0};
        const auto r_grid = util::geomspace(1.0, 1e4, quick ? 41 : 101);
        res.pass = true;
        for (int sign : {1, -1}) {
            const auto rep = bessel::verify_fa_decay(sign, a_grid, r_grid, 1e-10, 1e2);
            const double grow_f = rep.sup_f / rep.sup_f_lo - 1.0;
            const double grow_df = rep.sup_df / rep.sup_df_lo - 1.0;
            const bool ok = rep.all_finite && grow_f < 0.20 && grow_df < 0.20;
            res.pass = res.pass && ok;
            res.detail.push_back(
                fmt("sign %+d: sup r^1/2|f| = %.6f (r<=1e2: %.6f, +%.2f%%), "
                    "sup r^3/2|f'| = %.6f (+%.2f%%)%s",
                    sign, rep.sup_f, rep.sup_f_lo, 100.0 * grow_f, rep.sup_df, 100.0 * grow_df,
                    ok ? "" : "  <-- FAIL"));
        }
    } catch (const std::exception& e) {
        res.pass = false;
        res.detail.push_back(std::string("aborted: ") + e.what());
    }
    res.seconds = seconds_since(t0);
    return res;
}

// 3. kernel_radial vs kernel_2d on the 3x3x5 lattice (both beta): absolute
//    agreement < 1e-6 and |Im| < 1e-8 everywhere.  quick: 2x3 lattice slice.
CriterionResult criterion3_kernel_cross_validation(bool quick) {
    CriterionResult res;
    res.id = 3;
    res.name = "kernel-cross-validation";
    const auto t0 = clock_type::now();
    try {
        const std::vector<double> lambdas{0.5, 1.0, 2.0};
        const std::vector<double> ts = quick ? std::vector<double>{0.5, 3.0}
                                             : std::vector<double>{0.5, 3.0, 20.0};
        const std::vector<std::pair<double, double>> xs =
            quick ? std::vector<std::pair<double, double>>{{0.0, 0.0}, {3.0, 2.0}, {-5.0, 1.0}}
                  : std::vector<std::pair<double, double>>{
                        {0.0, 0.0}, {3.0, 2.0}, {-5.0, 1.0}, {0.0, 4.0}, {7.0, -2.0}};
        double worst_diff = 0.0, worst_im = 0.0;
        int cells = 0;
        for (double beta : {0.0, 1.0})
            for (double lam : lambdas)
                for (double t : ts)
                    for (const auto& [x1, x2] : xs) {
                        const oscint::KernelQuery q{beta, lam, t, bessel::PlanePoint(x1, x2)};
                        const cplx a = oscint::kernel_radial(q, 1e-9);
                        const cplx b = oscint::kernel_2d(q, 1e-9);
                        worst_diff = std::max(worst_diff, std::abs(a - b));
                        worst_im = std::max(worst_im, std::max(std::abs(a.imag()), std::abs(b.imag())));
                        ++cells;
                    }
        res.pass = worst_diff < 1e-6 && worst_im < 1e-8;
        res.detail.push_back(fmt("max |radial - 2d| = %.3e over %d queries (tol 1e-6)",
                                 worst_diff, cells));
        res.detail.push_back(fmt("max |Im kernel|   = %.3e (tol 1e-8)", worst_im));
    } catch (const std::exception& e) {
        res.pass = false;
        res.detail.push_back(std::string("aborted: ") + e.what());
    }
    res.seconds = seconds_since(t0);
    return res;
}

// 4. Dispersive decay: for beta in {0,1}, lambda in {1/4, 1, 4}, the log-log
//    slope of sup_x |I_{L,t}| over t in [10, 1e3] must be -1 +- 0.1, and the
//    normalised constants sup * t / (<sqrt(b)L>^{-1}<L>^{3/2}) must track the
//    predicted envelope across lambda within an overall factor of 3 (the
//    absolute prefactor is not pinned by theory, so only its lambda-uniformity
//    is testable).  The lambda = 1/4 cells are still pre-asymptotic at t = 1e3
//    (the stationary-phase correction decays like (0.015 t)^{-1/2}), so this
//    criterion is expected to fail there; the supplementary late-window rows
//    below document the onset of the t^{-1} regime.
//
//    The sup search runs in ray mode: it costs a third of the full direction
//    sweep (which is what keeps this criterion inside its runtime budget),
//    and at large t it is also the sharper estimator -- the caustic peak
//    narrows in angle and starts slipping between the full sweep's direction
//    samples (measured: rays find a 7% higher sup at t = 3e4), while the
//    peak ray itself stays in the ray set.
CriterionResult criterion4_dispersive_decay(bool quick) {
    CriterionResult res;
    res.id = 4;
    res.name = "dispersive-decay";
    const auto t0 = clock_type::now();
    try {
        const std::vector<double> lambdas{0.25, 1.0, 4.0};
        const int nt = quick ? 4 : 6;
        res.pass = true;
        for (double beta : {0.0, 1.0}) {
            const auto rows = oscint::decay_table(beta, lambdas, 10.0, 1000.0, nt,
                                                  oscint::SweepMode::rays3, 1e-6);
            std::vector<double> consts;
            std::vector<double> slopes;
            for (std::size_t li = 0; li < lambdas.size(); ++li) {
                std::vector<double> tv, sv, late_ratios;
                for (int k = 0; k < nt; ++k) {
                    const auto& r = rows[li * nt + k];
                    tv.push_back(r.t);
                    sv.push_back(r.sup);
                    if (k >= nt / 2) late_ratios.push_back(r.ratio);
                }
                slopes.push_back(util::fit_loglog(tv, sv).slope);
                consts.push_back(util::median(late_ratios));
            }
            const double c_spread = *std::max_element(consts.begin(), consts.end()) /
                                    *std::min_element(consts.begin(), consts.end());
            const bool ok_track = c_spread <= 3.0;
            for (std::size_t li = 0; li < lambdas.size(); ++li) {
                const bool ok_slope = std::abs(slopes[li] + 1.0) <= 0.1;
                res.pass = res.pass && ok_slope;
                res.detail.push_back(
                    fmt("beta=%g lambda=%-4g slope=%+.3f (want -1+-0.1 %s)  const=%.3f", beta,
                        lambdas[li], slopes[li], ok_slope ? "ok" : "FAIL", consts[li]));
            }
            res.pass = res.pass && ok_track;
            res.detail.push_back(fmt("beta=%g const tracking across lambda: x%.2f (want <= 3) %s",
                                     beta, c_spread, ok_track ? "ok" : "FAIL"));
        }
        if (!quick) {
            // Evidence, not a gate: lambda = 1/4 slope over t in [2e3, 3e4].
            for (double beta : {0.0, 1.0}) {
                const auto ts = util::geomspace(2e3, 3e4, 3);
                std::vector<double> sv;
                for (double t : ts)
                    sv.push_back(
                        oscint::kernel_sup(beta, 0.25, t, oscint::SweepMode::rays3, 1e-6).sup);
                res.detail.push_back(
                    fmt("late-window evidence beta=%g lambda=1/4: slope over [2e3,3e4] = %+.3f",
                        beta, util::fit_loglog(ts, sv).slope));
            }
        }
    } catch (const std::exception& e) {
        res.pass = false;
        res.detail.push_back(std::string("aborted: ") + e.what());
    }
    res.seconds = seconds_since(t0);
    return res;
}

// 5. Strichartz ratios for (q,r) = (4,4) and (8, 8/3) vary by less than a
//    factor of 3 across lambda in {1, 2, 4, 8}, for both beta.  Grid 512^2,
//    L = 64, T = 4, 129 time samples (quick: 256^2, 65 samples).
CriterionResult criterion5_strichartz(bool quick) {
    CriterionResult res;
    res.id = 5;
    res.name = "strichartz";
    const auto t0 = clock_type::now();
    try {
        const int n = quick ? 256 : 512;
        const int nt = quick ? 64 : 128;
        const double L = 64.0;
        const std::vector<double> lambdas{1.0, 2.0, 4.0, 8.0};
        res.pass = true;
        for (double beta : {0.0, 1.0})
            for (const auto& qr : std::vector<std::pair<double, double>>{{4.0, 4.0}, {8.0, 8.0 / 3.0}}) {
                const spectral::MixedNormSpec spec{qr.first, qr.second, 4.0};
                double lo = 1e300, hi = 0.0;
                std::string line =
                    fmt("beta=%g (q,r)=(%g,%.4g): ratios", beta, qr.first, qr.second);
                for (double lam : lambdas) {
                    const auto r = spectral::strichartz_experiment(beta, lam, spec, nt, n, L);
                    lo = std::min(lo, r.ratio);
                    hi = std::max(hi, r.ratio);
                    line += fmt(" %.4f", r.ratio);
                }
                const bool ok = hi / lo < 3.0;
                res.pass = res.pass && ok;
                res.detail.push_back(line + fmt("  spread x%.2f (want < 3) %s", hi / lo,
                                                ok ? "ok" : "FAIL"));
            }
    } catch (const std::exception& e) {
        res.pass = false;
        res.detail.push_back(std::string("aborted: ") + e.what());
    }
    res.seconds = seconds_since(t0);
    return res;
}

// 6. Symbol bounds on 1e4 log points in [1e-3, 1e3]: two-sided comparability
//    of m' with <sqrt(b)r><r>^{-1/2} and of |m''| with r<sqrt(b)r><r>^{-5/2},
//    each with C/c <= 10; f_1 in (1, 3]; f_0 == -1 exactly.
CriterionResult criterion6_symbol_bounds(bool quick) {
    (void)quick; // the full grid runs in well under a second
    CriterionResult res;
    res.id = 6;
    res.name = "symbol-bounds";
    const auto t0 = clock_type::now();
    try {
        const auto rs = util::geomspace(1e-3, 1e3, 10000);
        bool f0_exact = true;
        double f1_min = 1e300, f1_max = -1e300;
        double q_lo[2][2] = {{1e300, 1e300}, {1e300, 1e300}};
        double q_hi[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
        for (double r : rs) {
            f0_exact = f0_exact && symbol::f_beta_ratio(0.0, r) == -1.0;
            const double f1 = symbol::f_beta_ratio(1.0, r);
            f1_min = std::min(f1_min, f1);
            f1_max = std::max(f1_max, f1);
            for (int b = 0; b < 2; ++b) {
                const double beta = b;
                const double pred1 =
                    symbol::bracket(std::sqrt(beta) * r) / std::sqrt(symbol::bracket(r));
                const double q1 = symbol::m_prime(beta, r) / pred1;
                const double pred2 = r * symbol::bracket(std::sqrt(beta) * r) *
                                     std::pow(symbol::bracket(r), -2.5);
                const double q2 = std::abs(symbol::m_double_prime(beta, r)) / pred2;
                q_lo[b][0] = std::min(q_lo[b][0], q1);
                q_hi[b][0] = std::max(q_hi[b][0], q1);
                q_lo[b][1] = std::min(q_lo[b][1], q2);
                q_hi[b][1] = std::max(q_hi[b][1], q2);
            }
        }
        const bool f1_ok = f1_min > 1.0 && f1_max <= 3.0;
        bool ratios_ok = true;
        for (int b = 0; b < 2; ++b)
            for (int d = 0; d < 2; ++d) {
                const double spread = q_hi[b][d] / q_lo[b][d];
                ratios_ok = ratios_ok && spread <= 10.0;
                res.detail.push_back(fmt("beta=%d m%s/pred in [%.4f, %.4f], C/c = %.3f (want <= 10)",
                                         b, d == 0 ? "'" : "''", q_lo[b][d], q_hi[b][d], spread));
            }
        res.detail.push_back(fmt("f_1 range (%.6f, %.6f] (want within (1, 3]); f_0 == -1 %s",
                                 f1_min, f1_max, f0_exact ? "exactly" : "VIOLATED"));
        res.pass = f0_exact && f1_ok && ratios_ok;
    } catch (const std::exception& e) {
        res.pass = false;
        res.detail.push_back(std::string("aborted: ") + e.what());
    }
    res.seconds = seconds_since(t0);
    return res;
}

// 7. Solver correctness at the reference resolution (128^2, L = 8pi,
//    dt = 1/256): relative L^2 drift < 1e-8 and relative Hamiltonian drift
//    < 1e-6 over t in [0,1] for both beta; an x2-independent 2-D run matches
//    the 1-D Whitham oracle to 1e-8 in sup norm; dt-halving at 64^2 shows
//    convergence order >= 3 against a dt = 1/1024 reference.
CriterionResult criterion7_solver_correctness(bool quick) {
    CriterionResult res;
    res.id = 7;
    res.name = "solver-correctness";
    const auto t0 = clock_type::now();
    try {
        res.pass = true;

        for (double beta : {0.0, 1.0}) {
            solver::SolverConfig cfg;
            cfg.beta = beta;
            const auto u0 = spectral::gaussian_derivative_data(cfg.n1, cfg.L1, 0.08);
            auto st = solver::make_state(u0, cfg);
            const solver::Stepper sp(cfg);
            sp.run(st, quick ? 128 : 256, 16);
            double l2_drift = 0.0, h_drift = 0.0;
            const double l2_0 = st.ledger.front().l2;
            const double h_0 = st.ledger.front().hamiltonian.value();
            for (const auto& e : st.ledger) {
                l2_drift = std::max(l2_drift, std::abs(e.l2 - l2_0) / l2_0);
                h_drift = std::max(h_drift, std::abs(e.hamiltonian.value() - h_0) /
                                                std::max(std::abs(h_0), 1e-12));
            }
            const bool ok = l2_drift < 1e-8 && h_drift < 1e-6;
            res.pass = res.pass && ok;
            res.detail.push_back(fmt(
                "beta=%g: rel L2 drift %.3e (tol 1e-8), rel Hamiltonian drift %.3e (tol 1e-6) %s",
                beta, l2_drift, h_drift, ok ? "ok" : "FAIL"));
        }

        // x2-independent 2-D run vs the 1-D Whitham oracle.
        for (double beta : {0.0, 1.0}) {
            solver::SolverConfig cfg;
            cfg.beta = beta;
            cfg.n1 = 256;
            cfg.n2 = 4;
            const int nsteps = quick ? 64 : 128; // T = nsteps * dt
            auto profile = [&](double x) {
                return 0.05 * (std::sin(0.5 * x) + 0.5 * std::sin(x + 0.3) +
                               0.3 * std::cos(0.75 * x - 1.0));
            };
            const auto u2d0 = spectral::SpectralField2D::from_function(
                cfg.n1, cfg.n2, cfg.L1, cfg.L2, [&](double x1, double) { return profile(x1); });
            auto st2 = solver::make_state(u2d0, cfg);
            const solver::Stepper sp(cfg);
            for (int k = 0; k < nsteps; ++k) sp.advance(st2);

            std::vector<double> u1(cfg.n1);
            for (int i = 0; i < cfg.n1; ++i) u1[i] = profile(cfg.L1 * i / cfg.n1);
            auto st1 = solver::make_state_1d(cfg.n1, cfg.L1, u1);
            for (int k = 0; k < nsteps; ++k) solver::whitham_step(st1, cfg);

            double d = 0.0;
            for (int i = 0; i < cfg.n1; ++i)
                for (int j = 0; j < cfg.n2; ++j)
                    d = std::max(d, std::abs(st2.field.values()[static_cast<std::size_t>(i) * cfg.n2 + j] -
                                             st1.u[i]));
            const bool ok = d < 1e-8;
            res.pass = res.pass && ok;
            res.detail.push_back(fmt("beta=%g: 2-D vs Whitham oracle sup diff %.3e (tol 1e-8) %s",
                                     beta, d, ok ? "ok" : "FAIL"));
        }

        // Temporal convergence order.
        {
            solver::SolverConfig cfg;
            cfg.n1 = cfg.n2 = 64;
            const auto u0 = spectral::gaussian_derivative_data(64, cfg.L1, 0.2);
            const double T = 0.5;
            const double dt_ref = quick ? 1.0 / 512.0 : 1.0 / 1024.0;
            const std::vector<double> dts = quick
                                                ? std::vector<double>{1.0 / 16, 1.0 / 32, 1.0 / 64}
                                                : std::vector<double>{1.0 / 32, 1.0 / 64, 1.0 / 128};
            auto run_to_T = [&](double dt) {
                solver::SolverConfig c = cfg;
                c.dt = dt;
                auto st = solver::make_state(u0, c);
                const solver::Stepper sp(c);
                const int ns = static_cast<int>(std::lround(T / dt));
                for (int k = 0; k < ns; ++k) sp.advance(st);
                return st.field;
            };
            const auto ref = run_to_T(dt_ref);
            std::vector<double> errs;
            for (double dt : dts) errs.push_back(spectral::linf_distance(run_to_T(dt), ref));
            const double o1 = std::log2(errs[0] / errs[1]);
            const double o2 = std::log2(errs[1] / errs[2]);
            const bool ok = std::min(o1, o2) >= 3.0;
            res.pass = res.pass && ok;
            res.detail.push_back(fmt("dt-halving orders %.2f, %.2f (want >= 3) %s  "
                                     "[errors %.3e %.3e %.3e]",
                                     o1, o2, ok ? "ok" : "FAIL", errs[0], errs[1], errs[2]));
        }
    } catch (const std::exception& e) {
        res.pass = false;
        res.detail.push_back(std::string("aborted: ") + e.what());
    }
    res.seconds = seconds_since(t0);
    return res;
}

// 8. Well-posedness phenomenology.  Twin runs (1e-3 relative L^2
//    perturbation, T = 1): the Gronwall quotient's implied c is stable to
//    +-20% under dt in {1/128, 1/256}.  Bona-Smith (H^2-type data on 256^2,
//    L = 2pi, T = 1/4): sup_t ||u_n - u_2n||_2 decreases monotonically in n
//    and the fitted H^0 / H^1 Cauchy rates match s - sigma = 2, 1 to +-0.3.
CriterionResult criterion8_wellposedness(bool quick) {
    CriterionResult res;
    res.id = 8;
    res.name = "wellposedness";
    const auto t0 = clock_type::now();
    try {
        res.pass = true;

        { // twin-run Gronwall stability
            const int n = 128;
            const double L = 8.0 * M_PI, T = quick ? 0.5 : 1.0;
            const auto u0a = spectral::gaussian_derivative_data(n, L, 0.08);
            auto phi = spectral::SpectralField2D::from_function(n, n, L, L, [&](double x1, double x2) {
                const double d1 = x1 - 0.55 * L, d2 = x2 - 0.62 * L, w = L / 12.0;
                return std::exp(-(d1 * d1 + d2 * d2) / (2.0 * w * w));
            });
            auto pert = phi.derivative(1);
            const double scale = 1e-3 * u0a.l2_norm() / pert.l2_norm();
            const auto u0b = spectral::add(u0a, pert, 1.0, scale);

            std::vector<double> cs;
            for (double dt : {1.0 / 128.0, 1.0 / 256.0}) {
                solver::SolverConfig cfg;
                cfg.dt = dt;
                const auto rep = solver::twin_run_l2_stability(u0a, u0b, cfg, T, 8);
                cs.push_back(rep.implied_c);
                res.detail.push_back(fmt("twin dt=1/%-4.0f: sup ratio %.5f, K=%.4f, implied c=%.5f",
                                         1.0 / dt, rep.sup_ratio, rep.K, rep.implied_c));
            }
            const bool ok = std::abs(cs[0] - cs[1]) <= 0.2 * std::max({cs[0], cs[1], 1e-3});
            res.pass = res.pass && ok;
            res.detail.push_back(fmt("implied-c dt stability: |%.5f - %.5f| within 20%% %s",
                                     cs[0], cs[1], ok ? "ok" : "FAIL"));
        }

        { // Bona-Smith convergence of the regularised family
            const int n = quick ? 128 : 256;
            const double s_data = 2.0;
            solver::SolverConfig cfg;
            cfg.n1 = cfg.n2 = n;
            cfg.L1 = cfg.L2 = 2.0 * M_PI;
            cfg.dt = quick ? 1.0 / 128.0 : 1.0 / 256.0;
            const auto u0 = spectral::random_hs_data(n, cfg.L1, s_data + 1.0, 0.04, 7150);
            const std::vector<int> n_list = quick ? std::vector<int>{2, 4, 8, 16}
                                                  : std::vector<int>{2, 4, 8, 16, 32};
            const std::vector<double> sigmas{0.0, 1.0};
            const auto rep =
                solver::bona_smith_convergence(u0, s_data, n_list, cfg, 0.25, sigmas, 8);

            bool mono = true;
            for (std::size_t i = 0; i + 1 < rep.pairs.size(); ++i)
                mono = mono && rep.pairs[i + 1].diff_hsigma[0] < rep.pairs[i].diff_hsigma[0];
            bool rates_ok = true;
            for (std::size_t si = 0; si < sigmas.size(); ++si) {
                std::vector<double> ns, ds;
                for (const auto& p : rep.pairs) {
                    ns.push_back(p.n);
                    ds.push_back(p.diff_hsigma[si]);
                }
                const double rate = -util::fit_loglog(ns, ds).slope;
                const double want = s_data - sigmas[si];
                const bool ok = std::abs(rate - want) <= 0.3;
                rates_ok = rates_ok && ok;
                res.detail.push_back(fmt("Bona-Smith H^%g rate %.3f (want %.1f +- 0.3) %s", sigmas[si],
                                         rate, want, ok ? "ok" : "FAIL"));
            }
            std::string seq = "sup_t ||u_n - u_2n||_2:";
            for (const auto& p : rep.pairs) seq += fmt(" n=%d: %.3e", p.n, p.diff_hsigma[0]);
            res.detail.push_back(seq + (mono ? "  (monotone ok)" : "  (NOT monotone: FAIL)"));
            res.pass = res.pass && mono && rates_ok;
        }
    } catch (const std::exception& e) {
        res.pass = false;
        res.detail.push_back(std::string("aborted: ") + e.what());
    }
    res.seconds = seconds_since(t0);
    return res;
}

std::vector<CriterionResult> run_all(bool quick, std::ostream& out) {
    using Fn = CriterionResult (*)(bool);
    const Fn fns[] = {criterion1_bessel_identities, criterion2_bessel_decay,
                      criterion3_kernel_cross_validation, criterion4_dispersive_decay,
                      criterion5_strichartz, criterion6_symbol_bounds,
                      criterion7_solver_correctness, criterion8_wellposedness};
    std::vector<CriterionResult> results;
    for (Fn fn : fns) {
        const auto r = fn(quick);
        out << (r.pass ? "PASS" : "FAIL") << "  criterion " << r.id << " (" << r.name << ")  ["
            << fmt("%.1f", r.seconds) << " s]\n";
        for (const auto& d : r.detail) out << "      " << d << "\n";
        out.flush();
        results.push_back(r);
    }
    int failed = 0;
    for (const auto& r : results) failed += r.pass ? 0 : 1;
    out << (failed == 0 ? "all criteria passed\n"
                        : fmt("%d of 8 criteria failed\n", failed));
    return results;
}

} // namespace fdkp::acceptance
