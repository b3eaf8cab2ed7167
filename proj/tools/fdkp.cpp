// fdkp: experiment driver for the FDKP numerical laboratory.
//
// Subcommands: symbol-check, bessel-check, decay, strichartz, dispersive,
// evolve, whitham-compare, twin-run, bona-smith, verify-all.  All outputs are
// deterministic for a fixed argv + --seed, written with 17 significant digits
// to a temp name and atomically renamed.  Exit code 0 = success / all checks
// passed, 1 = a check failed (or a run blew up), 2 = usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <fdkp/acceptance.hpp>
#include <fdkp/besselasym.hpp>
#include <fdkp/oscint.hpp>
#include <fdkp/solver.hpp>
#include <fdkp/spectral.hpp>
#include <fdkp/symbol.hpp>
#include <fdkp/util.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <random>

namespace {

using namespace fdkp;
using cplx = std::complex<double>;

int run_symbol_check(double beta, double rmin, double rmax, int points, const std::string& out) {
    util::CsvWriter csv(out, {"r", "m", "m_prime", "m_double_prime", "ratio_m_prime",
                              "ratio_m_double_prime", "f_beta"});
    double q1_lo = 1e300, q1_hi = 0.0, q2_lo = 1e300, q2_hi = 0.0;
    double f_lo = 1e300, f_hi = -1e300;
    for (double r : util::geomspace(rmin, rmax, points)) {
        const double m = symbol::m(beta, r);
        const double mp = symbol::m_prime(beta, r);
        const double mpp = symbol::m_double_prime(beta, r);
        const double f = symbol::f_beta_ratio(beta, r);
        const double pred1 = symbol::bracket(std::sqrt(beta) * r) / std::sqrt(symbol::bracket(r));
        const double pred2 =
            r * symbol::bracket(std::sqrt(beta) * r) * std::pow(symbol::bracket(r), -2.5);
        const double q1 = mp / pred1, q2 = std::abs(mpp) / pred2;
        q1_lo = std::min(q1_lo, q1);
        q1_hi = std::max(q1_hi, q1);
        q2_lo = std::min(q2_lo, q2);
        q2_hi = std::max(q2_hi, q2);
        f_lo = std::min(f_lo, f);
        f_hi = std::max(f_hi, f);
        csv.row({r, m, mp, mpp, q1, q2, f});
    }
    csv.commit();
    const bool f_ok = beta == 0.0 ? (f_lo == -1.0 && f_hi == -1.0) : (f_lo > 1.0 && f_hi <= 3.0);
    const bool ratio_ok = q1_hi / q1_lo <= 10.0 && q2_hi / q2_lo <= 10.0;
    std::printf("m' ratio in [%.4f, %.4f] (C/c = %.3f), |m''| ratio in [%.4f, %.4f] (C/c = %.3f)\n",
                q1_lo, q1_hi, q1_hi / q1_lo, q2_lo, q2_hi, q2_hi / q2_lo);
    std::printf("f_beta range [%.6f, %.6f] -> %s; wrote %s\n", f_lo, f_hi,
                f_ok && ratio_ok ? "ok" : "FAIL", out.c_str());
    return f_ok && ratio_ok ? 0 : 1;
}

int run_bessel_check(int points, double rmax, double tol, std::uint64_t seed,
                     const std::string& out) {
    const cplx I{0.0, 1.0};
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);

    double worst_pt = 0.0;
    for (int k = 0; k < points; ++k) {
        const double r = std::exp(std::log(rmax) * u01(gen));
        const double ph = 2.0 * M_PI * u01(gen);
        const bessel::PlanePoint x(r * std::cos(ph), r * std::sin(ph));
        if (x.s1 == 0) continue;
        worst_pt = std::max(worst_pt,
                            std::abs(bessel::j_plus_direct(x, 0.01 * tol) -
                                     bessel::j_plus_identity(x, 0.01 * tol)));
    }

    double worst_F = 0.0, worst_Fpm = 0.0;
    for (double r : util::geomspace(1.0, rmax, 20))
        for (double a : util::linspace(0.0, 1.0, 11)) {
            const cplx fap = bessel::f_a(+1, r, a, 0.01 * tol);
            const cplx fam = bessel::f_a(-1, r, a, 0.01 * tol);
            worst_F = std::max(worst_F,
                               std::abs(bessel::F(r, a, 0.01 * tol) -
                                        (std::exp(I * (a * r)) * fap + std::exp(-I * (a * r)) * fam)));
            for (int sign : {1, -1}) {
                const cplx rhs = 2.0 * std::exp(I * (sign * r)) * bessel::f_a(sign, r, 1.0, 0.01 * tol) -
                                 2.0 * std::exp(I * (sign * a * r)) * (sign > 0 ? fap : fam);
                worst_Fpm =
                    std::max(worst_Fpm, std::abs(bessel::F_pm(sign, r, a, 0.01 * tol) - rhs));
            }
        }

    const std::vector<double> a_grid{0.0, 0.25, 0.5, 1.0 / std::sqrt(2.0), 0.9, 1.0};
    nlohmann::json decay;
    bool decay_ok = true;
    for (int sign : {1, -1}) {
        const auto rep = bessel::verify_fa_decay(sign, a_grid, util::geomspace(1.0, 1e4, 81), 1e-10);
        decay_ok = decay_ok && rep.all_finite;
        decay[sign > 0 ? "plus" : "minus"] = {{"sup_sqrt_r_f", rep.sup_f},
                                              {"sup_r32_df", rep.sup_df},
                                              {"sup_sqrt_r_f_below_100", rep.sup_f_lo},
                                              {"sup_r32_df_below_100", rep.sup_df_lo}};
    }

    const bool pass = worst_pt < tol && worst_F < tol && worst_Fpm < tol && decay_ok;
    nlohmann::json rep = {
        {"points", points},
        {"rmax", rmax},
        {"tol", tol},
        {"seed", seed},
        {"identity_direct_max_diff", worst_pt},
        {"identity_F_max_defect", worst_F},
        {"identity_Fpm_max_defect", worst_Fpm},
        {"identity_pass", worst_pt < tol && worst_F < tol && worst_Fpm < tol},
        {"decay_constants", decay},
        {"pass", pass},
    };
    util::atomic_write_text(out, rep.dump(2) + "\n");
    std::printf("max diffs: points %.3e, F %.3e, Fpm %.3e (tol %g) -> %s; wrote %s\n", worst_pt,
                worst_F, worst_Fpm, tol, pass ? "ok" : "FAIL", out.c_str());
    return pass ? 0 : 1;
}

int run_decay(double beta, std::vector<double> lambdas, double tmin, double tmax, int nt,
              const std::string& mode, double tol, const std::string& out) {
    const auto sweep = mode == "rays3" ? oscint::SweepMode::rays3 : oscint::SweepMode::direction_full;
    const auto rows = oscint::decay_table(beta, lambdas, tmin, tmax, nt, sweep, tol);
    util::CsvWriter csv(out, {"lambda", "t", "sup", "predicted", "ratio"});
    for (const auto& r : rows) csv.row({r.lambda, r.t, r.sup, r.predicted, r.ratio});
    csv.commit();
    for (std::size_t li = 0; li < lambdas.size(); ++li) {
        std::vector<double> tv, sv;
        for (int k = 0; k < nt; ++k) {
            tv.push_back(rows[li * nt + k].t);
            sv.push_back(rows[li * nt + k].sup);
        }
        std::printf("lambda=%-6g log-log slope %+.4f\n", lambdas[li], util::fit_loglog(tv, sv).slope);
    }
    std::printf("wrote %s\n", out.c_str());
    return 0;
}

int run_dispersive(double beta, double lambda, int grid, double domain,
                   std::vector<double> tlist, const std::string& out,
                   const std::string& fields_prefix) {
    const auto res = spectral::dispersive_sup_experiment(beta, lambda, tlist, grid, domain);
    util::CsvWriter csv(out, {"t", "sup", "ratio"});
    for (const auto& r : res.rows) csv.row({r.t, r.sup, r.ratio});
    csv.commit();
    if (!fields_prefix.empty()) {
        // Re-propagate the packet so snapshots match the tabulated rows.
        const auto f0 = project(
            spectral::SpectralField2D::from_function(grid, grid, domain, domain,
                                                     [&](double x1, double x2) {
                                                         const double s = 1.0 / (8.0 * lambda);
                                                         const double d1 = x1 - 0.5 * domain;
                                                         const double d2 = x2 - 0.5 * domain;
                                                         return std::exp(-(d1 * d1 + d2 * d2) /
                                                                         (2.0 * s * s));
                                                     }),
            spectral::DyadicProjector{lambda, spectral::ProjKind::annulus});
        for (std::size_t i = 0; i < tlist.size(); ++i)
            spectral::write_field(fields_prefix + "_" + std::to_string(i) + ".bin",
                                  propagate_linear(f0, beta, tlist[i]), tlist[i]);
    }
    std::printf("||f||_1 = %.6g, ||f||_2 = %.6g, predicted constant %.6g; wrote %s\n", res.f_l1,
                res.f_l2, res.predicted, out.c_str());
    return 0;
}

int run_strichartz(double beta, std::vector<double> lambdas, double q, double r, double T, int nt,
                   int grid, double domain, const std::string& out) {
    const spectral::MixedNormSpec spec{q, r, T};
    util::CsvWriter csv(out, {"lambda", "q", "r", "T", "norm", "denom", "ratio"});
    for (double lam : lambdas) {
        const auto res = spectral::strichartz_experiment(beta, lam, spec, nt, grid, domain);
        csv.row({lam, q, r, T, res.norm, res.denom, res.ratio});
        std::printf("lambda=%-6g ratio %.6f\n", lam, res.ratio);
    }
    csv.commit();
    std::printf("wrote %s\n", out.c_str());
    return 0;
}

std::vector<std::string> ledger_columns() {
    return {"time", "l2", "hamiltonian", "grad_linf", "hs", "grad_high_linf", "f_hsm1"};
}

void write_ledger(const std::string& dir, const std::vector<solver::LedgerEntry>& ledger) {
    util::CsvWriter csv(dir + "/ledger.csv", ledger_columns());
    std::string dat = "# " ;
    for (const auto& c : ledger_columns()) dat += c + " ";
    dat += "\n";
    for (const auto& e : ledger) {
        const double h = e.hamiltonian ? *e.hamiltonian : std::nan("");
        csv.row({e.time, e.l2, h, e.grad_linf, e.hs, e.grad_high_linf, e.f_hsm1});
        for (double v : {e.time, e.l2, h, e.grad_linf, e.hs, e.grad_high_linf, e.f_hsm1})
            dat += util::format_g17(v) + " ";
        dat += "\n";
    }
    csv.commit();
    util::atomic_write_text(dir + "/ledger.dat", dat);
}

int run_evolve(const std::string& config_path) {
    const auto kv = util::parse_config_file(config_path);
    solver::SolverConfig cfg;
    cfg.beta = util::config_num(kv, "beta", cfg.beta);
    cfg.n1 = static_cast<int>(util::config_num(kv, "n1", cfg.n1));
    cfg.n2 = static_cast<int>(util::config_num(kv, "n2", cfg.n2));
    cfg.L1 = util::config_num(kv, "L1", cfg.L1);
    cfg.L2 = util::config_num(kv, "L2", cfg.L2);
    cfg.dt = util::config_num(kv, "dt", cfg.dt);
    cfg.s = util::config_num(kv, "s", cfg.s);
    cfg.nonlinear = util::config_num(kv, "nonlinear", 1.0) != 0.0;
    const std::string scheme = util::config_str(kv, "scheme", "etdrk4");
    if (scheme == "ifrk4")
        cfg.scheme = solver::Scheme::ifrk4;
    else if (scheme != "etdrk4")
        throw domain_error("evolve: scheme must be etdrk4 or ifrk4");
    const std::string dealias = util::config_str(kv, "dealias", "two_thirds");
    if (dealias == "none")
        cfg.dealias = solver::Dealias::none;
    else if (dealias != "two_thirds")
        throw domain_error("evolve: dealias must be two_thirds or none");

    const double T = util::config_num(kv, "T", 1.0);
    const int record_every = static_cast<int>(util::config_num(kv, "record_every", 8));
    const int snapshot_every = static_cast<int>(util::config_num(kv, "snapshot_every", 0));
    const std::string out_dir = util::config_str(kv, "out_dir", "out");
    const std::string data = util::config_str(kv, "data", "psi");
    const double amp = util::config_num(kv, "amp", 0.08);
    const std::uint64_t seed = static_cast<std::uint64_t>(util::config_num(kv, "seed", 7150));
    const double decay = util::config_num(kv, "decay", 3.0);

    if (cfg.n1 != cfg.n2 || cfg.L1 != cfg.L2)
        throw domain_error("evolve: data builders assume a square grid (n1 = n2, L1 = L2)");
    spectral::SpectralField2D u0 = spectral::SpectralField2D::zero(cfg.n1, cfg.n2, cfg.L1, cfg.L2);
    if (data == "psi")
        u0 = spectral::gaussian_derivative_data(cfg.n1, cfg.L1, amp);
    else if (data == "random")
        u0 = spectral::random_hs_data(cfg.n1, cfg.L1, decay, amp, seed);
    else
        throw domain_error("evolve: data must be psi or random");

    std::filesystem::create_directories(out_dir);
    auto st = solver::make_state(u0, cfg);
    const solver::Stepper sp(cfg);
    const int nsteps = static_cast<int>(std::lround(T / cfg.dt));
    sp.record(st);
    if (snapshot_every > 0) spectral::write_field(out_dir + "/field_000000.bin", st.field, 0.0);
    int code = 0;
    try {
        for (int i = 0; i < nsteps; ++i) {
            sp.advance(st);
            if ((i + 1) % record_every == 0 || i + 1 == nsteps) sp.record(st);
            if (snapshot_every > 0 && ((i + 1) % snapshot_every == 0 || i + 1 == nsteps)) {
                char name[32];
                std::snprintf(name, sizeof name, "/field_%06d.bin", i + 1);
                spectral::write_field(out_dir + name, st.field, st.time);
            }
        }
    } catch (const solver::blowup_error& e) {
        std::fprintf(stderr, "blow-up: %s (last good t = %g)\n", e.what(), e.last_good_time);
        code = 1;
    }
    write_ledger(out_dir, st.ledger);
    util::atomic_write_text(
        out_dir + "/plot.gp",
        "set key autotitle columnhead\n"
        "set xlabel 'time'\n"
        "plot 'ledger.dat' using 1:2 with lines title 'L2', \\\n"
        "     'ledger.dat' using 1:5 with lines title 'H^s'\n");
    std::printf("evolved %d steps to t = %.6g; ledger (%zu rows) in %s\n", nsteps, st.time,
                st.ledger.size(), out_dir.c_str());
    return code;
}

int run_whitham_compare(double beta, int n, double L, double T, double dt, double tol,
                        const std::string& out) {
    solver::SolverConfig cfg;
    cfg.beta = beta;
    cfg.n1 = n;
    cfg.n2 = 4;
    cfg.L1 = L;
    cfg.L2 = L;
    cfg.dt = dt;
    auto profile = [&](double x) {
        const double k = 2.0 * M_PI / L;
        return 0.05 * (std::sin(2.0 * k * x) + 0.5 * std::sin(4.0 * k * x + 0.3) +
                       0.3 * std::cos(3.0 * k * x - 1.0));
    };
    const auto u2d0 = spectral::SpectralField2D::from_function(
        cfg.n1, cfg.n2, cfg.L1, cfg.L2, [&](double x1, double) { return profile(x1); });
    auto st2 = solver::make_state(u2d0, cfg);
    const solver::Stepper sp(cfg);
    const int nsteps = static_cast<int>(std::lround(T / dt));
    for (int i = 0; i < nsteps; ++i) sp.advance(st2);

    std::vector<double> u1(n);
    for (int i = 0; i < n; ++i) u1[i] = profile(L * i / n);
    auto st1 = solver::make_state_1d(n, L, u1);
    for (int i = 0; i < nsteps; ++i) solver::whitham_step(st1, cfg);

    util::CsvWriter csv(out, {"x", "u_2d", "u_whitham", "diff"});
    double sup = 0.0;
    for (int i = 0; i < n; ++i) {
        const double a = st2.field.values()[static_cast<std::size_t>(i) * cfg.n2];
        const double d = std::abs(a - st1.u[i]);
        sup = std::max(sup, d);
        csv.row({L * i / n, a, st1.u[i], d});
    }
    csv.commit();
    std::printf("sup |2-D - Whitham| = %.3e at t = %.4g (tol %g); wrote %s\n", sup, st2.time, tol,
                out.c_str());
    return sup < tol ? 0 : 1;
}

int run_twin(double beta, double T, double dt, double delta, std::uint64_t seed,
             const std::string& out) {
    const int n = 128;
    const double L = 8.0 * M_PI;
    const auto u0a = spectral::gaussian_derivative_data(n, L, 0.08);
    const auto pert = spectral::random_hs_data(n, L, 3.0, 1.0, seed);
    const auto u0b = spectral::add(u0a, pert, 1.0, delta * u0a.l2_norm() / pert.l2_norm());
    solver::SolverConfig cfg;
    cfg.beta = beta;
    cfg.dt = dt;
    const auto rep = solver::twin_run_l2_stability(u0a, u0b, cfg, T, 8);
    util::CsvWriter csv(out, {"time", "ratio"});
    for (std::size_t i = 0; i < rep.times.size(); ++i) csv.row({rep.times[i], rep.ratios[i]});
    csv.commit();
    std::printf("sup ratio %.6f, K = %.6f, implied c = %.6f; wrote %s\n", rep.sup_ratio, rep.K,
                rep.implied_c, out.c_str());
    return 0;
}

int run_bona_smith(double beta, int grid, double T, double dt, int nmax, std::uint64_t seed,
                   const std::string& out) {
    solver::SolverConfig cfg;
    cfg.beta = beta;
    cfg.n1 = cfg.n2 = grid;
    cfg.L1 = cfg.L2 = 2.0 * M_PI;
    cfg.dt = dt;
    std::vector<int> n_list;
    for (int n = 2; n <= nmax; n *= 2) n_list.push_back(n);
    const auto u0 = spectral::random_hs_data(grid, cfg.L1, 3.0, 0.04, seed);
    const auto rep = solver::bona_smith_convergence(u0, 2.0, n_list, cfg, T, {0.0, 1.0}, 8);
    util::CsvWriter csv(out, {"n", "diff_h0", "diff_h1"});
    for (const auto& p : rep.pairs)
        csv.row({static_cast<double>(p.n), p.diff_hsigma[0], p.diff_hsigma[1]});
    csv.commit();
    std::printf("H^0 Cauchy rate %.4f over %zu dyadic pairs; wrote %s\n", rep.rate_h0,
                rep.pairs.size(), out.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"FDKP numerical laboratory"};
    app.require_subcommand(1);

    // symbol-check
    auto* sym = app.add_subcommand("symbol-check", "Tabulate m, m', m'' and the comparability ratios");
    double sc_beta = 1.0, sc_rmin = 1e-3, sc_rmax = 1e3;
    int sc_points = 2000;
    std::string sc_out = "symbol.csv";
    sym->add_option("--beta", sc_beta, "dispersion parameter (0 or 1)");
    sym->add_option("--rmin", sc_rmin, "lower end of the log grid");
    sym->add_option("--rmax", sc_rmax, "upper end of the log grid");
    sym->add_option("--points", sc_points, "number of log-spaced samples");
    sym->add_option("--out", sc_out, "output CSV path");

    // bessel-check
    auto* bes = app.add_subcommand("bessel-check", "Verify the J_+ identity chain and decay constants");
    int bc_points = 100;
    double bc_rmax = 200.0, bc_tol = 1e-8;
    std::uint64_t bc_seed = 20240801;
    std::string bc_out = "bessel.json";
    bes->add_option("--points", bc_points, "number of random test points");
    bes->add_option("--rmax", bc_rmax, "largest |x|");
    bes->add_option("--tol", bc_tol, "comparison tolerance");
    bes->add_option("--seed", bc_seed, "RNG seed for the point set");
    bes->add_option("--out", bc_out, "output JSON path");

    // decay
    auto* dec = app.add_subcommand("decay", "Tabulate sup_x |I_{L,t}| against the t^{-1} prediction");
    double dc_beta = 1.0, dc_tmin = 10.0, dc_tmax = 1000.0, dc_tol = 1e-6;
    int dc_nt = 6;
    std::vector<double> dc_lambdas{0.25, 1.0, 4.0};
    std::string dc_mode = "full", dc_out = "decay.csv";
    dec->add_option("--beta", dc_beta, "dispersion parameter");
    dec->add_option("--lambda-list", dc_lambdas, "dyadic scales")->delimiter(',');
    dec->add_option("--tmin", dc_tmin, "first time");
    dec->add_option("--tmax", dc_tmax, "last time");
    dec->add_option("--nt", dc_nt, "points on the log time grid");
    dec->add_option("--mode", dc_mode, "sup sweep: full or rays3")
        ->check(CLI::IsMember({"full", "rays3"}));
    dec->add_option("--tol", dc_tol, "kernel quadrature tolerance");
    dec->add_option("--out", dc_out, "output CSV path");

    // dispersive
    auto* dis = app.add_subcommand("dispersive", "Sup-norm decay of the frequency-localised propagator");
    double dv_beta = 1.0, dv_lambda = 2.0, dv_domain = 64.0;
    int dv_grid = 512;
    std::vector<double> dv_tlist{0.0, 0.5, 1.0, 2.0, 4.0};
    std::string dv_out = "dispersive.csv", dv_fields;
    dis->add_option("--beta", dv_beta, "dispersion parameter");
    dis->add_option("--lambda", dv_lambda, "dyadic scale");
    dis->add_option("--grid", dv_grid, "grid points per side (power of two)");
    dis->add_option("--domain", dv_domain, "torus side length");
    dis->add_option("--tlist", dv_tlist, "sample times")->delimiter(',');
    dis->add_option("--out", dv_out, "output CSV path");
    dis->add_option("--fields-out", dv_fields, "prefix for binary field snapshots (optional)");

    // strichartz
    auto* str = app.add_subcommand("strichartz", "Mixed-norm ratios of the free evolution");
    double st_beta = 1.0, st_q = 4.0, st_r = 4.0, st_T = 4.0, st_domain = 64.0;
    int st_nt = 128, st_grid = 512;
    std::vector<double> st_lambdas{1.0, 2.0, 4.0, 8.0};
    std::string st_out = "strichartz.csv";
    str->add_option("--beta", st_beta, "dispersion parameter");
    str->add_option("--lambda-list", st_lambdas, "dyadic scales")->delimiter(',');
    str->add_option("--q", st_q, "time exponent");
    str->add_option("--r", st_r, "space exponent");
    str->add_option("--T", st_T, "horizon");
    str->add_option("--nt", st_nt, "time samples");
    str->add_option("--grid", st_grid, "grid points per side");
    str->add_option("--domain", st_domain, "torus side length");
    str->add_option("--out", st_out, "output CSV path");

    // evolve
    auto* evo = app.add_subcommand("evolve", "Time-evolve the FDKP equation from a config file");
    std::string ev_config;
    evo->add_option("--config", ev_config, "key = value config file")->required();

    // whitham-compare
    auto* whi = app.add_subcommand("whitham-compare", "2-D x2-independent run vs the 1-D Whitham oracle");
    double wc_beta = 1.0, wc_L = 8.0 * M_PI, wc_T = 0.5, wc_dt = 1.0 / 256.0, wc_tol = 1e-8;
    int wc_n = 256;
    std::string wc_out = "whitham.csv";
    whi->add_option("--beta", wc_beta, "dispersion parameter");
    whi->add_option("--n", wc_n, "grid points along x1");
    whi->add_option("--L", wc_L, "domain length");
    whi->add_option("--T", wc_T, "horizon");
    whi->add_option("--dt", wc_dt, "time step");
    whi->add_option("--tol", wc_tol, "pass tolerance on the sup difference");
    whi->add_option("--out", wc_out, "output CSV path");

    // twin-run
    auto* twi = app.add_subcommand("twin-run", "Gronwall L^2 stability of perturbed twins");
    double tw_beta = 1.0, tw_T = 1.0, tw_dt = 1.0 / 256.0, tw_delta = 1e-3;
    std::uint64_t tw_seed = 7150;
    std::string tw_out = "twin.csv";
    twi->add_option("--beta", tw_beta, "dispersion parameter");
    twi->add_option("--T", tw_T, "horizon");
    twi->add_option("--dt", tw_dt, "time step");
    twi->add_option("--delta", tw_delta, "relative L^2 size of the perturbation");
    twi->add_option("--seed", tw_seed, "RNG seed for the perturbation");
    twi->add_option("--out", tw_out, "output CSV path");

    // bona-smith
    auto* bon = app.add_subcommand("bona-smith", "Cauchy rates of the regularised-data family");
    double bs_beta = 1.0, bs_T = 0.25, bs_dt = 1.0 / 256.0;
    int bs_grid = 256, bs_nmax = 32;
    std::uint64_t bs_seed = 7150;
    std::string bs_out = "bona_smith.csv";
    bon->add_option("--beta", bs_beta, "dispersion parameter");
    bon->add_option("--grid", bs_grid, "grid points per side");
    bon->add_option("--T", bs_T, "horizon");
    bon->add_option("--dt", bs_dt, "time step");
    bon->add_option("--nmax", bs_nmax, "largest dyadic regularisation level");
    bon->add_option("--seed", bs_seed, "RNG seed for the data");
    bon->add_option("--out", bs_out, "output CSV path");

    // verify-all
    auto* ver = app.add_subcommand("verify-all", "Run the eight-criterion acceptance suite");
    bool va_quick = false;
    ver->add_flag("--quick", va_quick, "reduced grids, ~10x faster");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e); // prints help, exit 0
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(sym))
            return run_symbol_check(sc_beta, sc_rmin, sc_rmax, sc_points, sc_out);
        if (app.got_subcommand(bes))
            return run_bessel_check(bc_points, bc_rmax, bc_tol, bc_seed, bc_out);
        if (app.got_subcommand(dec))
            return run_decay(dc_beta, dc_lambdas, dc_tmin, dc_tmax, dc_nt, dc_mode, dc_tol, dc_out);
        if (app.got_subcommand(dis))
            return run_dispersive(dv_beta, dv_lambda, dv_grid, dv_domain, dv_tlist, dv_out,
                                  dv_fields);
        if (app.got_subcommand(str))
            return run_strichartz(st_beta, st_lambdas, st_q, st_r, st_T, st_nt, st_grid, st_domain,
                                  st_out);
        if (app.got_subcommand(evo)) return run_evolve(ev_config);
        if (app.got_subcommand(whi))
            return run_whitham_compare(wc_beta, wc_n, wc_L, wc_T, wc_dt, wc_tol, wc_out);
        if (app.got_subcommand(twi))
            return run_twin(tw_beta, tw_T, tw_dt, tw_delta, tw_seed, tw_out);
        if (app.got_subcommand(bon))
            return run_bona_smith(bs_beta, bs_grid, bs_T, bs_dt, bs_nmax, bs_seed, bs_out);
        if (app.got_subcommand(ver)) {
            const auto results = fdkp::acceptance::run_all(va_quick, std::cout);
            for (const auto& r : results)
                if (!r.pass) return 1;
            return 0;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2; // unreachable with require_subcommand(1)
}
