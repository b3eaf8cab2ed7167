#pragma once

#include <fdkp/errors.hpp>

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

// Doubly periodic real spectral fields on power-of-two grids, smooth dyadic
// frequency projectors, the exact linear propagator e^{i t sgn(xi1) m_beta},
// and the discrete mixed space-time norms used by the Strichartz and
// dispersive experiments.
//
// Conventions: the field lives on [0,L1) x [0,L2) sampled at n1 x n2 points,
// values row-major with x1 as the slow index.  Coefficients satisfy
// u(x) = sum_k c_k e^{i xi_k . x} with xi_k = 2 pi ktilde / L and integer
// frequencies ktilde in (-n/2, n/2]; Parseval reads
// int |u|^2 = L1 L2 sum |c_k|^2.  On the discrete grid sgn(xi1) is set to 0
// on both the xi1 = 0 column and the n1/2 Nyquist column: the former is the
// documented measure-zero choice, the latter is forced by Hermitian symmetry
// (the Nyquist column is self-conjugate, so any odd multiplier there would
// break realness).

namespace fdkp::spectral {

class SpectralField2D {
public:
    static SpectralField2D from_values(int n1, int n2, double L1, double L2,
                                       std::vector<double> values);
    // Coefficients are Hermitian-symmetrised on entry (real fields only).
    static SpectralField2D from_coeffs(int n1, int n2, double L1, double L2,
                                       std::vector<std::complex<double>> coeffs);
    static SpectralField2D from_function(int n1, int n2, double L1, double L2,
                                         const std::function<double(double, double)>& f);
    static SpectralField2D zero(int n1, int n2, double L1, double L2);

    int n1() const { return n1_; }
    int n2() const { return n2_; }
    double L1() const { return L1_; }
    double L2() const { return L2_; }
    double cell_area() const { return (L1_ / n1_) * (L2_ / n2_); }

    const std::vector<double>& values() const { return values_; }
    const std::vector<std::complex<double>>& coeffs() const { return coeffs_; }

    // Integer and physical frequencies for row i / column j.
    int ktilde1(int i) const { return i <= n1_ / 2 ? i : i - n1_; }
    int ktilde2(int j) const { return j <= n2_ / 2 ? j : j - n2_; }
    double xi1(int i) const;
    double xi2(int j) const;

    double l2_norm() const;              // grid L^2 (with quadrature weights)
    double lp_norm(double p) const;      // grid L^p, p in [1, inf)
    double linf_norm() const;
    double l1_norm() const { return lp_norm(1.0); }
    double sobolev_norm(double s) const; // || <xi>^s u ||_{L^2}
    double hermitian_defect() const;     // max_k |c_k - conj(c_{-k})|

    // New field with coefficients c_k * mult(xi1, xi2).
    SpectralField2D apply_multiplier(const std::function<std::complex<double>(double, double)>& mult) const;

    SpectralField2D derivative(int axis) const; // i xi_axis multiplier

private:
    SpectralField2D() = default;
    int n1_ = 0, n2_ = 0;
    double L1_ = 0.0, L2_ = 0.0;
    std::vector<double> values_;
    std::vector<std::complex<double>> coeffs_;
};

// Pointwise field algebra (grids must match).
SpectralField2D add(const SpectralField2D& f, const SpectralField2D& g, double cf = 1.0, double cg = 1.0);
double linf_distance(const SpectralField2D& f, const SpectralField2D& g);
double l2_distance(const SpectralField2D& f, const SpectralField2D& g);

enum class ProjKind { annulus, low_pass, high_pass };

struct DyadicProjector {
    double lambda = 1.0;
    ProjKind kind = ProjKind::annulus;
    double symbol(double abs_xi) const; // rho(|xi|/L), chi(|xi|/L), or 1-chi
};

SpectralField2D project(const SpectralField2D& f, const DyadicProjector& p);

// Exact unitary propagator multiplier e^{i t sgn(xi1) m_beta(|xi|)}.
SpectralField2D propagate_linear(const SpectralField2D& f, double beta, double t);

struct MixedNormSpec {
    double q = 4.0; // time exponent, (1, inf]
    double r = 4.0; // space exponent, [1, inf)
    double T = 1.0; // horizon
    // Strichartz admissibility: 2 < q <= inf, 2 <= r < inf, 1/r + 1/q = 1/2.
    bool admissible() const;
};

// Discrete L^q_t L^r_x of uniformly sampled fields (trapezoid in time, grid
// quadrature in space); q = inf takes the max over samples.
double mixed_norm(const std::vector<SpectralField2D>& samples, double dt, const MixedNormSpec& spec);
// Same reduction when the space norms have already been computed.
double time_lq(const std::vector<double>& space_norms, double dt, double q);

// Dispersive sup experiment: f = P_L(Gaussian point mass of width 1/(8 L))
// centred on the torus; tabulates ||S(t) f||_inf and the decay-normalised
// ratio ||S(t) f||_inf |t| / (<sqrt(b)L>^{-1} <L>^{3/2} ||f||_1).  Refuses
// horizons where the packet (4 widths + group excursion m'(2L) t) would
// reach the boundary, reporting the largest admissible t.
struct DispersiveRow {
    double t, sup, ratio;
};
struct DispersiveResult {
    std::vector<DispersiveRow> rows;
    double f_l1 = 0.0, f_l2 = 0.0;
    double predicted = 0.0; // <sqrt(b)L>^{-1} <L>^{3/2}
};
DispersiveResult dispersive_sup_experiment(double beta, double lambda,
                                           const std::vector<double>& t_list,
                                           int n, double L);

// Strichartz measurement: || S(t) P_L f ||_{L^q_T L^r} over [0,T] with nt+1
// uniform samples, normalised by [<sqrt(b)L>^{-1}<L>^{3/2}]^{1/2-1/r} ||P_L f||_2.
struct StrichartzResult {
    double norm = 0.0, denom = 0.0, ratio = 0.0;
};
StrichartzResult strichartz_experiment(double beta, double lambda, const MixedNormSpec& spec,
                                       int nt, int n, double L);

// Canonical experiment data.  gaussian_derivative_data is d/dx1 of a
// two-Gaussian profile scaled to the given sup norm; the x1-derivative kills
// the xi1 = 0 column exactly, so the zero-mass constraint holds to machine
// precision.  random_hs_data has |c_k| = <|xi|>^{-decay} with seeded random
// phases, band-limited to the alias-free square |ktilde_i| <= (n-1)/3, mean
// zero, Hermitian by explicit pairing; decay = s + 1 puts the field at the
// H^s regularity boundary in the continuum scaling sense.
SpectralField2D gaussian_derivative_data(int n, double L, double amp);
SpectralField2D random_hs_data(int n, double L, double decay, double amp, std::uint64_t seed);

// Flat binary snapshots: 64-byte little-endian header
// (magic "FDKPFLD\0", u32 n1, u32 n2, f64 L1, f64 L2, f64 time, zero pad)
// followed by the row-major f64 values.
void write_field(const std::string& path, const SpectralField2D& f, double time);
SpectralField2D read_field(const std::string& path, double* time_out = nullptr);

namespace detail {
// Unnormalised in-place c2c transform over the shared plan cache
// (sign -1 forward, +1 backward); n2 = 1 gives the 1-D transform.
void fft2(int n1, int n2, std::complex<double>* data, int sign);
} // namespace detail

} // namespace fdkp::spectral
