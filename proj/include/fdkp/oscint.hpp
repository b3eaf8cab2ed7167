#pragma once

#include <fdkp/besselasym.hpp>
#include <fdkp/errors.hpp>

#include <complex>
#include <vector>

// The frequency-localised oscillatory kernel
//
//   I_{L,t}(x) = int_{R^2} e^{i(x.xi + t sgn(xi1) m_beta(|xi|))} rho(|xi|/L) dxi
//              = 2 L^2 Re int_{1/2}^{2} e^{i t m_beta(L r)} J_+(L r x) r rho(r) dr,
//
// evaluated two independent ways (radial quadrature through the Bessel
// assembly, and brute-force 2-D tensor cubature over the annulus), plus
// the stationary-phase regime classifier and sup_x estimation used by the
// dispersive-decay experiments.

namespace fdkp::oscint {

struct KernelQuery {
    double beta = 0.0;
    double lambda = 1.0; // dyadic localisation scale
    double t = 0.0;
    bessel::PlanePoint x;
};

// Group-velocity scale <sqrt(beta) L> <L>^{-1/2}: the critical |x|/t speed.
double critical_speed(double beta, double lambda);

// Radial path: Bessel assembly under the annular bump.  Imaginary part is
// zero by construction (the two half-circle terms are conjugates).
std::complex<double> kernel_radial(const KernelQuery& q, double tol);

// Independent check: brute-force tensor GK15 cubature of the whole annulus,
// split at the sgn(xi1) jump; the imaginary part is left to cancel
// numerically (a genuine cross-check, unlike the radial path).  Refuses
// queries whose oscillation budget |t| m_beta(2L) + |x| 2L exceeds 1e5.
std::complex<double> kernel_2d(const KernelQuery& q, double tol);

enum class PhaseRegime {
    nonstationary_plus,  // |x|/t above the critical band (factor > 4)
    nonstationary_minus, // |x|/t below the critical band (factor < 1/4)
    stationary,          // within a factor 4 of the critical speed
};
PhaseRegime phase_regime(const KernelQuery& q);

// sup_x |I_{L,t}| estimation.  "direction_full" scans polar directions over
// [0, pi] (the kernel is even in x2) x radii bracketing the stationary band,
// then polishes with coordinatewise golden-section passes.  "rays3" restricts
// to the three lines x2 = 0, x1 = 0, x1 = x2 out to three critical radii;
// it is kept for comparison and can undershoot the plane maximum severely
// (the radiation peak sits well off all three lines).
enum class SweepMode { direction_full, rays3 };

struct SupResult {
    double sup = 0.0;
    double x1 = 0.0, x2 = 0.0; // argmax
    int evals = 0;
};
SupResult kernel_sup(double beta, double lambda, double t, SweepMode mode, double tol);

struct DecayRow {
    double lambda, t, sup, predicted, ratio; // predicted = <sqrt(b)L>^{-1}<L>^{3/2}/t
};
std::vector<DecayRow> decay_table(double beta, const std::vector<double>& lambdas,
                                  double tmin, double tmax, int nt, SweepMode mode,
                                  double tol);

} // namespace fdkp::oscint
