#include <fdkp/symbol.hpp>

#include <cmath>

namespace fdkp::symbol {

namespace {

void check(double beta, double r) {
    if (!std::isfinite(beta) || !std::isfinite(r))
        throw domain_error("symbol: non-finite argument");
    if (beta < 0.0) throw domain_error("symbol: beta must be >= 0");
    if (r < 0.0) throw domain_error("symbol: r must be >= 0");
}

// tanh(r)/r with the removable singularity handled by series: four terms give
// relative error below 1e-12 for r < 1e-2.
double tanh_over_r(double r) {
    if (r < r_switch) {
        const double r2 = r * r;
        return 1.0 + r2 * (-1.0 / 3.0 + r2 * (2.0 / 15.0 + r2 * (-17.0 / 315.0)));
    }
    if (r > r_sat) return 1.0 / r;
    return std::tanh(r) / r;
}

// sech^2 via e^{-2r}: exact for all r >= 0 (underflows gracefully).
double sech2(double r) {
    const double q = std::exp(-2.0 * r);
    const double d = 1.0 + q;
    return 4.0 * q / (d * d);
}

} // namespace

double aux_T(double r) {
    if (!std::isfinite(r)) throw domain_error("aux_T: non-finite argument");
    return r > r_sat ? 1.0 : std::tanh(r);
}

double aux_S(double r) {
    if (!std::isfinite(r)) throw domain_error("aux_S: non-finite argument");
    return r > r_sat ? 0.0 : 1.0 / std::cosh(r);
}

double aux_K(double r) {
    check(0.0, r);
    return std::sqrt(tanh_over_r(r));
}

// E S^2 = (1 - e^{-4r} - 4 r e^{-2r}) / (r^2 (1 + e^{-2r})^2).  The numerator
// cancels like (8/3) r^3 at the origin, so a short odd series takes over
// below r_switch.  Unlike the naive product E * S^2 this form neither
// overflows (E ~ e^{2r}/4r^2) nor hits the sech saturation.
double aux_ES2(double r) {
    check(0.0, r);
    if (r < r_switch) {
        const double r2 = r * r;
        return r * (2.0 / 3.0 + r2 * (-8.0 / 15.0 + r2 * (34.0 / 105.0)));
    }
    const double q = std::exp(-2.0 * r);
    const double d = 1.0 + q;
    return (1.0 - q * q - 4.0 * r * q) / (r * r * d * d);
}

double aux_E(double r) {
    if (!std::isfinite(r)) throw domain_error("aux_E: non-finite argument");
    if (r <= 0.0) throw domain_error("aux_E: need r > 0");
    if (r < r_switch) {
        const double r2 = r * r;
        return r * (2.0 / 3.0 + r2 * (2.0 / 15.0 + r2 * (4.0 / 315.0)));
    }
    // E = (E S^2) / S^2; both factors are finite far past r = 300.
    return aux_ES2(r) / sech2(r);
}

double aux_A(double beta, double r) {
    check(beta, r);
    if (r <= 0.0) throw domain_error("aux_A: need r > 0");
    const double g2 = 1.0 + beta * r * r;
    const double K2 = tanh_over_r(r);
    return (1.0 + sech2(r) / K2 + 1.0 / g2) / g2;
}

double aux_B(double r) {
    check(0.0, r);
    if (r <= 0.0) throw domain_error("aux_B: need r > 0");
    const double K2 = tanh_over_r(r);
    const double w = aux_ES2(r) / K2;
    return 4.0 * sech2(r) + w * w;
}

double f_beta_ratio(double beta, double r) {
    check(beta, r);
    if (r <= 0.0) throw domain_error("f_beta_ratio: need r > 0");
    return 4.0 * beta * aux_A(beta, r) / aux_B(r) - 1.0;
}

double m(double beta, double r) {
    check(beta, r);
    if (r == 0.0) return 0.0;
    return r * bracket(std::sqrt(beta) * r) * std::sqrt(tanh_over_r(r));
}

double m_prime(double beta, double r) {
    check(beta, r);
    const double g = bracket(std::sqrt(beta) * r);
    const double K = std::sqrt(tanh_over_r(r));
    const double S2 = sech2(r);
    return 0.5 * g * (K + S2 / K) + beta * r * r * K / g;
}

double m_double_prime(double beta, double r) {
    check(beta, r);
    if (r == 0.0) return 0.0;
    const double g = bracket(std::sqrt(beta) * r);
    const double K = std::sqrt(tanh_over_r(r));
    return 0.25 * r * g * K * aux_B(r) * f_beta_ratio(beta, r);
}

DispersionSymbol::DispersionSymbol(double beta_) : beta(beta_) {
    if (!std::isfinite(beta) || beta < 0.0)
        throw domain_error("DispersionSymbol: beta must be finite and >= 0");
}

} // namespace fdkp::symbol
