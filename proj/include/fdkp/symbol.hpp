#pragma once

#include <fdkp/errors.hpp>

#include <cmath>

// Dispersion symbol of the full-dispersion KP equation,
//
//     m_beta(r) = r (1 + beta r^2)^{1/2} (tanh r / r)^{1/2},
//
// together with closed forms of its first two derivatives and the auxiliary
// functions they factor through:
//
//     T = tanh r,   S = sech r,   K = (tanh r / r)^{1/2},
//     E = (e^{2r} - e^{-2r} - 4r) / (4 r^2),
//     A_beta = (1 + S^2/K^2 + 1/g^2) / g^2           with g^2 = 1 + beta r^2,
//     B = 4 S^2 + (E S^2 / K^2)^2,
//     f_beta = 4 beta A_beta / B - 1,
//
//     m'  = (1/2) g (K + S^2/K) + beta r^2 K / g,
//     m'' = (r/4) g K B f_beta.
//
// All branches are numerically stable: series for the removable singularities
// at r -> 0, fused exponential forms for E S^2 at large r (the naive product
// overflows), and tanh/sech saturation beyond r = 40.

namespace fdkp::symbol {

inline constexpr double r_switch = 1e-2; // series branch below this radius
inline constexpr double r_sat = 40.0;    // tanh == 1, sech == 0 beyond this

// Japanese bracket <x> = (1 + x^2)^{1/2}, overflow-safe.
inline double bracket(double x) { return std::hypot(1.0, x); }

double m(double beta, double r);
double m_prime(double beta, double r);
double m_double_prime(double beta, double r);

// Auxiliary appendix-side functions (exposed for the test suite).
double aux_T(double r);
double aux_S(double r);
double aux_K(double r);              // (tanh r / r)^{1/2}, smooth through 0
double aux_E(double r);              // r > 0; no NaN through r = 300
double aux_ES2(double r);            // E(r) S(r)^2, stable at both ends
double aux_A(double beta, double r);
double aux_B(double r);
double f_beta_ratio(double beta, double r); // == -1 exactly for beta = 0

struct DispersionSymbol {
    double beta;

    explicit DispersionSymbol(double beta_);

    double m(double r) const { return symbol::m(beta, r); }
    double m_prime(double r) const { return symbol::m_prime(beta, r); }
    double m_double_prime(double r) const { return symbol::m_double_prime(beta, r); }
    double f_ratio(double r) const { return symbol::f_beta_ratio(beta, r); }
};

} // namespace fdkp::symbol
