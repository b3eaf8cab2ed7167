#pragma once

#include <cmath>

// The fixed C^inf cutoff chi and the annular bump rho used everywhere a
// Littlewood-Paley symbol is needed.  chi == 1 on [-1,1], supp chi = [-2,2],
// built from the classical smooth step g(t)/(g(t)+g(1-t)) with
// g(t) = e^{-1/t} 1_{t>0}; rho(s) = chi(s) - chi(2s) is supported in
// 1/2 <= |s| <= 2 and the dilates rho(s/2^j) telescope to chi on |s| >= 1.
// Fixed bit-for-bit so every experiment is reproducible.

namespace fdkp::bump {

inline double germ(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

// C^inf monotone step: 0 for t <= 0, 1 for t >= 1.
inline double smooth_step(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double g0 = germ(t);
    const double g1 = germ(1.0 - t);
    return g0 / (g0 + g1);
}

inline double chi(double s) { return smooth_step(2.0 - std::abs(s)); }

inline double rho(double s) { return chi(s) - chi(2.0 * s); }

} // namespace fdkp::bump
