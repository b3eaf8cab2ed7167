#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace fdkp {

// Invalid argument: non-finite input, out-of-domain parameter, grid mismatch.
class domain_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// The requested work exceeds a documented oscillation/node budget.
class budget_error : public domain_error {
public:
    using domain_error::domain_error;
};

// A quadrature failed to reach the requested tolerance within its subdivision
// limits.  Carries the partial value and its error estimate.
class convergence_error : public std::runtime_error {
public:
    convergence_error(const std::string& what, std::complex<double> partial, double err)
        : std::runtime_error(what), partial_value(partial), abs_error_estimate(err) {}

    std::complex<double> partial_value;
    double abs_error_estimate;
};

} // namespace fdkp
