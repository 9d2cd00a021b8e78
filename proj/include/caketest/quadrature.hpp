#pragma once

// Log-space univariate quadrature over (0, inf) for marginal likelihoods
// whose integrands underflow double precision. The integral
//   ln \int_0^inf exp(f(v)) dv
// is computed after the substitution u = ln(v) (the Jacobian e^u is added
// to the log-integrand), which makes the target integrands approximately
// Gaussian and removes the endpoint singularity at 0.

#include <cstddef>
#include <functional>
#include <stdexcept>

namespace caketest {

/// f maps the original variable v > 0 to the log of the integrand value.
/// May return -infinity where the integrand vanishes.
using LogIntegrand = std::function<double(double)>;

struct QuadratureResult {
    double log_value = 0.0;
    double abs_log_error_estimate = 0.0;
    std::size_t evaluations = 0;
};

struct NonConvergent : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateIntegrand : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Returns ln \int_0^inf exp(f(v)) dv with relative error of the integral
/// bounded by rel_tol (rel_tol in (1e-13, 1e-2)).
///
/// Pure and re-entrant; integrand evaluations happen on the calling thread.
QuadratureResult integrate_log_over_positive_halfline(const LogIntegrand& f,
                                                      double rel_tol = 1e-8);

} // namespace caketest
