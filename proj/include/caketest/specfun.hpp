#pragma once

// Special functions underlying every test statistic: log-gamma, log-beta,
// the Stirling remainder xi, chi-square tail probabilities/quantiles and
// the standard normal CDF/quantile.
//
// All functions are pure and thread-safe. Probabilities are also available
// on the log scale since tail levels of the form exp(-nu*ln(n)/2) underflow
// double precision for large n.

namespace caketest {

/// ln Gamma(x) for x > 0. Throws std::domain_error otherwise.
double log_gamma(double x);

/// ln Beta(a, b) = lnG(a) + lnG(b) - lnG(a+b), computed in log space.
double log_beta(double a, double b);

/// xi(x) = lnGamma(x) + x - x*ln(x) - (1/2)ln(2*pi).
/// Satisfies xi(x) = -(1/2)ln(x) + O(1/x).
double xi(double x);

/// Regularized lower incomplete gamma P(a, x).
double gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double gamma_q(double a, double x);

/// ln Q(a, x); accurate far into the tail where Q underflows.
double log_gamma_q(double a, double x);

/// Upper-tail probability P(Chi2_nu > x).
double chi2_sf(double x, double nu);

/// ln of the upper-tail probability; usable when chi2_sf underflows.
double chi2_log_sf(double x, double nu);

/// Upper quantile: the x with chi2_sf(x, nu) = alpha, alpha in (0,1).
double chi2_quantile(double alpha, double nu);

/// Standard normal CDF, absolute error below 1e-12.
double normal_cdf(double z);

/// Inverse of normal_cdf for p in (0,1).
double normal_quantile(double p);

/// Regularized incomplete beta I_x(a, b) (needed for Student-t CDFs).
double inc_beta(double a, double b, double x);

} // namespace caketest
