#pragma once

// Posterior distribution objects returned by the test modules:
// inverse-gamma and location-scale Student-t (univariate and multivariate).
//
// The inverse-gamma is parameterized by shape and RATE, so the mean is
// rate / (shape - 1). IG(n/2, n*sigma_hat^2/2) then has mean close to
// sigma_hat^2 for large n; mind this when comparing against shape/scale
// conventions elsewhere.

#include "caketest/rng.hpp"

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

namespace caketest {

class InverseGamma {
public:
    InverseGamma(double shape, double rate);

    double shape() const { return shape_; }
    double rate() const { return rate_; }

    double log_density(double x) const;
    double density(double x) const;
    double cdf(double x) const;
    double quantile(double p) const;
    /// Mean rate/(shape-1); requires shape > 1.
    double mean() const;
    double sample(Rng& rng) const;
    std::vector<double> sample(Rng& rng, std::size_t count) const;

private:
    double shape_, rate_;
};

class LocationScaleT {
public:
    LocationScaleT(double dof, double location, double scale2);

    double dof() const { return dof_; }
    double location() const { return location_; }
    double scale2() const { return scale2_; }

    double log_density(double x) const;
    double density(double x) const;
    double cdf(double x) const;
    double quantile(double p) const;
    double mean() const { return location_; } // also the median
    double sample(Rng& rng) const;
    std::vector<double> sample(Rng& rng, std::size_t count) const;

private:
    double dof_, location_, scale_; // scale_ = sqrt(scale2)
    double scale2_;
};

/// Multivariate location-scale t: density, mean, covariance and sampling
/// only (no CDF).
class MultivariateT {
public:
    MultivariateT(double dof, Eigen::VectorXd location, Eigen::MatrixXd scale);

    double dof() const { return dof_; }
    const Eigen::VectorXd& location() const { return location_; }
    const Eigen::MatrixXd& scale_matrix() const { return scale_; }

    double log_density(const Eigen::VectorXd& x) const;
    Eigen::VectorXd mean() const { return location_; }
    /// dof/(dof-2) * scale matrix; requires dof > 2.
    Eigen::MatrixXd covariance() const;
    Eigen::VectorXd sample(Rng& rng) const;

private:
    double dof_;
    Eigen::VectorXd location_;
    Eigen::MatrixXd scale_;
    Eigen::MatrixXd chol_; // lower Cholesky factor of scale_
    double half_logdet_;
};

/// Named univariate posteriors grouped by hypothesis ("H0" / "H1"), with an
/// optional multivariate block (linear-model coefficients).
struct PosteriorSet {
    std::map<std::string, InverseGamma> inverse_gammas;   // "H0:sigma2", ...
    std::map<std::string, LocationScaleT> student_ts;     // "H1:mu", ...
    std::map<std::string, MultivariateT> multivariate_ts; // "H1:beta"
};

} // namespace caketest
