#include "caketest/posteriors.hpp"

#include "caketest/specfun.hpp"

#include <cmath>
#include <stdexcept>

namespace caketest {

InverseGamma::InverseGamma(double shape, double rate)
    : shape_(shape), rate_(rate) {
    if (!(shape > 0.0) || !(rate > 0.0))
        throw std::domain_error("InverseGamma: requires shape, rate > 0");
}

double InverseGamma::log_density(double x) const {
    if (!(x > 0.0)) throw std::domain_error("InverseGamma: support is x > 0");
    return shape_ * std::log(rate_) - log_gamma(shape_) -
           (shape_ + 1.0) * std::log(x) - rate_ / x;
}

double InverseGamma::density(double x) const { return std::exp(log_density(x)); }

double InverseGamma::cdf(double x) const {
    if (!(x > 0.0)) throw std::domain_error("InverseGamma: support is x > 0");
    // 1/X ~ Gamma(shape, rate): P(X <= x) = Q(shape, rate/x).
    return gamma_q(shape_, rate_ / x);
}

double InverseGamma::quantile(double p) const {
    if (!(p > 0.0) || !(p < 1.0))
        throw std::domain_error("InverseGamma::quantile: p in (0,1)");
    // Bisection with geometric bracket expansion.
    double lo = rate_ / (shape_ + 1.0), hi = lo;
    while (cdf(lo) > p) lo /= 4.0;
    while (cdf(hi) < p) hi *= 4.0;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (cdf(mid) < p)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-14 * hi) break;
    }
    return 0.5 * (lo + hi);
}

double InverseGamma::mean() const {
    if (!(shape_ > 1.0))
        throw std::domain_error("InverseGamma::mean: requires shape > 1");
    return rate_ / (shape_ - 1.0);
}

double InverseGamma::sample(Rng& rng) const { return rate_ / rng.gamma(shape_); }

std::vector<double> InverseGamma::sample(Rng& rng, std::size_t count) const {
    std::vector<double> out(count);
    for (auto& v : out) v = sample(rng);
    return out;
}

LocationScaleT::LocationScaleT(double dof, double location, double scale2)
    : dof_(dof), location_(location), scale_(std::sqrt(scale2)), scale2_(scale2) {
    if (!(dof > 0.0) || !(scale2 > 0.0))
        throw std::domain_error("LocationScaleT: requires dof, scale2 > 0");
}

double LocationScaleT::log_density(double x) const {
    const double t = (x - location_) / scale_;
    return log_gamma((dof_ + 1.0) / 2.0) - log_gamma(dof_ / 2.0) -
           0.5 * std::log(dof_ * M_PI) - std::log(scale_) -
           (dof_ + 1.0) / 2.0 * std::log1p(t * t / dof_);
}

double LocationScaleT::density(double x) const { return std::exp(log_density(x)); }

double LocationScaleT::cdf(double x) const {
    const double t = (x - location_) / scale_;
    const double tail = 0.5 * inc_beta(dof_ / 2.0, 0.5, dof_ / (dof_ + t * t));
    return t >= 0.0 ? 1.0 - tail : tail;
}

double LocationScaleT::quantile(double p) const {
    if (!(p > 0.0) || !(p < 1.0))
        throw std::domain_error("LocationScaleT::quantile: p in (0,1)");
    // Bracketed bisection around the location.
    double w = scale_;
    while (cdf(location_ - w) > p) w *= 2.0;
    while (cdf(location_ + w) < p) w *= 2.0;
    double lo = location_ - w, hi = location_ + w;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (cdf(mid) < p)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-13 * std::max(1.0, std::fabs(mid))) break;
    }
    return 0.5 * (lo + hi);
}

double LocationScaleT::sample(Rng& rng) const {
    const double z = rng.normal();
    const double chi2 = 2.0 * rng.gamma(dof_ / 2.0);
    return location_ + scale_ * z / std::sqrt(chi2 / dof_);
}

std::vector<double> LocationScaleT::sample(Rng& rng, std::size_t count) const {
    std::vector<double> out(count);
    for (auto& v : out) v = sample(rng);
    return out;
}

MultivariateT::MultivariateT(double dof, Eigen::VectorXd location,
                             Eigen::MatrixXd scale)
    : dof_(dof), location_(std::move(location)), scale_(std::move(scale)) {
    if (!(dof > 0.0)) throw std::domain_error("MultivariateT: requires dof > 0");
    if (scale_.rows() != scale_.cols() || scale_.rows() != location_.size())
        throw std::invalid_argument("MultivariateT: dimension mismatch");
    Eigen::LLT<Eigen::MatrixXd> llt(scale_);
    if (llt.info() != Eigen::Success)
        throw std::invalid_argument("MultivariateT: scale matrix must be SPD");
    chol_ = llt.matrixL();
    half_logdet_ = 0.0;
    for (Eigen::Index i = 0; i < chol_.rows(); ++i)
        half_logdet_ += std::log(chol_(i, i));
}

double MultivariateT::log_density(const Eigen::VectorXd& x) const {
    if (x.size() != location_.size())
        throw std::invalid_argument("MultivariateT: dimension mismatch");
    const double d = static_cast<double>(location_.size());
    Eigen::VectorXd w = chol_.triangularView<Eigen::Lower>().solve(x - location_);
    const double q = w.squaredNorm();
    return log_gamma((dof_ + d) / 2.0) - log_gamma(dof_ / 2.0) -
           0.5 * d * std::log(dof_ * M_PI) - half_logdet_ -
           (dof_ + d) / 2.0 * std::log1p(q / dof_);
}

Eigen::MatrixXd MultivariateT::covariance() const {
    if (!(dof_ > 2.0))
        throw std::domain_error("MultivariateT::covariance: requires dof > 2");
    return scale_ * (dof_ / (dof_ - 2.0));
}

Eigen::VectorXd MultivariateT::sample(Rng& rng) const {
    Eigen::VectorXd z(location_.size());
    for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = rng.normal();
    const double chi2 = 2.0 * rng.gamma(dof_ / 2.0);
    return location_ + (chol_ * z) / std::sqrt(chi2 / dof_);
}

} // namespace caketest
