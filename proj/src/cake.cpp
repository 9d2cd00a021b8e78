#include "caketest/cake.hpp"

#include "caketest/specfun.hpp"

#include <cmath>
#include <stdexcept>

namespace caketest {

double g_schedule(double h, int d) {
    if (!(h > 0.0)) throw std::domain_error("g_schedule: requires h > 0");
    if (d < 1)
        throw std::domain_error(
            "g_schedule: d must be >= 1; augment a zero-parameter null with "
            "hypothetical data instead");
    return std::pow(h, 1.0 / static_cast<double>(d));
}

double cake_log_density(const Eigen::VectorXd& theta, const Eigen::MatrixXd& P,
                        double g) {
    if (P.rows() != P.cols() || theta.size() != P.rows())
        throw std::invalid_argument("cake_log_density: dimension mismatch");
    if (!(g > 0.0)) throw std::domain_error("cake_log_density: requires g > 0");
    const double d = static_cast<double>(theta.size());
    Eigen::LLT<Eigen::MatrixXd> llt(P);
    if (llt.info() != Eigen::Success)
        throw std::invalid_argument("cake_log_density: P is not SPD");
    double half_logdet = 0.0;
    for (Eigen::Index i = 0; i < P.rows(); ++i)
        half_logdet += std::log(llt.matrixL()(i, i));
    const double quad = theta.dot(P * theta);
    return -0.5 * d * std::log(2.0 * M_PI * g) + half_logdet - quad / (2.0 * g);
}

double penalized_lrt(double lambda_lrt, double nu, long n,
                     const PriorSettings& settings) {
    if (n < 1) throw std::domain_error("penalized_lrt: requires n >= 1");
    return lambda_lrt - nu * std::log(static_cast<double>(n)) + settings.delta;
}

double equivalent_alpha(double nu, long n) {
    if (n < 2) throw std::domain_error("equivalent_alpha: requires n >= 2");
    return chi2_sf(nu * std::log(static_cast<double>(n)), nu);
}

double equivalent_log_alpha(double nu, long n) {
    if (n < 2) throw std::domain_error("equivalent_log_alpha: requires n >= 2");
    return chi2_log_sf(nu * std::log(static_cast<double>(n)), nu);
}

double delta_to_mimic_lrt(double nu, long n, double alpha) {
    if (n < 2) throw std::domain_error("delta_to_mimic_lrt: requires n >= 2");
    return nu * std::log(static_cast<double>(n)) - chi2_quantile(alpha, nu);
}

namespace {

Interpretation interpret(double lambda_bayes) {
    Interpretation out;
    out.direction =
        lambda_bayes > 0.0 ? Decision::prefer_H1 : Decision::prefer_H0;
    const double mag = std::fabs(lambda_bayes);
    if (mag < 2.0)
        out.label = "not worth more than a bare mention";
    else if (mag < 6.0)
        out.label = "positive";
    else if (mag < 10.0)
        out.label = "strong";
    else
        out.label = "very strong";
    return out;
}

} // namespace

TestResult decide(double lambda_bayes, const PriorSettings& settings) {
    TestResult r;
    r.lambda_bayes = lambda_bayes;
    finalize_result(r, settings);
    return r;
}

void finalize_result(TestResult& r, const PriorSettings& settings) {
    if (!(settings.prior_odds > 0.0))
        throw std::domain_error("prior_odds must be > 0");
    r.log_bf01 = -r.lambda_bayes / 2.0;
    r.posterior_odds_01 =
        std::exp(-r.lambda_bayes / 2.0) * settings.prior_odds;
    // Strict inequality: a tie keeps the smaller hypothesis.
    r.decision = r.posterior_odds_01 < 1.0 ? Decision::prefer_H1
                                           : Decision::prefer_H0;
    r.interpretation = interpret(r.lambda_bayes);
}

const char* to_string(Decision d) {
    return d == Decision::prefer_H1 ? "prefer_H1" : "prefer_H0";
}

} // namespace caketest
