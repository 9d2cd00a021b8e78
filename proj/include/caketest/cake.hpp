#pragma once

// The cake-prior machinery: prior density, the diffuseness schedule
// g_j = h^(1/d_j), the penalized-LRT form of the Bayesian test statistic,
// the decision rule and the equivalent frequentist level.

#include <Eigen/Dense>
#include <optional>
#include <string>

namespace caketest {

/// Hyperparameters governing every test. h absent means h = infinity
/// (the analytic-limit code path).
struct PriorSettings {
    std::optional<double> h;  // finite diffuseness; nullopt = infinite
    double delta = 0.0;       // arbitrary-constant offset added to lambda_Bayes
    double prior_odds = 1.0;  // p(H0)/p(H1)

    bool h_is_finite() const { return h.has_value(); }
};

enum class Decision { prefer_H0, prefer_H1 };

/// Kass-Raftery evidence bands on |lambda_Bayes|, with the direction of the
/// evidence carried separately (the bands themselves are symmetric).
struct Interpretation {
    Decision direction = Decision::prefer_H0;
    std::string label; // "not worth more than a bare mention", "positive", ...
};

struct TestResult {
    double lambda_bayes = 0.0;
    double lambda_lrt = 0.0;
    double nu = 0.0;
    double log_bf01 = 0.0;       // = -lambda_bayes / 2
    double posterior_odds_01 = 0.0;
    Decision decision = Decision::prefer_H0;
    Interpretation interpretation;
};

/// g_j = h^(1/d); throws std::domain_error for d = 0 (use the hypothetical
/// data augmentation instead).
double g_schedule(double h, int d);

/// Log density of the cake prior (normal with precision P/g):
///   -(d/2) ln(2 pi g) + (1/2) ln|P| - theta' P theta / (2g).
double cake_log_density(const Eigen::VectorXd& theta, const Eigen::MatrixXd& P,
                        double g);

/// lambda_LRT - nu ln(n) + delta.
double penalized_lrt(double lambda_lrt, double nu, long n,
                     const PriorSettings& settings);

/// The frequentist level of the limit Bayesian test: P[Chi2_nu >= nu ln n].
double equivalent_alpha(double nu, long n);
double equivalent_log_alpha(double nu, long n);

/// Delta making the Bayesian decision coincide with the level-alpha LRT:
///   nu ln(n) - chi2_quantile(alpha, nu).
double delta_to_mimic_lrt(double nu, long n, double alpha);

/// Decision, posterior odds and evidence label for a given lambda_Bayes.
/// A tie (posterior odds exactly 1) resolves to prefer_H0.
TestResult decide(double lambda_bayes, const PriorSettings& settings);

/// Fills the decision/odds/interpretation fields of a TestResult whose
/// statistic fields are already set.
void finalize_result(TestResult& r, const PriorSettings& settings);

const char* to_string(Decision d);

} // namespace caketest
