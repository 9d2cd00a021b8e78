#pragma once

// Linear-model hypothesis testing and model selection: standardization,
// R^2, the finite-h marginal likelihood / Bayes factor, the BIC-difference
// limit, and coefficient posteriors. All statistics are reported on the
// standardized scale; they are invariant to the units of the raw inputs.

#include "caketest/cake.hpp"
#include "caketest/posteriors.hpp"

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

namespace caketest {

struct ConstantColumn : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConstantResponse : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct RankDeficient : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateFit : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NoValidCandidate : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Binary inclusion vector over the p candidate covariates.
using ModelGamma = std::vector<bool>;

/// Response and design after centering and scaling to ybar = 0,
/// ||y||^2 = n, Xj' 1 = 0, ||Xj||^2 = n. The centering/scaling factors are
/// recorded so posteriors can be mapped back to the raw scale.
struct StandardizedData {
    Eigen::VectorXd y;
    Eigen::MatrixXd X;
    double y_center = 0.0, y_scale = 1.0;        // y = (y_raw - center)/scale
    Eigen::VectorXd x_center, x_scale;           // per column
    long n() const { return y.size(); }
    long p() const { return X.cols(); }
};

StandardizedData standardize(const Eigen::VectorXd& y_raw,
                             const Eigen::MatrixXd& X_raw);

/// R^2 of model gamma on standardized data (0 for the empty model).
double r_squared(const StandardizedData& data, const ModelGamma& m);

/// ln p(y | gamma, g): the closed-form marginal likelihood at diffuseness g.
double log_marginal(const StandardizedData& data, const ModelGamma& m, double g);

/// log BF01(h) between gamma0 (null) and gamma1 (alternative) under the
/// cake schedule g_j = h^{1/(1+|gamma_j|)}.
double bf01_finite_h(const StandardizedData& data, const ModelGamma& g0,
                     const ModelGamma& g1, double h);

/// BIC_gamma = n ln(2 pi sigma_hat^2) - n + |gamma| ln(n), standardized scale.
double bic(const StandardizedData& data, const ModelGamma& m);

/// Limit test between two models: lambda_Bayes = BIC_g0 - BIC_g1.
TestResult linear_test(const StandardizedData& data, const ModelGamma& g0,
                       const ModelGamma& g1, const PriorSettings& settings = {});

struct RankedModel {
    ModelGamma gamma;
    double bic = 0.0;
    double r2 = 0.0;
};

/// Candidates ranked by BIC ascending; ties (|dBIC| <= 1e-9) broken toward
/// smaller |gamma|, then lexicographically. Invalid candidates (rank
/// deficient / degenerate fits) are skipped; throws NoValidCandidate if none
/// survive.
std::vector<RankedModel> select_model(const StandardizedData& data,
                                      const std::vector<ModelGamma>& candidates);

/// All models with |gamma| <= max_size, in lexicographic order.
std::vector<ModelGamma> enumerate_models(long p, long max_size);

/// alpha ~ t_n(0, s^2/n); beta_gamma ~ mv-t_n(beta_hat, s^2 (X'X)^-1);
/// sigma2 ~ IG(n/2, n s^2 / 2) with s^2 = 1 - R^2 (standardized scale).
PosteriorSet linear_posteriors(const StandardizedData& data, const ModelGamma& m);

} // namespace caketest
