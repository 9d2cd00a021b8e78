#include "caketest/linear_model.hpp"

#include "caketest/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace caketest {

namespace {

long model_size(const ModelGamma& m) {
    return static_cast<long>(std::count(m.begin(), m.end(), true));
}

Eigen::MatrixXd selected_columns(const StandardizedData& data,
                                 const ModelGamma& m) {
    if (static_cast<long>(m.size()) != data.p())
        throw std::invalid_argument("gamma length must equal number of columns");
    Eigen::MatrixXd Xg(data.n(), model_size(m));
    long j = 0;
    for (std::size_t k = 0; k < m.size(); ++k)
        if (m[k]) Xg.col(j++) = data.X.col(static_cast<long>(k));
    return Xg;
}

// QR solve with rank check; returns beta_hat.
Eigen::VectorXd fit(const StandardizedData& data, const Eigen::MatrixXd& Xg) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(Xg);
    qr.setThreshold(static_cast<double>(data.n()) *
                    std::numeric_limits<double>::epsilon());
    if (qr.rank() < Xg.cols())
        throw RankDeficient("selected design columns are rank deficient");
    return qr.solve(data.y);
}

} // namespace

StandardizedData standardize(const Eigen::VectorXd& y_raw,
                             const Eigen::MatrixXd& X_raw) {
    const long n = y_raw.size();
    if (X_raw.rows() != n)
        throw std::invalid_argument("standardize: y and X row counts differ");
    if (n <= X_raw.cols() + 1)
        throw std::invalid_argument("standardize: requires n > p + 1");
    StandardizedData out;
    const double nd = static_cast<double>(n);

    out.y_center = y_raw.mean();
    Eigen::VectorXd yc = y_raw.array() - out.y_center;
    const double ynorm2 = yc.squaredNorm();
    if (!(ynorm2 > 0.0)) throw ConstantResponse("response is constant");
    out.y_scale = std::sqrt(ynorm2 / nd);
    out.y = yc / out.y_scale;

    const long p = X_raw.cols();
    out.X.resize(n, p);
    out.x_center.resize(p);
    out.x_scale.resize(p);
    for (long j = 0; j < p; ++j) {
        out.x_center(j) = X_raw.col(j).mean();
        Eigen::VectorXd xc = X_raw.col(j).array() - out.x_center(j);
        const double norm2 = xc.squaredNorm();
        if (!(norm2 > 0.0))
            throw ConstantColumn("covariate column " + std::to_string(j) +
                                 " is constant");
        out.x_scale(j) = std::sqrt(norm2 / nd);
        out.X.col(j) = xc / out.x_scale(j);
    }
    return out;
}

double r_squared(const StandardizedData& data, const ModelGamma& m) {
    if (model_size(m) == 0) {
        if (static_cast<long>(m.size()) != data.p())
            throw std::invalid_argument("gamma length must equal column count");
        return 0.0;
    }
    Eigen::MatrixXd Xg = selected_columns(data, m);
    Eigen::VectorXd beta = fit(data, Xg);
    // ||y||^2 = n on the standardized scale.
    return (data.y.dot(Xg * beta)) / static_cast<double>(data.n());
}

double log_marginal(const StandardizedData& data, const ModelGamma& m,
                    double g) {
    if (!(g > 0.0)) throw std::domain_error("log_marginal: requires g > 0");
    const double n = static_cast<double>(data.n());
    const double r2 = r_squared(data, m);
    if (r2 >= 1.0 - 1e-12)
        throw DegenerateFit("R^2 = 1: response lies in the model span");
    const double k = 1.0 + static_cast<double>(model_size(m));
    return log_gamma(n / 2.0) - (n / 2.0) * std::log(n * M_PI) -
           (k / 2.0) * std::log(g) - (k / 2.0) * std::log(n + 1.0 / g) -
           (n / 2.0) * std::log1p(-(g / (1.0 + g)) * r2);
}

double bf01_finite_h(const StandardizedData& data, const ModelGamma& g0,
                     const ModelGamma& g1, double h) {
    if (!(h > 0.0)) throw std::domain_error("bf01_finite_h: requires h > 0");
    const int d0 = 1 + static_cast<int>(model_size(g0));
    const int d1 = 1 + static_cast<int>(model_size(g1));
    return log_marginal(data, g0, g_schedule(h, d0)) -
           log_marginal(data, g1, g_schedule(h, d1));
}

double bic(const StandardizedData& data, const ModelGamma& m) {
    const double n = static_cast<double>(data.n());
    const double r2 = r_squared(data, m);
    const double s2 = 1.0 - r2;
    if (!(s2 > 1e-12))
        throw DegenerateFit("R^2 = 1: BIC undefined");
    return n * std::log(2.0 * M_PI * s2) - n +
           static_cast<double>(model_size(m)) * std::log(n);
}

TestResult linear_test(const StandardizedData& data, const ModelGamma& g0,
                       const ModelGamma& g1, const PriorSettings& settings) {
    const double n = static_cast<double>(data.n());
    const double s20 = 1.0 - r_squared(data, g0);
    const double s21 = 1.0 - r_squared(data, g1);
    if (!(s20 > 1e-12) || !(s21 > 1e-12))
        throw DegenerateFit("R^2 = 1 in one of the models");
    TestResult r;
    r.nu = static_cast<double>(model_size(g1) - model_size(g0));
    r.lambda_lrt = n * std::log(s20) - n * std::log(s21);
    r.lambda_bayes = r.lambda_lrt - r.nu * std::log(n) + settings.delta;
    finalize_result(r, settings);
    return r;
}

std::vector<RankedModel> select_model(
    const StandardizedData& data, const std::vector<ModelGamma>& candidates) {
    std::vector<RankedModel> ranked;
    for (const auto& m : candidates) {
        try {
            RankedModel rm;
            rm.gamma = m;
            rm.r2 = r_squared(data, m);
            rm.bic = bic(data, m);
            ranked.push_back(std::move(rm));
        } catch (const RankDeficient&) {
        } catch (const DegenerateFit&) {
        }
    }
    if (ranked.empty()) throw NoValidCandidate("no candidate model is valid");
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const RankedModel& a, const RankedModel& b) {
                         if (std::fabs(a.bic - b.bic) > 1e-9)
                             return a.bic < b.bic;
                         long sa = static_cast<long>(
                             std::count(a.gamma.begin(), a.gamma.end(), true));
                         long sb = static_cast<long>(
                             std::count(b.gamma.begin(), b.gamma.end(), true));
                         if (sa != sb) return sa < sb;
                         return a.gamma < b.gamma;
                     });
    return ranked;
}

std::vector<ModelGamma> enumerate_models(long p, long max_size) {
    std::vector<ModelGamma> out;
    const long total = 1L << p;
    for (long bits = 0; bits < total; ++bits) {
        ModelGamma m(static_cast<std::size_t>(p), false);
        long count = 0;
        for (long j = 0; j < p; ++j)
            if (bits & (1L << j)) {
                m[static_cast<std::size_t>(j)] = true;
                ++count;
            }
        if (count <= max_size) out.push_back(std::move(m));
    }
    std::sort(out.begin(), out.end());
    return out;
}

PosteriorSet linear_posteriors(const StandardizedData& data,
                               const ModelGamma& m) {
    const double n = static_cast<double>(data.n());
    const double s2 = 1.0 - r_squared(data, m);
    if (!(s2 > 1e-12)) throw DegenerateFit("R^2 = 1: posteriors undefined");
    PosteriorSet ps;
    ps.student_ts.emplace("alpha", LocationScaleT(n, 0.0, s2 / n));
    ps.inverse_gammas.emplace("sigma2", InverseGamma(n / 2.0, n * s2 / 2.0));
    if (model_size(m) > 0) {
        Eigen::MatrixXd Xg = selected_columns(data, m);
        Eigen::VectorXd beta = fit(data, Xg);
        Eigen::MatrixXd cov = s2 * (Xg.transpose() * Xg).inverse();
        ps.multivariate_ts.emplace("beta", MultivariateT(n, beta, cov));
    }
    return ps;
}

} // namespace caketest
