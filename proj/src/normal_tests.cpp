#include "caketest/normal_tests.hpp"

#include "caketest/quadrature.hpp"
#include "caketest/specfun.hpp"

#include <cmath>
#include <numeric>

namespace caketest {

namespace {

struct Moments {
    long n = 0;
    double mean = 0.0;
    double sumsq = 0.0;      // ||x||^2
    double mle_var = 0.0;    // n^{-1} ||x - xbar 1||^2
};

Moments moments(std::span<const double> x) {
    Moments m;
    m.n = static_cast<long>(x.size());
    if (m.n < 2) throw DegenerateSample("sample needs n >= 2");
    m.mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(m.n);
    for (double v : x) m.sumsq += v * v;
    double ss = 0.0;
    for (double v : x) ss += (v - m.mean) * (v - m.mean);
    m.mle_var = ss / static_cast<double>(m.n);
    return m;
}

double mle_var_about(std::span<const double> x, double center) {
    double ss = 0.0;
    for (double v : x) ss += (v - center) * (v - center);
    return ss / static_cast<double>(x.size());
}

} // namespace

TestResult one_sample_limit(std::span<const double> x, const OneSampleSpec& spec,
                            const PriorSettings& settings) {
    const Moments m = moments(x);
    if (!(m.mle_var > 0.0))
        throw DegenerateSample("one_sample: zero variance under H1");
    const double s0 = mle_var_about(x, spec.mu0);
    TestResult r;
    r.nu = 1.0;
    r.lambda_lrt =
        static_cast<double>(m.n) * (std::log(s0) - std::log(m.mle_var));
    r.lambda_bayes = penalized_lrt(r.lambda_lrt, r.nu, m.n, settings);
    finalize_result(r, settings);
    return r;
}

double one_sample_finite_h(std::span<const double> x, const OneSampleSpec& spec,
                           double h, bool equal_g_diagnostic) {
    if (!(h > 0.0)) throw std::domain_error("one_sample_finite_h: h > 0");
    const Moments m = moments(x);
    if (!(m.mle_var > 0.0))
        throw DegenerateSample("one_sample: zero variance under H1");
    const double n = static_cast<double>(m.n);
    const double s0 = mle_var_about(x, spec.mu0);
    const double g0 = equal_g_diagnostic ? h : g_schedule(h, 1);
    const double g1 = equal_g_diagnostic ? h : g_schedule(h, 2);

    // shrunken variance under H1 at diffuseness g:
    //   n^{-1} [ ||x||^2 - (n xbar)^2 / (n + 1/g) ]
    const double sg =
        (m.sumsq - (n * m.mean) * (n * m.mean) / (n + 1.0 / g1)) / n;

    const double lcommon = -0.5 * n * std::log(2.0 * M_PI);
    auto h0_integrand = [&](double v) {
        return lcommon - (n / 2.0 + 1.0) * std::log(v) - n * s0 / (2.0 * v) -
               0.5 * std::log(4.0 * M_PI * g0) -
               std::log(v) * std::log(v) / (4.0 * g0);
    };
    auto h1_integrand = [&](double v) {
        return lcommon - (n / 2.0 + 1.0) * std::log(v) - n * sg / (2.0 * v) -
               0.5 * std::log(4.0 * M_PI * g1 * g1) -
               std::log(v) * std::log(v) / (4.0 * g1) -
               0.5 * std::log(n + 1.0 / g1);
    };
    auto r0 = integrate_log_over_positive_halfline(h0_integrand, 1e-10);
    auto r1 = integrate_log_over_positive_halfline(h1_integrand, 1e-10);
    return r0.log_value - r1.log_value;
}

PosteriorSet one_sample_posteriors(std::span<const double> x,
                                   const OneSampleSpec& spec) {
    const Moments m = moments(x);
    if (!(m.mle_var > 0.0))
        throw DegenerateSample("one_sample: zero variance under H1");
    const double n = static_cast<double>(m.n);
    const double s0 = mle_var_about(x, spec.mu0);
    PosteriorSet ps;
    ps.inverse_gammas.emplace("H0:sigma2", InverseGamma(n / 2.0, n * s0 / 2.0));
    ps.student_ts.emplace("H1:mu", LocationScaleT(n, m.mean, m.mle_var / n));
    ps.inverse_gammas.emplace("H1:sigma2",
                              InverseGamma(n / 2.0, n * m.mle_var / 2.0));
    return ps;
}

TwoSampleResult two_sample(const TwoSampleData& data,
                           const PriorSettings& settings) {
    const Moments m0 = moments(data.x0);
    const Moments m1 = moments(data.x1);
    std::vector<double> pooled(data.x0.begin(), data.x0.end());
    pooled.insert(pooled.end(), data.x1.begin(), data.x1.end());
    const Moments mp = moments(pooled);
    if (!(m0.mle_var > 0.0) || !(m1.mle_var > 0.0) || !(mp.mle_var > 0.0))
        throw DegenerateSample("two_sample: zero variance in a group or pooled");

    const double n = static_cast<double>(mp.n);
    const double n0 = static_cast<double>(m0.n);
    const double n1 = static_cast<double>(m1.n);

    TwoSampleResult out;
    out.exact.nu = 2.0;
    out.exact.lambda_lrt = n * std::log(mp.mle_var) -
                           n0 * std::log(m0.mle_var) -
                           n1 * std::log(m1.mle_var);
    const double exact_penalty = -3.0 * std::log(n) - 2.0 * xi(n / 2.0) +
                                 2.0 * xi(n0 / 2.0) + 2.0 * xi(n1 / 2.0) +
                                 std::log(n0 * n1 / 2.0);
    out.exact.lambda_bayes =
        out.exact.lambda_lrt + exact_penalty + settings.delta;
    finalize_result(out.exact, settings);
    out.lambda_bayes_asymptotic =
        penalized_lrt(out.exact.lambda_lrt, 2.0, mp.n, settings);
    return out;
}

PosteriorSet two_sample_posteriors(const TwoSampleData& data) {
    const Moments m0 = moments(data.x0);
    const Moments m1 = moments(data.x1);
    std::vector<double> pooled(data.x0.begin(), data.x0.end());
    pooled.insert(pooled.end(), data.x1.begin(), data.x1.end());
    const Moments mp = moments(pooled);
    if (!(m0.mle_var > 0.0) || !(m1.mle_var > 0.0) || !(mp.mle_var > 0.0))
        throw DegenerateSample("two_sample: zero variance in a group or pooled");
    const double n = static_cast<double>(mp.n);
    const double n0 = static_cast<double>(m0.n);
    const double n1 = static_cast<double>(m1.n);
    PosteriorSet ps;
    ps.student_ts.emplace("H0:mu", LocationScaleT(n, mp.mean, mp.mle_var / n));
    ps.inverse_gammas.emplace("H0:sigma2",
                              InverseGamma(n / 2.0, n * mp.mle_var / 2.0));
    ps.student_ts.emplace("H1:mu0",
                          LocationScaleT(n0, m0.mean, m0.mle_var / n0));
    ps.student_ts.emplace("H1:mu1",
                          LocationScaleT(n1, m1.mean, m1.mle_var / n1));
    ps.inverse_gammas.emplace("H1:sigma2_0",
                              InverseGamma(n0 / 2.0, n0 * m0.mle_var / 2.0));
    ps.inverse_gammas.emplace("H1:sigma2_1",
                              InverseGamma(n1 / 2.0, n1 * m1.mle_var / 2.0));
    return ps;
}

TestResult z_test_augmented(std::span<const double> x, double mu0, double sigma2,
                            const PriorSettings& settings) {
    if (!(sigma2 > 0.0)) throw std::domain_error("z_test_augmented: sigma2 > 0");
    const Moments m = moments(x);
    const double n = static_cast<double>(m.n);

    TestResult r;
    r.nu = 1.0;
    // lambda_LRT = sigma^{-2} (||x - mu0||^2 - ||x - xbar||^2) = z(x)^2.
    const double ss0 = n * mle_var_about(x, mu0);
    const double ss1 = n * m.mle_var;
    r.lambda_lrt = (ss0 - ss1) / sigma2;

    if (!settings.h_is_finite()) {
        r.lambda_bayes = penalized_lrt(r.lambda_lrt, r.nu, m.n, settings);
    } else {
        // -2 ln BF01(h) from the four closed-form log-marginals. The
        // hypothetical sample's data terms are identical under H0 and H1 up
        // to the diffuseness in the shrinkage denominator and cancel in the
        // limit; only the deterministic h-terms are kept.
        const double h = *settings.h;
        const double shrunk1 =
            m.sumsq - (n * m.mean) * (n * m.mean) / (n + 1.0 / std::sqrt(h));
        r.lambda_bayes = (ss0 - shrunk1) / sigma2 + std::log(n + 1.0 / h) -
                         2.0 * std::log(n + 1.0 / std::sqrt(h)) +
                         settings.delta;
    }
    finalize_result(r, settings);
    return r;
}

LindleyResult lindley_bf(double xbar, long n, double mu0, double sigma2,
                         double tau2) {
    if (!(sigma2 > 0.0) || !(tau2 > 0.0))
        throw std::domain_error("lindley_bf: requires sigma2, tau2 > 0");
    if (n < 1) throw std::domain_error("lindley_bf: requires n >= 1");
    const double nn = static_cast<double>(n);
    const double z = std::sqrt(nn) * (xbar - mu0) / std::sqrt(sigma2);
    LindleyResult out;
    out.lambda_bayes = nn * z * z / (nn + sigma2 / tau2) -
                       std::log1p(nn * tau2 / sigma2);
    out.bf01 = std::exp(-out.lambda_bayes / 2.0);
    return out;
}

} // namespace caketest
