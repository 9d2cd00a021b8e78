#include "caketest/specfun.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace caketest {

namespace {

constexpr double kLnSqrt2Pi = 0.9189385332046727417803297;
constexpr int kMaxIter = 500;
constexpr double kEps = 1e-15;

// Continued fraction for Q(a, x), valid for x > a + 1 (Lentz's method).
// Returns the CF value; Q = exp(-x + a*ln(x) - lnGamma(a)) * cf.
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double f = d;
    for (int i = 1; i <= kMaxIter; ++i) {
        double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double delta = d * c;
        f *= delta;
        if (std::fabs(delta - 1.0) < kEps) return f;
    }
    return f;
}

// Series for P(a, x), valid for x <= a + 1.
// Returns the series value; P = exp(-x + a*ln(x) - lnGamma(a)) * series / a.
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double term = sum;
    for (int i = 0; i < kMaxIter; ++i) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * kEps) break;
    }
    return sum * a; // caller divides by a via the prefactor convention below
}

} // namespace

double log_gamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("log_gamma: requires x > 0");
    return std::lgamma(x);
}

double log_beta(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0))
        throw std::domain_error("log_beta: requires a, b > 0");
    return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

double xi(double x) {
    if (!(x > 0.0)) throw std::domain_error("xi: requires x > 0");
    return log_gamma(x) + x - x * std::log(x) - kLnSqrt2Pi;
}

double gamma_p(double a, double x) {
    if (!(a > 0.0)) throw std::domain_error("gamma_p: requires a > 0");
    if (x < 0.0) throw std::domain_error("gamma_p: requires x >= 0");
    if (x == 0.0) return 0.0;
    double lpre = -x + a * std::log(x) - log_gamma(a);
    if (x < a + 1.0) {
        return std::exp(lpre) * gamma_p_series(a, x) / a;
    }
    return 1.0 - std::exp(lpre) * gamma_q_cf(a, x);
}

double gamma_q(double a, double x) {
    if (!(a > 0.0)) throw std::domain_error("gamma_q: requires a > 0");
    if (x < 0.0) throw std::domain_error("gamma_q: requires x >= 0");
    if (x == 0.0) return 1.0;
    double lpre = -x + a * std::log(x) - log_gamma(a);
    if (x < a + 1.0) {
        return 1.0 - std::exp(lpre) * gamma_p_series(a, x) / a;
    }
    return std::exp(lpre) * gamma_q_cf(a, x);
}

double log_gamma_q(double a, double x) {
    if (!(a > 0.0)) throw std::domain_error("log_gamma_q: requires a > 0");
    if (x < 0.0) throw std::domain_error("log_gamma_q: requires x >= 0");
    if (x == 0.0) return 0.0;
    double lpre = -x + a * std::log(x) - log_gamma(a);
    if (x < a + 1.0) {
        // Q is bounded away from 0 on this branch; go through P.
        double p = std::exp(lpre) * gamma_p_series(a, x) / a;
        return std::log1p(-p);
    }
    return lpre + std::log(gamma_q_cf(a, x));
}

double chi2_sf(double x, double nu) {
    if (!(nu > 0.0)) throw std::domain_error("chi2_sf: requires nu > 0");
    if (x < 0.0) throw std::domain_error("chi2_sf: requires x >= 0");
    return gamma_q(nu / 2.0, x / 2.0);
}

double chi2_log_sf(double x, double nu) {
    if (!(nu > 0.0)) throw std::domain_error("chi2_log_sf: requires nu > 0");
    if (x < 0.0) throw std::domain_error("chi2_log_sf: requires x >= 0");
    return log_gamma_q(nu / 2.0, x / 2.0);
}

double chi2_quantile(double alpha, double nu) {
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw std::domain_error("chi2_quantile: requires alpha in (0,1)");
    if (!(nu > 0.0)) throw std::domain_error("chi2_quantile: requires nu > 0");

    // Wilson-Hilferty start, then Newton on log Q (monotone, well scaled).
    double z = normal_quantile(1.0 - alpha);
    double c = 2.0 / (9.0 * nu);
    double x = nu * std::pow(1.0 - c + z * std::sqrt(c), 3.0);
    if (!(x > 0.0)) x = nu;
    // Newton in t = ln x keeps x > 0 and makes the stopping rule relative,
    // which matters when the quantile underflows toward 0 (alpha near 1).
    const double target = std::log(alpha);
    double t = std::log(x);
    for (int it = 0; it < 200; ++it) {
        x = std::exp(t);
        double lq = chi2_log_sf(x, nu);
        // d/dt log Q = -x pdf(x)/Q(x); log pdf of chi2:
        double lpdf = -0.5 * x + (nu / 2.0 - 1.0) * std::log(x)
                      - (nu / 2.0) * std::log(2.0) - log_gamma(nu / 2.0);
        double deriv = -std::exp(lpdf - lq) * x;
        double step = (lq - target) / deriv;
        if (step > 10.0) step = 10.0;
        if (step < -10.0) step = -10.0;
        t -= step;
        if (std::fabs(step) <= 1e-13 * std::max(1.0, std::fabs(t))) break;
    }
    return std::exp(t);
}

double normal_cdf(double z) {
    return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

double normal_quantile(double p) {
    if (!(p > 0.0) || !(p < 1.0))
        throw std::domain_error("normal_quantile: requires p in (0,1)");
    // Acklam's rational approximation, then one Halley step.
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425, phigh = 1.0 - plow;
    double x;
    if (p < plow) {
        double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= phigh) {
        double q = p - 0.5, r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    // Halley refinement.
    double e = normal_cdf(x) - p;
    double u = e * std::sqrt(2.0 * M_PI) * std::exp(x * x / 2.0);
    x = x - u / (1.0 + x * u / 2.0);
    return x;
}

double inc_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0))
        throw std::domain_error("inc_beta: requires a, b > 0");
    if (x < 0.0 || x > 1.0)
        throw std::domain_error("inc_beta: requires x in [0,1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;

    // Continued fraction (Lentz) with the usual symmetry switch.
    auto betacf = [](double aa, double bb, double xx) {
        const double tiny = 1e-300;
        double qab = aa + bb, qap = aa + 1.0, qam = aa - 1.0;
        double cc = 1.0;
        double dd = 1.0 - qab * xx / qap;
        if (std::fabs(dd) < tiny) dd = tiny;
        dd = 1.0 / dd;
        double f = dd;
        for (int m = 1; m <= kMaxIter; ++m) {
            double m2 = 2.0 * m;
            double aa1 = m * (bb - m) * xx / ((qam + m2) * (aa + m2));
            dd = 1.0 + aa1 * dd;
            if (std::fabs(dd) < tiny) dd = tiny;
            cc = 1.0 + aa1 / cc;
            if (std::fabs(cc) < tiny) cc = tiny;
            dd = 1.0 / dd;
            f *= dd * cc;
            double aa2 = -(aa + m) * (qab + m) * xx / ((aa + m2) * (qap + m2));
            dd = 1.0 + aa2 * dd;
            if (std::fabs(dd) < tiny) dd = tiny;
            cc = 1.0 + aa2 / cc;
            if (std::fabs(cc) < tiny) cc = tiny;
            dd = 1.0 / dd;
            double delta = dd * cc;
            f *= delta;
            if (std::fabs(delta - 1.0) < kEps) break;
        }
        return f;
    };

    double lfront = a * std::log(x) + b * std::log1p(-x) - log_beta(a, b);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return std::exp(lfront) * betacf(a, b, x) / a;
    }
    return 1.0 - std::exp(lfront) * betacf(b, a, 1.0 - x) / b;
}

} // namespace caketest
