#include "caketest/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace caketest {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTailDropNats = 45.0; // truncation below 1e-19 relative

// log-sum-exp of midpoint-rule samples of g on [lo, hi] with N panels,
// plus ln(h). Shift-invariant: g -> g + c changes the result by exactly c.
double log_midpoint(const std::function<double(double)>& g, double lo,
                    double hi, std::size_t n, std::size_t& evals) {
    const double h = (hi - lo) / static_cast<double>(n);
    std::vector<double> vals(n);
    double gmax = -kInf;
    for (std::size_t i = 0; i < n; ++i) {
        double u = lo + (static_cast<double>(i) + 0.5) * h;
        vals[i] = g(u);
        gmax = std::max(gmax, vals[i]);
    }
    evals += n;
    if (!std::isfinite(gmax)) return -kInf;
    double s = 0.0;
    for (double v : vals) s += std::exp(v - gmax);
    return gmax + std::log(s) + std::log(h);
}

} // namespace

QuadratureResult integrate_log_over_positive_halfline(const LogIntegrand& f,
                                                      double rel_tol) {
    if (!(rel_tol > 1e-13) || !(rel_tol < 1e-2))
        throw std::invalid_argument("rel_tol must lie in (1e-13, 1e-2)");

    QuadratureResult res;
    // Transformed log-integrand: u = ln(v), Jacobian e^u.
    auto g = [&](double u) { return f(std::exp(u)) + u; };

    // Coarse scan for the mode.
    double lo = -60.0, hi = 60.0;
    const double step = 0.5;
    double best_u = 0.0, best_g = -kInf;
    for (double u = lo; u <= hi; u += step) {
        double v = g(u);
        ++res.evaluations;
        if (v > best_g) {
            best_g = v;
            best_u = u;
        }
    }
    // Expand outward if the maximum sits on the scan boundary.
    for (int round = 0; round < 6 && (best_u <= lo + step || best_u >= hi - step); ++round) {
        lo *= 2.0;
        hi *= 2.0;
        for (double u = lo; u <= hi; u += step * 4.0) {
            double v = g(u);
            ++res.evaluations;
            if (v > best_g) {
                best_g = v;
                best_u = u;
            }
        }
    }
    if (!std::isfinite(best_g))
        throw DegenerateIntegrand("integrand has no finite maximum");

    // Golden-section refinement around the scan winner.
    {
        const double invphi = 0.6180339887498949;
        double a = best_u - step, b = best_u + step;
        double c = b - invphi * (b - a), d = a + invphi * (b - a);
        double gc = g(c), gd = g(d);
        res.evaluations += 2;
        for (int it = 0; it < 80 && (b - a) > 1e-10; ++it) {
            if (gc > gd) {
                b = d;
                d = c;
                gd = gc;
                c = b - invphi * (b - a);
                gc = g(c);
            } else {
                a = c;
                c = d;
                gc = gd;
                d = a + invphi * (b - a);
                gd = g(d);
            }
            ++res.evaluations;
        }
        double u = 0.5 * (a + b);
        double gu = g(u);
        ++res.evaluations;
        if (gu > best_g) {
            best_g = gu;
            best_u = u;
        }
    }

    // Window doubling until the log-integrand drops kTailDropNats below the
    // mode on both sides.
    double w = 1.0;
    for (int it = 0; it < 60; ++it) {
        double gl = g(best_u - w), gr = g(best_u + w);
        res.evaluations += 2;
        bool left_ok = !(gl > best_g - kTailDropNats);
        bool right_ok = !(gr > best_g - kTailDropNats);
        if (left_ok && right_ok) break;
        w *= 2.0;
        if (it == 59)
            throw DegenerateIntegrand("integrand tails do not decay");
    }
    const double a = best_u - w, b = best_u + w;

    // Midpoint rule with panel doubling; stop when successive refinements
    // agree to rel_tol in the log (== relative error of the integral).
    const double tol = 0.5 * rel_tol;
    double prev = log_midpoint(g, a, b, 64, res.evaluations);
    for (std::size_t n = 128; n <= (1u << 21); n *= 2) {
        double cur = log_midpoint(g, a, b, n, res.evaluations);
        double diff = std::fabs(cur - prev);
        if (diff <= tol) {
            res.log_value = cur;
            res.abs_log_error_estimate = diff;
            return res;
        }
        prev = cur;
    }
    throw NonConvergent("quadrature did not reach the requested tolerance");
}

} // namespace caketest
