#pragma once

// Deterministic counter-based RNG. Every (seed, cell, replicate) triple maps
// to an independent substream, so simulation results do not depend on how
// replicates are scheduled across worker threads.

#include <cmath>
#include <cstdint>

namespace caketest {

namespace detail {
// splitmix64 finalizer (Steele, Lea, Flood 2014).
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}
} // namespace detail

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(detail::mix64(seed)) {}

    static Rng substream(std::uint64_t seed, std::uint64_t cell,
                         std::uint64_t replicate) {
        std::uint64_t s = detail::mix64(seed ^ 0xA5A5A5A5A5A5A5A5ULL);
        s = detail::mix64(s ^ cell * 0x9E3779B97F4A7C15ULL);
        s = detail::mix64(s ^ replicate * 0xC2B2AE3D27D4EB4FULL);
        return Rng(s);
    }

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform on (0, 1), never exactly 0 or 1.
    double uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller (second value cached).
    double normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        double u1 = uniform(), u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * M_PI * u2;
        cached_ = r * std::sin(a);
        have_cached_ = true;
        return r * std::cos(a);
    }

    /// Gamma(shape, 1) via Marsaglia-Tsang; shape > 0.
    double gamma(double shape) {
        if (shape < 1.0) {
            double u = uniform();
            return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x = normal();
            double v = 1.0 + c * x;
            if (v <= 0.0) continue;
            v = v * v * v;
            double u = uniform();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
                return d * v;
        }
    }

    /// Binomial(n, p). Exact inversion for small mean; normal approximation
    /// when n p (1-p) is large (the Sprenger-scale regime, n ~ 1e8).
    long binomial(long n, double p) {
        if (n <= 0 || p <= 0.0) return 0;
        if (p >= 1.0) return n;
        if (p > 0.5) return n - binomial(n, 1.0 - p);
        const double mean = static_cast<double>(n) * p;
        const double var = mean * (1.0 - p);
        if (var > 1000.0) {
            double s = std::round(mean + std::sqrt(var) * normal());
            if (s < 0.0) s = 0.0;
            if (s > static_cast<double>(n)) s = static_cast<double>(n);
            return static_cast<long>(s);
        }
        // BINV inversion from 0.
        const double q = 1.0 - p;
        const double ratio = p / q;
        double f = std::pow(q, static_cast<double>(n));
        double u = uniform();
        long k = 0;
        while (u > f && k < n) {
            u -= f;
            ++k;
            f *= ratio * static_cast<double>(n - k + 1) / static_cast<double>(k);
        }
        return k;
    }

private:
    std::uint64_t state_;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

} // namespace caketest
