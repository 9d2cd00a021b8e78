#include "caketest/simulate.hpp"

#include "caketest/binomial_test.hpp"
#include "caketest/normal_tests.hpp"
#include "caketest/posteriors.hpp"
#include "caketest/rng.hpp"
#include "caketest/specfun.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace caketest {

const char* to_string(Family f) {
    switch (f) {
        case Family::one_sample: return "one_sample";
        case Family::two_sample: return "two_sample";
        case Family::binomial: return "binomial";
        case Family::z_known_variance: return "z_known_variance";
    }
    return "?";
}

Family family_from_string(const std::string& name) {
    if (name == "one_sample") return Family::one_sample;
    if (name == "two_sample") return Family::two_sample;
    if (name == "binomial") return Family::binomial;
    if (name == "z_known_variance" || name == "z") return Family::z_known_variance;
    throw std::invalid_argument("unknown family: " + name);
}

double SimCell::bayes_rate() const {
    long ok = replicates - errors;
    return ok > 0 ? static_cast<double>(bayes_prefer_h1) / ok : 0.0;
}
double SimCell::lrt_rate() const {
    long ok = replicates - errors;
    return ok > 0 ? static_cast<double>(lrt_reject) / ok : 0.0;
}
double SimCell::disagree_rate() const {
    long ok = replicates - errors;
    return ok > 0 ? static_cast<double>(disagree) / ok : 0.0;
}
double SimCell::standard_error() const {
    long ok = replicates - errors;
    if (ok <= 0) return 0.0;
    double p = bayes_rate();
    return std::sqrt(p * (1.0 - p) / static_cast<double>(ok));
}

namespace {

struct CellSpec {
    double truth;
    long n, n0, n1;
};

struct Outcome {
    bool bayes_h1 = false;
    bool lrt_reject = false;
    bool error = false;
};

Outcome run_replicate(const Scenario& s, const CellSpec& cell,
                      double lrt_cutoff, Rng& rng) {
    Outcome out;
    try {
        switch (s.family) {
            case Family::one_sample: {
                std::vector<double> x(static_cast<std::size_t>(cell.n));
                for (auto& v : x) v = cell.truth + rng.normal();
                TestResult r = one_sample_limit(x, {s.mu0}, s.settings);
                out.bayes_h1 = r.decision == Decision::prefer_H1;
                out.lrt_reject = r.lambda_lrt > lrt_cutoff;
                break;
            }
            case Family::z_known_variance: {
                const double sd = std::sqrt(s.sigma2);
                std::vector<double> x(static_cast<std::size_t>(cell.n));
                for (auto& v : x) v = cell.truth + sd * rng.normal();
                TestResult r = z_test_augmented(x, s.mu0, s.sigma2, s.settings);
                out.bayes_h1 = r.decision == Decision::prefer_H1;
                out.lrt_reject = r.lambda_lrt > lrt_cutoff;
                break;
            }
            case Family::two_sample: {
                const double sd0 = std::sqrt(s.sigma2);
                const double mu1 = s.vary_sigma ? 0.0 : cell.truth;
                const double sd1 = s.vary_sigma ? cell.truth : sd0;
                TwoSampleData d;
                d.x0.resize(static_cast<std::size_t>(cell.n0));
                d.x1.resize(static_cast<std::size_t>(cell.n1));
                for (auto& v : d.x0) v = s.mu0 + sd0 * rng.normal();
                for (auto& v : d.x1) v = mu1 + sd1 * rng.normal();
                TwoSampleResult r = two_sample(d, s.settings);
                out.bayes_h1 = r.exact.decision == Decision::prefer_H1;
                out.lrt_reject = r.exact.lambda_lrt > lrt_cutoff;
                break;
            }
            case Family::binomial: {
                long succ = rng.binomial(cell.n, cell.truth);
                BinomialCount c{succ, cell.n};
                TestResult r = binomial_jeffreys(c, s.settings);
                out.bayes_h1 = r.decision == Decision::prefer_H1;
                if (succ == 0 || succ == cell.n)
                    out.lrt_reject = true; // boundary count: trivially extreme
                else
                    out.lrt_reject = binomial_lrt(c) > lrt_cutoff;
                break;
            }
        }
    } catch (const std::exception&) {
        out.error = true;
    }
    return out;
}

unsigned resolve_workers(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("CAKETEST_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

std::string fmt10(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

} // namespace

SimResult run_scenario(const Scenario& s, unsigned worker_count) {
    if (s.replicates < 1) throw std::invalid_argument("replicates must be >= 1");
    if (!(s.alpha > 0.0) || !(s.alpha < 1.0))
        throw std::invalid_argument("alpha must lie in (0,1)");
    if (s.truth.empty()) throw std::invalid_argument("empty truth grid");

    std::vector<CellSpec> cells;
    if (s.family == Family::two_sample) {
        std::vector<std::pair<long, long>> pairs = s.n_pairs;
        for (long n : s.n_grid) pairs.emplace_back(n / 2, n - n / 2);
        if (pairs.empty()) throw std::invalid_argument("empty n grid");
        for (double t : s.truth)
            for (auto [n0, n1] : pairs) cells.push_back({t, n0 + n1, n0, n1});
    } else {
        if (s.n_grid.empty()) throw std::invalid_argument("empty n grid");
        for (double t : s.truth)
            for (long n : s.n_grid) cells.push_back({t, n, 0, 0});
    }

    const double nu = s.family == Family::two_sample ? 2.0 : 1.0;
    const double chi2_cutoff = chi2_quantile(s.alpha, nu);
    // For the one-sample family the LRT statistic is a monotone function of
    // the t statistic, lambda = n ln(1 + t^2/(n-1)), so the level-alpha LRT
    // can be calibrated exactly instead of through the chi-square asymptotics
    // (which are visibly anti-conservative at n = 15).
    auto cutoff_for = [&](const CellSpec& cell) {
        if (s.family != Family::one_sample) return chi2_cutoff;
        double n = static_cast<double>(cell.n);
        LocationScaleT t(n - 1.0, 0.0, 1.0);
        double tq = t.quantile(1.0 - s.alpha / 2.0);
        return n * std::log1p(tq * tq / (n - 1.0));
    };

    SimResult result;
    result.scenario = s;
    result.cells.resize(cells.size());

    const unsigned workers = resolve_workers(worker_count);
    for (std::size_t ci = 0; ci < cells.size(); ++ci) {
        const CellSpec& cell = cells[ci];
        SimCell& out = result.cells[ci];
        out.family = s.family;
        out.truth = cell.truth;
        out.n = cell.n;
        out.n0 = cell.n0;
        out.n1 = cell.n1;
        out.replicates = s.replicates;
        const double lrt_cutoff = cutoff_for(cell);

        std::atomic<long> next_chunk{0};
        const long chunk = 256;
        const long chunks = (s.replicates + chunk - 1) / chunk;
        std::atomic<long> bayes{0}, lrt{0}, dis{0}, errs{0};

        auto worker = [&]() {
            long lb = 0, ll = 0, ld = 0, le = 0;
            for (;;) {
                long c = next_chunk.fetch_add(1);
                if (c >= chunks) break;
                long lo = c * chunk;
                long hi = std::min(lo + chunk, s.replicates);
                for (long rep = lo; rep < hi; ++rep) {
                    Rng rng = Rng::substream(s.seed, static_cast<std::uint64_t>(ci),
                                             static_cast<std::uint64_t>(rep));
                    Outcome o = run_replicate(s, cell, lrt_cutoff, rng);
                    if (o.error) {
                        ++le;
                        continue;
                    }
                    if (o.bayes_h1) ++lb;
                    if (o.lrt_reject) ++ll;
                    if (o.bayes_h1 != o.lrt_reject) ++ld;
                }
            }
            bayes += lb;
            lrt += ll;
            dis += ld;
            errs += le;
        };

        std::vector<std::thread> pool;
        for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
        worker();
        for (auto& t : pool) t.join();

        out.bayes_prefer_h1 = bayes.load();
        out.lrt_reject = lrt.load();
        out.disagree = dis.load();
        out.errors = errs.load();
    }
    return result;
}

Scenario parse_scenario(std::istream& in) {
    Scenario s;
    bool have_family = false;
    std::string line;
    long lineno = 0;
    auto split_list = [](const std::string& v) {
        std::vector<std::string> out;
        std::stringstream ss(v);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item.erase(0, item.find_first_not_of(" \t"));
            item.erase(item.find_last_not_of(" \t") + 1);
            if (!item.empty()) out.push_back(item);
        }
        return out;
    };
    std::vector<long> n0s, n1s;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto eq = line.find('=');
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        if (eq == std::string::npos)
            throw std::invalid_argument("scenario line " + std::to_string(lineno) +
                                        ": expected key = value");
        std::string key = line.substr(0, eq), val = line.substr(eq + 1);
        auto trim = [](std::string& t) {
            t.erase(0, t.find_first_not_of(" \t\r\n"));
            t.erase(t.find_last_not_of(" \t\r\n") + 1);
        };
        trim(key);
        trim(val);
        try {
            if (key == "family") {
                s.family = family_from_string(val);
                have_family = true;
            } else if (key == "truth") {
                for (const auto& t : split_list(val)) s.truth.push_back(std::stod(t));
            } else if (key == "vary") {
                if (val == "sigma") s.vary_sigma = true;
                else if (val == "mu") s.vary_sigma = false;
                else throw std::invalid_argument("vary must be mu or sigma");
            } else if (key == "n") {
                for (const auto& t : split_list(val)) s.n_grid.push_back(std::stol(t));
            } else if (key == "n0") {
                for (const auto& t : split_list(val)) n0s.push_back(std::stol(t));
            } else if (key == "n1") {
                for (const auto& t : split_list(val)) n1s.push_back(std::stol(t));
            } else if (key == "replicates") {
                s.replicates = std::stol(val);
            } else if (key == "seed") {
                s.seed = static_cast<std::uint64_t>(std::stoull(val));
            } else if (key == "alpha") {
                s.alpha = std::stod(val);
            } else if (key == "h") {
                if (val == "inf") s.settings.h.reset();
                else s.settings.h = std::stod(val);
            } else if (key == "delta") {
                s.settings.delta = std::stod(val);
            } else if (key == "prior_odds") {
                s.settings.prior_odds = std::stod(val);
            } else if (key == "mu0") {
                s.mu0 = std::stod(val);
            } else if (key == "sigma2") {
                s.sigma2 = std::stod(val);
            } else {
                throw std::invalid_argument("unknown key '" + key + "'");
            }
        } catch (const std::invalid_argument&) {
            throw;
        } catch (const std::exception& e) {
            throw std::invalid_argument("scenario line " + std::to_string(lineno) +
                                        ": " + e.what());
        }
    }
    if (!have_family) throw std::invalid_argument("scenario: missing family");
    if (n0s.size() != n1s.size())
        throw std::invalid_argument("scenario: n0 and n1 lists differ in length");
    for (std::size_t i = 0; i < n0s.size(); ++i)
        s.n_pairs.emplace_back(n0s[i], n1s[i]);
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open scenario file: " + path);
    return parse_scenario(f);
}

void emit_figure_data(const SimResult& result, std::ostream& out) {
    out << "family,truth,n,bayes_rate,lrt_rate,disagree_rate,se\r\n";
    for (const auto& c : result.cells) {
        out << to_string(c.family) << ',' << fmt10(c.truth) << ',' << c.n << ','
            << fmt10(c.bayes_rate()) << ',' << fmt10(c.lrt_rate()) << ','
            << fmt10(c.disagree_rate()) << ',' << fmt10(c.standard_error())
            << "\r\n";
    }
}

void emit_figure_svg(const SimResult& result, std::ostream& out) {
    const double W = 640, H = 420, ml = 60, mr = 20, mt = 20, mb = 50;
    double nmin = 1e300, nmax = -1e300;
    for (const auto& c : result.cells) {
        nmin = std::min(nmin, static_cast<double>(c.n));
        nmax = std::max(nmax, static_cast<double>(c.n));
    }
    if (!(nmax > nmin)) nmax = nmin + 1.0;
    auto sx = [&](double n) {
        return ml + (std::log(n) - std::log(nmin)) /
                        (std::log(nmax) - std::log(nmin)) * (W - ml - mr);
    };
    auto sy = [&](double r) { return H - mb - r * (H - mt - mb); };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
        << "\" height=\"" << H << "\">\n";
    out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << W - ml - mr
        << "\" height=\"" << H - mt - mb
        << "\" fill=\"none\" stroke=\"black\"/>\n";

    std::vector<double> truths;
    for (const auto& c : result.cells)
        if (std::find(truths.begin(), truths.end(), c.truth) == truths.end())
            truths.push_back(c.truth);
    static const char* colors[] = {"#1b6ca8", "#c23b22", "#2e8540",
                                   "#8031a7", "#b8860b", "#444444"};
    int ti = 0;
    for (double t : truths) {
        const char* color = colors[ti % 6];
        for (int series = 0; series < 2; ++series) {
            out << "<polyline fill=\"none\" stroke=\"" << color
                << "\" stroke-dasharray=\"" << (series ? "6,4" : "none")
                << "\" points=\"";
            for (const auto& c : result.cells) {
                if (c.truth != t) continue;
                double r = series ? c.lrt_rate() : c.bayes_rate();
                out << sx(static_cast<double>(c.n)) << ',' << sy(r) << ' ';
            }
            out << "\"/>\n";
        }
        out << "<text x=\"" << W - mr - 120 << "\" y=\"" << mt + 16 + 16 * ti
            << "\" fill=\"" << color << "\" font-size=\"12\">truth=" << fmt10(t)
            << "</text>\n";
        ++ti;
    }
    out << "<text x=\"" << (W / 2) << "\" y=\"" << H - 12
        << "\" font-size=\"13\" text-anchor=\"middle\">n (log scale); solid = "
           "Bayes preference rate, dashed = LRT rejection rate</text>\n";
    out << "</svg>\n";
}

Table2 table2(const std::vector<long>& n_list, const std::vector<double>& nu_list,
              const std::vector<double>& lambda_list,
              const std::vector<double>& pvalue_list) {
    Table2 t;
    t.n_list = n_list;
    t.nu_list = nu_list;
    t.lambda_list = lambda_list;
    t.pvalue_list = pvalue_list;
    for (double nu : nu_list)
        for (double lam : lambda_list)
            for (long n : n_list)
                t.left.push_back(
                    chi2_sf(lam + nu * std::log(static_cast<double>(n)), nu));
    for (double nu : nu_list)
        for (double p : pvalue_list)
            for (long n : n_list)
                t.right.push_back(chi2_quantile(p, nu) -
                                  nu * std::log(static_cast<double>(n)));
    return t;
}

void emit_table2(const Table2& t, std::ostream& out) {
    out << "panel,nu,lambda,pvalue,n,value\r\n";
    std::size_t i = 0;
    for (double nu : t.nu_list)
        for (double lam : t.lambda_list)
            for (long n : t.n_list)
                out << "left," << fmt10(nu) << ',' << fmt10(lam) << ",," << n
                    << ',' << fmt10(t.left[i++]) << "\r\n";
    i = 0;
    for (double nu : t.nu_list)
        for (double p : t.pvalue_list)
            for (long n : t.n_list)
                out << "right," << fmt10(nu) << ",," << fmt10(p) << ',' << n
                    << ',' << fmt10(t.right[i++]) << "\r\n";
}

} // namespace caketest
