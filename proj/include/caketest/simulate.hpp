#pragma once

// Seeded Monte Carlo engine: estimates empirical preference probabilities
// of the Bayesian test next to rejection probabilities of the level-alpha
// LRT over a grid of truths and sample sizes. Substreams are keyed by
// (seed, cell, replicate), so results are bit-identical regardless of how
// replicates are scheduled across workers.

#include "caketest/cake.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace caketest {

enum class Family { one_sample, two_sample, binomial, z_known_variance };

const char* to_string(Family f);
Family family_from_string(const std::string& name);

struct Scenario {
    Family family = Family::one_sample;
    std::vector<double> truth;  // mu_true / rho_true / mu1-or-sigma1
    bool vary_sigma = false;    // two_sample only: truth values are sigma1
    std::vector<long> n_grid;   // per-cell n (two_sample: split n0 = n1 = n/2)
    std::vector<std::pair<long, long>> n_pairs; // two_sample explicit (n0, n1)
    long replicates = 10000;
    std::uint64_t seed = 1;
    double alpha = 0.05;
    PriorSettings settings;
    double mu0 = 0.0;     // null mean (one_sample / z)
    double sigma2 = 1.0;  // known variance (z) / group-0 variance (two_sample)
};

struct SimCell {
    Family family = Family::one_sample;
    double truth = 0.0;
    long n = 0;       // total sample size
    long n0 = 0, n1 = 0; // two_sample split (0 otherwise)
    long replicates = 0;
    long bayes_prefer_h1 = 0;
    long lrt_reject = 0;
    long disagree = 0;
    long errors = 0;  // replicates lost to domain errors (excluded from rates)

    double bayes_rate() const;
    double lrt_rate() const;
    double disagree_rate() const;
    /// Binomial Monte Carlo SE of the Bayesian preference rate.
    double standard_error() const;
};

struct SimResult {
    Scenario scenario;
    std::vector<SimCell> cells;
};

/// Runs every (truth, n) cell of the scenario. worker_count 0 means use the
/// CAKETEST_THREADS environment variable, else hardware concurrency.
SimResult run_scenario(const Scenario& s, unsigned worker_count = 0);

/// Parses the key-value scenario format (see README). Throws
/// std::invalid_argument with the offending line on bad input.
Scenario parse_scenario(std::istream& in);
Scenario load_scenario(const std::string& path);

/// CSV with header family,truth,n,bayes_rate,lrt_rate,disagree_rate,se
/// (RFC 4180, numeric fields to 10 significant digits).
void emit_figure_data(const SimResult& result, std::ostream& out);

/// Plain multi-series SVG line chart of the Bayesian/LRT rates against n.
void emit_figure_svg(const SimResult& result, std::ostream& out);

struct Table2 {
    std::vector<double> nu_list, lambda_list, pvalue_list;
    std::vector<long> n_list;
    // left(i,j,k): p-value at nu_list[i], lambda_list[j], n_list[k]
    std::vector<double> left;
    // right(i,j,k): lambda_Bayes at nu_list[i], pvalue_list[j], n_list[k]
    std::vector<double> right;
};

/// Left panel p = chi2_sf(lambda + nu ln n, nu); right panel
/// lambda = chi2_quantile(p, nu) - nu ln n.
Table2 table2(const std::vector<long>& n_list, const std::vector<double>& nu_list,
              const std::vector<double>& lambda_list,
              const std::vector<double>& pvalue_list);

/// Both panels as CSV (panel,nu,lambda,pvalue,n,value).
void emit_table2(const Table2& t, std::ostream& out);

} // namespace caketest
