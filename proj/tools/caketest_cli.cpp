// caketest: Bayesian hypothesis tests with penalized-LRT statistics.
//
// Subcommands:
//   test one-sample | two-sample | binom | z | linear
//   simulate --scenario <file> --out <dir>
//   table2 --out <file>
//
// The CLI is a thin adapter over the library: every statistic comes from
// library calls, results are printed as JSON (10 significant digits).
// Exit codes: 0 success, 2 malformed input, 3 degenerate sample/fit.

#include "caketest/binomial_test.hpp"
#include "caketest/cake.hpp"
#include "caketest/linear_model.hpp"
#include "caketest/normal_tests.hpp"
#include "caketest/simulate.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using json = nlohmann::ordered_json;
namespace ct = caketest;

namespace {

constexpr int kExitBadInput = 2;
constexpr int kExitDegenerate = 3;
constexpr const char* kSchemaVersion = "1";

struct BadInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// CSV input (RFC 4180: quoted fields, embedded commas/quotes).

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw BadInput("cannot open file: " + path);
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false;
    bool any = false;
    char c;
    while (f.get(c)) {
        any = true;
        if (quoted) {
            if (c == '"') {
                if (f.peek() == '"') {
                    field.push_back('"');
                    f.get();
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            row.push_back(std::move(field));
            field.clear();
        } else if (c == '\n') {
            if (!field.empty() && field.back() == '\r') field.pop_back();
            row.push_back(std::move(field));
            field.clear();
            rows.push_back(std::move(row));
            row.clear();
        } else {
            field.push_back(c);
        }
    }
    if (quoted) throw BadInput(path + ": unterminated quoted field");
    if (!field.empty() || !row.empty()) {
        if (!field.empty() && field.back() == '\r') field.pop_back();
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
    }
    if (!any || rows.empty()) throw BadInput(path + ": empty file");
    return rows;
}

double parse_number(const std::string& s, const std::string& path, size_t rownum) {
    try {
        size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw BadInput(path + ": row " + std::to_string(rownum) +
                       ": not a number: '" + s + "'");
    }
}

std::vector<double> read_single_column(const std::string& path) {
    auto rows = read_csv(path);
    std::vector<double> out;
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() == 1 && rows[i][0].empty()) continue; // blank line
        if (rows[i].size() != 1)
            throw BadInput(path + ": row " + std::to_string(i + 1) +
                           ": expected exactly one column");
        out.push_back(parse_number(rows[i][0], path, i + 1));
    }
    if (out.size() < 2) throw BadInput(path + ": need at least 2 values");
    return out;
}

struct LinearData {
    Eigen::VectorXd y;
    Eigen::MatrixXd X;
    std::vector<std::string> names; // covariate column names
};

LinearData read_linear_csv(const std::string& path) {
    auto rows = read_csv(path);
    if (rows.size() < 3) throw BadInput(path + ": need a header and >= 2 rows");
    const auto& header = rows[0];
    if (header.size() < 2)
        throw BadInput(path + ": need a response column and >= 1 covariate");
    LinearData d;
    d.names.assign(header.begin() + 1, header.end());
    const size_t cols = header.size();
    const size_t n = rows.size() - 1;
    d.y.resize(static_cast<long>(n));
    d.X.resize(static_cast<long>(n), static_cast<long>(cols - 1));
    for (size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].size() != cols)
            throw BadInput(path + ": row " + std::to_string(i + 1) + ": expected " +
                           std::to_string(cols) + " columns");
        d.y(static_cast<long>(i - 1)) = parse_number(rows[i][0], path, i + 1);
        for (size_t j = 1; j < cols; ++j)
            d.X(static_cast<long>(i - 1), static_cast<long>(j - 1)) =
                parse_number(rows[i][j], path, i + 1);
    }
    return d;
}

// ---------------------------------------------------------------------------
// JSON output.

std::string fmt10(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

// Round to 10 significant digits for text output.
double round10(double v) { return std::stod(fmt10(v)); }

json result_json(const ct::TestResult& r, long n) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["lambda_bayes"] = round10(r.lambda_bayes);
    j["lambda_lrt"] = round10(r.lambda_lrt);
    j["nu"] = r.nu;
    j["log_bf01"] = round10(r.log_bf01);
    j["posterior_odds"] = round10(r.posterior_odds_01);
    j["decision"] = ct::to_string(r.decision);
    j["interpretation"] = r.interpretation.label;
    if (n >= 2) j["equivalent_alpha"] = round10(ct::equivalent_alpha(r.nu, n));
    return j;
}

void emit(const json& j, const std::string& out_path, const ct::TestResult* r) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream f(out_path);
        if (!f) throw BadInput("cannot write: " + out_path);
        f << j.dump(2) << "\n";
    }
    if (r) std::cerr << "decision: " << ct::to_string(r->decision) << "\n";
}

ct::ModelGamma parse_gamma_bits(const std::string& bits, long p) {
    if (static_cast<long>(bits.size()) != p)
        throw BadInput("gamma '" + bits + "' must have exactly " +
                       std::to_string(p) + " bits");
    ct::ModelGamma m(bits.size(), false);
    for (size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1')
            m[i] = true;
        else if (bits[i] != '0')
            throw BadInput("gamma must be a 0/1 string");
    }
    return m;
}

std::string gamma_bits(const ct::ModelGamma& m) {
    std::string s;
    for (bool b : m) s.push_back(b ? '1' : '0');
    return s;
}

ct::PriorSettings make_settings(const std::string& h_str, double delta,
                                double prior_odds) {
    ct::PriorSettings s;
    s.delta = delta;
    s.prior_odds = prior_odds;
    if (h_str != "inf") {
        try {
            s.h = std::stod(h_str);
        } catch (const std::exception&) {
            throw BadInput("--h must be a positive number or 'inf'");
        }
        if (!(*s.h > 0.0)) throw BadInput("--h must be positive");
    }
    return s;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bayesian hypothesis tests with penalized-LRT statistics"};
    app.require_subcommand(1);

    std::string h_str = "inf", out_path;
    double delta = 0.0, prior_odds = 1.0, alpha = 0.05;

    auto* test = app.add_subcommand("test", "run a hypothesis test");
    test->require_subcommand(1);

    // test one-sample
    std::string data_path;
    double mu0 = 0.0;
    auto* one = test->add_subcommand("one-sample", "one-sample mean test");
    one->set_help_flag("--help", "print help");
    one->add_option("--mu0", mu0, "null mean")->required();
    one->add_option("--h", h_str, "diffuseness h (number or 'inf')");
    one->add_option("--delta", delta, "offset added to lambda_Bayes");
    one->add_option("--prior-odds", prior_odds, "prior odds p(H0)/p(H1)");
    one->add_option("--out", out_path, "write JSON here instead of stdout");
    one->add_option("data", data_path, "CSV with one numeric column")->required();

    // test two-sample
    std::string g0_path, g1_path;
    auto* two = test->add_subcommand("two-sample", "two-sample test");
    two->add_option("--delta", delta, "offset added to lambda_Bayes");
    two->add_option("--prior-odds", prior_odds, "prior odds");
    two->add_option("--out", out_path, "output path");
    two->add_option("group0", g0_path, "CSV for group 0")->required();
    two->add_option("group1", g1_path, "CSV for group 1")->required();

    // test binom
    long s_count = 0, n_count = 0;
    auto* binom = test->add_subcommand("binom", "Jeffreys binomial test");
    binom->add_option("--s", s_count, "successes")->required();
    binom->add_option("--n", n_count, "trials")->required();
    binom->add_option("--delta", delta, "offset");
    binom->add_option("--prior-odds", prior_odds, "prior odds");
    binom->add_option("--out", out_path, "output path");

    // test z
    double sigma2 = 1.0;
    auto* ztest = test->add_subcommand("z", "known-variance z-test");
    ztest->set_help_flag("--help", "print help");
    ztest->add_option("--mu0", mu0, "null mean")->required();
    ztest->add_option("--sigma2", sigma2, "known variance")->required();
    ztest->add_option("--h", h_str, "diffuseness h (number or 'inf')");
    ztest->add_option("--delta", delta, "offset");
    ztest->add_option("--prior-odds", prior_odds, "prior odds");
    ztest->add_option("--out", out_path, "output path");
    ztest->add_option("data", data_path, "CSV with one numeric column")->required();

    // test linear
    std::string gamma0_bits, gamma1_bits;
    bool do_select = false;
    long max_size = 2;
    auto* linear = test->add_subcommand("linear", "linear-model test / selection");
    linear->set_help_flag("--help", "print help");
    linear->add_option("--h", h_str, "diffuseness h (number or 'inf')");
    linear->add_option("--gamma0", gamma0_bits, "null model bits, e.g. 0100");
    linear->add_option("--gamma1", gamma1_bits, "alternative model bits");
    linear->add_flag("--select", do_select, "rank all models up to --max-size");
    linear->add_option("--max-size", max_size, "max model size for --select");
    linear->add_option("--delta", delta, "offset");
    linear->add_option("--prior-odds", prior_odds, "prior odds");
    linear->add_option("--out", out_path, "output path");
    linear->add_option("data", data_path, "CSV: header row, response first")
        ->required();

    // simulate
    std::string scenario_path, out_dir;
    bool svg = false;
    auto* sim = app.add_subcommand("simulate", "Monte Carlo scenario run");
    sim->add_option("--scenario", scenario_path, "scenario file")->required();
    sim->add_option("--out", out_dir, "output directory")->required();
    sim->add_flag("--svg", svg, "also write an SVG line chart");

    // table2
    std::string table_out;
    auto* tab = app.add_subcommand("table2", "p-value <-> lambda_Bayes tables");
    tab->add_option("--out", table_out, "output CSV path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (one->parsed()) {
            auto settings = make_settings(h_str, delta, prior_odds);
            auto x = read_single_column(data_path);
            ct::TestResult r =
                ct::one_sample_limit(x, {mu0}, settings);
            json j = result_json(r, static_cast<long>(x.size()));
            if (settings.h_is_finite()) {
                double log_bf = ct::one_sample_finite_h(x, {mu0}, *settings.h);
                j["log_bf01_finite_h"] = round10(log_bf);
                j["lambda_bayes_finite_h"] = round10(-2.0 * log_bf);
            }
            emit(j, out_path, &r);
        } else if (two->parsed()) {
            auto settings = make_settings("inf", delta, prior_odds);
            ct::TwoSampleData d{read_single_column(g0_path),
                                read_single_column(g1_path)};
            ct::TwoSampleResult r = ct::two_sample(d, settings);
            json j = result_json(r.exact,
                                 static_cast<long>(d.x0.size() + d.x1.size()));
            j["lambda_bayes_asymptotic"] = round10(r.lambda_bayes_asymptotic);
            emit(j, out_path, &r.exact);
        } else if (binom->parsed()) {
            auto settings = make_settings("inf", delta, prior_odds);
            ct::BinomialCount c{s_count, n_count};
            ct::TestResult r = ct::binomial_jeffreys(c, settings);
            json j = result_json(r, n_count);
            if (s_count > 0 && s_count < n_count) {
                j["pvalue"] = round10(ct::binomial_pvalue(c));
                j["lambda_bayes_approx"] = round10(ct::binomial_approx(c));
            }
            emit(j, out_path, &r);
        } else if (ztest->parsed()) {
            auto settings = make_settings(h_str, delta, prior_odds);
            auto x = read_single_column(data_path);
            ct::TestResult r = ct::z_test_augmented(x, mu0, sigma2, settings);
            emit(result_json(r, static_cast<long>(x.size())), out_path, &r);
        } else if (linear->parsed()) {
            auto settings = make_settings(h_str, delta, prior_odds);
            LinearData d = read_linear_csv(data_path);
            ct::StandardizedData sd;
            try {
                sd = ct::standardize(d.y, d.X);
            } catch (const ct::ConstantColumn& e) {
                throw BadInput(std::string(e.what()));
            } catch (const ct::ConstantResponse& e) {
                throw BadInput(std::string(e.what()));
            }
            if (do_select) {
                auto models = ct::enumerate_models(sd.p(), max_size);
                auto ranked = ct::select_model(sd, models);
                json j;
                j["schema_version"] = kSchemaVersion;
                j["ranking"] = json::array();
                for (const auto& rm : ranked) {
                    json e;
                    e["gamma"] = gamma_bits(rm.gamma);
                    json cols = json::array();
                    for (size_t k = 0; k < rm.gamma.size(); ++k)
                        if (rm.gamma[k]) cols.push_back(d.names[k]);
                    e["columns"] = cols;
                    e["bic"] = round10(rm.bic);
                    e["r_squared"] = round10(rm.r2);
                    j["ranking"].push_back(e);
                }
                emit(j, out_path, nullptr);
            } else {
                if (gamma0_bits.empty() || gamma1_bits.empty())
                    throw BadInput("need --gamma0 and --gamma1 (or --select)");
                auto m0 = parse_gamma_bits(gamma0_bits, sd.p());
                auto m1 = parse_gamma_bits(gamma1_bits, sd.p());
                ct::TestResult r;
                try {
                    r = ct::linear_test(sd, m0, m1, settings);
                } catch (const ct::RankDeficient&) {
                    // Name the offending columns for the error message.
                    std::string cols;
                    for (size_t k = 0; k < m1.size(); ++k)
                        if (m1[k]) cols += (cols.empty() ? "" : ", ") + d.names[k];
                    throw ct::RankDeficient("rank-deficient selection among: " +
                                            cols);
                }
                json j;
                j["schema_version"] = kSchemaVersion;
                j["lambda_bayes"] = round10(r.lambda_bayes);
                j["lambda_lrt"] = round10(r.lambda_lrt);
                j["nu"] = r.nu;
                j["log_bf01"] = round10(r.log_bf01);
                j["posterior_odds"] = round10(r.posterior_odds_01);
                j["decision"] = ct::to_string(r.decision);
                j["interpretation"] = r.interpretation.label;
                j["bic_gamma0"] = round10(ct::bic(sd, m0));
                j["bic_gamma1"] = round10(ct::bic(sd, m1));
                if (settings.h_is_finite())
                    j["log_bf01_finite_h"] =
                        round10(ct::bf01_finite_h(sd, m0, m1, *settings.h));
                emit(j, out_path, &r);
            }
        } else if (sim->parsed()) {
            ct::Scenario s;
            try {
                s = ct::load_scenario(scenario_path);
            } catch (const std::invalid_argument& e) {
                throw BadInput(e.what());
            }
            ct::SimResult res = ct::run_scenario(s);
            std::filesystem::create_directories(out_dir);
            {
                std::ofstream f(out_dir + "/results.csv", std::ios::binary);
                if (!f) throw BadInput("cannot write results.csv in " + out_dir);
                ct::emit_figure_data(res, f);
            }
            if (svg) {
                std::ofstream f(out_dir + "/results.svg");
                ct::emit_figure_svg(res, f);
            }
            std::cerr << "wrote " << res.cells.size() << " cells ("
                      << s.replicates << " replicates each) to " << out_dir
                      << "\n";
        } else if (tab->parsed()) {
            ct::Table2 t =
                ct::table2({50, 100, 1000}, {1, 2, 3, 4}, {0, 2, 6, 10},
                           {0.05, 0.01, 0.001, 0.0001});
            std::ofstream f(table_out, std::ios::binary);
            if (!f) throw BadInput("cannot write: " + table_out);
            ct::emit_table2(t, f);
        }
    } catch (const BadInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const ct::DegenerateSample& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const ct::DegenerateFit& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const ct::RankDeficient& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
    return 0;
}
