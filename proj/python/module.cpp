// Python bindings for the main caketest operations.

#include "caketest/binomial_test.hpp"
#include "caketest/cake.hpp"
#include "caketest/linear_model.hpp"
#include "caketest/normal_tests.hpp"
#include "caketest/posteriors.hpp"
#include "caketest/simulate.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
namespace ct = caketest;

namespace {

ct::PriorSettings make_settings(std::optional<double> h, double delta,
                                double prior_odds) {
    ct::PriorSettings s;
    s.h = h;
    s.delta = delta;
    s.prior_odds = prior_odds;
    return s;
}

py::dict result_dict(const ct::TestResult& r) {
    py::dict d;
    d["lambda_bayes"] = r.lambda_bayes;
    d["lambda_lrt"] = r.lambda_lrt;
    d["nu"] = r.nu;
    d["log_bf01"] = r.log_bf01;
    d["posterior_odds"] = r.posterior_odds_01;
    d["decision"] = std::string(ct::to_string(r.decision));
    d["interpretation"] = r.interpretation.label;
    return d;
}

} // namespace

PYBIND11_MODULE(_caketest, m) {
    m.doc() = "Bayesian hypothesis tests with penalized-LRT statistics";

    py::register_exception<ct::DegenerateSample>(m, "DegenerateSample");
    py::register_exception<ct::DegenerateFit>(m, "DegenerateFit");
    py::register_exception<ct::RankDeficient>(m, "RankDeficient");

    m.def(
        "one_sample",
        [](const std::vector<double>& x, double mu0, std::optional<double> h,
           double delta, double prior_odds) {
            auto s = make_settings(h, delta, prior_odds);
            py::dict d = result_dict(ct::one_sample_limit(x, {mu0}, s));
            if (s.h_is_finite())
                d["log_bf01_finite_h"] = ct::one_sample_finite_h(x, {mu0}, *s.h);
            return d;
        },
        py::arg("x"), py::arg("mu0") = 0.0, py::arg("h") = py::none(),
        py::arg("delta") = 0.0, py::arg("prior_odds") = 1.0);

    m.def(
        "two_sample",
        [](const std::vector<double>& x0, const std::vector<double>& x1,
           double delta, double prior_odds) {
            auto s = make_settings(std::nullopt, delta, prior_odds);
            auto r = ct::two_sample({x0, x1}, s);
            py::dict d = result_dict(r.exact);
            d["lambda_bayes_asymptotic"] = r.lambda_bayes_asymptotic;
            return d;
        },
        py::arg("x0"), py::arg("x1"), py::arg("delta") = 0.0,
        py::arg("prior_odds") = 1.0);

    m.def(
        "binomial",
        [](long s_count, long n, double delta, double prior_odds) {
            auto s = make_settings(std::nullopt, delta, prior_odds);
            py::dict d = result_dict(ct::binomial_jeffreys({s_count, n}, s));
            if (s_count > 0 && s_count < n) {
                d["pvalue"] = ct::binomial_pvalue({s_count, n});
                d["lambda_bayes_approx"] = ct::binomial_approx({s_count, n});
            }
            return d;
        },
        py::arg("successes"), py::arg("trials"), py::arg("delta") = 0.0,
        py::arg("prior_odds") = 1.0);

    m.def(
        "z_test",
        [](const std::vector<double>& x, double mu0, double sigma2,
           std::optional<double> h, double delta, double prior_odds) {
            auto s = make_settings(h, delta, prior_odds);
            return result_dict(ct::z_test_augmented(x, mu0, sigma2, s));
        },
        py::arg("x"), py::arg("mu0"), py::arg("sigma2"),
        py::arg("h") = py::none(), py::arg("delta") = 0.0,
        py::arg("prior_odds") = 1.0);

    m.def(
        "lindley_bf",
        [](double xbar, long n, double mu0, double sigma2, double tau2) {
            auto r = ct::lindley_bf(xbar, n, mu0, sigma2, tau2);
            py::dict d;
            d["bf01"] = r.bf01;
            d["lambda_bayes"] = r.lambda_bayes;
            return d;
        },
        py::arg("xbar"), py::arg("n"), py::arg("mu0") = 0.0,
        py::arg("sigma2") = 1.0, py::arg("tau2") = 1.0);

    m.def("equivalent_alpha", &ct::equivalent_alpha, py::arg("nu"),
          py::arg("n"));
    m.def("g_schedule", &ct::g_schedule, py::arg("h"), py::arg("d"));
    m.def("penalized_lrt",
          [](double lambda_lrt, double nu, long n, double delta) {
              ct::PriorSettings s;
              s.delta = delta;
              return ct::penalized_lrt(lambda_lrt, nu, n, s);
          },
          py::arg("lambda_lrt"), py::arg("nu"), py::arg("n"),
          py::arg("delta") = 0.0);

    m.def(
        "linear_test",
        [](const Eigen::VectorXd& y, const Eigen::MatrixXd& X,
           const std::vector<bool>& g0, const std::vector<bool>& g1,
           std::optional<double> h, double delta, double prior_odds) {
            auto s = make_settings(h, delta, prior_odds);
            auto sd = ct::standardize(y, X);
            py::dict d = result_dict(ct::linear_test(sd, g0, g1, s));
            d["bic_gamma0"] = ct::bic(sd, g0);
            d["bic_gamma1"] = ct::bic(sd, g1);
            if (s.h_is_finite())
                d["log_bf01_finite_h"] = ct::bf01_finite_h(sd, g0, g1, *s.h);
            return d;
        },
        py::arg("y"), py::arg("X"), py::arg("gamma0"), py::arg("gamma1"),
        py::arg("h") = py::none(), py::arg("delta") = 0.0,
        py::arg("prior_odds") = 1.0);

    m.def(
        "select_model",
        [](const Eigen::VectorXd& y, const Eigen::MatrixXd& X, long max_size) {
            auto sd = ct::standardize(y, X);
            auto ranked =
                ct::select_model(sd, ct::enumerate_models(sd.p(), max_size));
            py::list out;
            for (const auto& rm : ranked) {
                py::dict e;
                e["gamma"] = rm.gamma;
                e["bic"] = rm.bic;
                e["r_squared"] = rm.r2;
                out.append(e);
            }
            return out;
        },
        py::arg("y"), py::arg("X"), py::arg("max_size") = 2);

    py::class_<ct::InverseGamma>(m, "InverseGamma")
        .def(py::init<double, double>(), py::arg("shape"), py::arg("rate"))
        .def_property_readonly("shape", &ct::InverseGamma::shape)
        .def_property_readonly("rate", &ct::InverseGamma::rate)
        .def("log_density", &ct::InverseGamma::log_density)
        .def("density", &ct::InverseGamma::density)
        .def("cdf", &ct::InverseGamma::cdf)
        .def("quantile", &ct::InverseGamma::quantile)
        .def("mean", &ct::InverseGamma::mean);

    py::class_<ct::LocationScaleT>(m, "LocationScaleT")
        .def(py::init<double, double, double>(), py::arg("dof"),
             py::arg("location"), py::arg("scale2"))
        .def_property_readonly("dof", &ct::LocationScaleT::dof)
        .def_property_readonly("location", &ct::LocationScaleT::location)
        .def_property_readonly("scale2", &ct::LocationScaleT::scale2)
        .def("log_density", &ct::LocationScaleT::log_density)
        .def("density", &ct::LocationScaleT::density)
        .def("cdf", &ct::LocationScaleT::cdf)
        .def("quantile", &ct::LocationScaleT::quantile)
        .def("mean", &ct::LocationScaleT::mean);

    m.def(
        "one_sample_posteriors",
        [](const std::vector<double>& x, double mu0) {
            auto ps = ct::one_sample_posteriors(x, {mu0});
            py::dict d;
            for (const auto& [k, v] : ps.inverse_gammas) d[k.c_str()] = v;
            for (const auto& [k, v] : ps.student_ts) d[k.c_str()] = v;
            return d;
        },
        py::arg("x"), py::arg("mu0") = 0.0);

    m.def(
        "simulate",
        [](const std::string& scenario_text, unsigned workers) {
            std::istringstream in(scenario_text);
            ct::Scenario s = ct::parse_scenario(in);
            ct::SimResult res = ct::run_scenario(s, workers);
            py::list out;
            for (const auto& c : res.cells) {
                py::dict e;
                e["family"] = std::string(ct::to_string(c.family));
                e["truth"] = c.truth;
                e["n"] = c.n;
                e["bayes_rate"] = c.bayes_rate();
                e["lrt_rate"] = c.lrt_rate();
                e["disagree_rate"] = c.disagree_rate();
                e["se"] = c.standard_error();
                out.append(e);
            }
            return out;
        },
        py::arg("scenario_text"), py::arg("workers") = 0);
}
