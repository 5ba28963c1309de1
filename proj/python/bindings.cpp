#include "evcoint/cointegration.hpp"
#include "evcoint/errors.hpp"
#include "evcoint/fbst.hpp"
#include "evcoint/io.hpp"
#include "evcoint/numerics.hpp"
#include "evcoint/unitroot.hpp"

#include <nlohmann/json.hpp>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace evcoint;

namespace {

std::string run_json(const std::string& config_json) {
    io::RunConfig cfg;
    try {
        cfg = nlohmann::json::parse(config_json).get<io::RunConfig>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(e.what());
    }
    cfg.validate();
    return io::render(io::run(cfg), io::OutputFormat::Json);
}

}  // namespace

PYBIND11_MODULE(_evcoint, m) {
    m.doc() = "Full Bayesian significance tests for unit roots and cointegration rank";
    m.attr("__version__") = io::kLibraryVersion;

    static py::exception<Error> base(m, "EvcointError");
    static py::exception<Error> input(m, "InputError", base.ptr());
    static py::exception<Error> numeric(m, "NumericError", base.ptr());
    static py::exception<Error> config(m, "ConfigError", base.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            switch (e.error_class()) {
                case ErrorClass::Input: py::set_error(input, e.what()); break;
                case ErrorClass::Numeric: py::set_error(numeric, e.what()); break;
                case ErrorClass::Config: py::set_error(config, e.what()); break;
            }
        }
    });

    m.def("chi2_cdf", &numerics::chi2_cdf, py::arg("x"), py::arg("df"));
    m.def("chi2_sf", &numerics::chi2_sf, py::arg("x"), py::arg("df"));
    m.def("chi2_quantile", &numerics::chi2_quantile, py::arg("p"), py::arg("df"));
    m.def("chi2_upper_quantile", &numerics::chi2_upper_quantile, py::arg("q"), py::arg("df"));

    m.def(
        "ev_from_pvalue", [](double p, int full_dim, int null_dim) { return fbst::ev_from_pvalue(p, fbst::BridgeSpec(full_dim, null_dim)); },
        py::arg("p"), py::arg("m"), py::arg("h"));
    m.def(
        "pvalue_from_ev", [](double ev, int full_dim, int null_dim) { return fbst::pvalue_from_ev(ev, fbst::BridgeSpec(full_dim, null_dim)); },
        py::arg("ev"), py::arg("m"), py::arg("h"));
    m.def(
        "rank_bridge_dims",
        [](int n, int k, int r, const std::string& convention) {
            const auto s = fbst::rank_bridge_spec(n, k, r, fbst::parse_dimension_convention(convention));
            return py::make_tuple(s.m, s.h);
        },
        py::arg("n"), py::arg("k"), py::arg("r"), py::arg("convention") = "paper-literal");

    py::class_<fbst::EvidenceResult>(m, "EvidenceResult")
        .def_readonly("ev", &fbst::EvidenceResult::ev)
        .def_readonly("ev_bar", &fbst::EvidenceResult::ev_bar)
        .def_readonly("log_s_star", &fbst::EvidenceResult::log_s_star)
        .def_readonly("n_draws", &fbst::EvidenceResult::n_draws)
        .def_readonly("burn_in", &fbst::EvidenceResult::burn_in)
        .def_readonly("mc_se", &fbst::EvidenceResult::mc_se)
        .def_readonly("mc_se_batch", &fbst::EvidenceResult::mc_se_batch);

    m.def(
        "estimate_evidence",
        [](double log_s_star, const std::vector<double>& log_posterior, std::size_t burn_in) {
            return fbst::estimate_evidence(log_s_star, log_posterior, burn_in);
        },
        py::arg("log_s_star"), py::arg("log_posterior"), py::arg("burn_in") = 0);

    py::class_<unitroot::UnitRootResult>(m, "UnitRootResult")
        .def_readonly("evidence", &unitroot::UnitRootResult::evidence)
        .def_readonly("p_nonstationary", &unitroot::UnitRootResult::p_nonstationary)
        .def_readonly("adf_stat", &unitroot::UnitRootResult::adf_stat)
        .def_readonly("gamma0_hat", &unitroot::UnitRootResult::gamma0_hat)
        .def_readonly("effective_t", &unitroot::UnitRootResult::effective_t);

    m.def(
        "test_unit_root",
        [](const std::vector<double>& series, int p, bool trend, bool intercept, std::uint64_t seed, std::uint64_t stream,
           std::size_t n_draws, std::size_t burn_in, const std::string& variance_shape) {
            return unitroot::test_unit_root(series, unitroot::UnitRootSpec{p, trend, intercept}, RngState{seed, stream}, n_draws,
                                            burn_in, unitroot::parse_variance_shape(variance_shape));
        },
        py::arg("series"), py::arg("p") = 1, py::arg("trend") = false, py::arg("intercept") = true,
        py::arg("seed") = io::kFallbackSeed, py::arg("stream") = 0, py::arg("n_draws") = fbst::kDefaultDraws,
        py::arg("burn_in") = fbst::kDefaultBurnIn, py::arg("variance_shape") = "exact");

    py::class_<coint::RankRow>(m, "RankRow")
        .def_readonly("rank", &coint::RankRow::rank)
        .def_readonly("log_s_star", &coint::RankRow::log_s_star)
        .def_readonly("evidence", &coint::RankRow::evidence)
        .def_readonly("max_eig_stat", &coint::RankRow::max_eig_stat)
        .def_readonly("threshold", &coint::RankRow::threshold)
        .def_readonly("bridge_m", &coint::RankRow::bridge_m)
        .def_readonly("bridge_h", &coint::RankRow::bridge_h)
        .def_readonly("rejected", &coint::RankRow::rejected);

    py::class_<coint::RankTestReport>(m, "RankTestReport")
        .def_readonly("rows", &coint::RankTestReport::rows)
        .def_property_readonly("eigenvalues", [](const coint::RankTestReport& r) { return r.eigenvalues.values; })
        .def_readonly("selected_rank", &coint::RankTestReport::selected_rank)
        .def_readonly("threshold_policy", &coint::RankTestReport::threshold_policy)
        .def_readonly("effective_t", &coint::RankTestReport::effective_t)
        .def_readonly("k", &coint::RankTestReport::k);

    m.def(
        "test_rank",
        [](const Matrix& data, int p, bool constant, int dummies, int dummy_period, const std::string& dummy_coding,
           int start_period_index, std::uint64_t seed, std::uint64_t stream, std::size_t n_draws, std::size_t burn_in,
           const std::string& threshold_policy, const std::string& convention) {
            coint::VecmSpec spec;
            spec.n = static_cast<int>(data.cols());
            spec.p = p;
            spec.include_constant = constant;
            spec.n_seasonal_dummies = dummies;
            spec.dummy_period = dummy_period;
            spec.dummy_coding = coint::parse_dummy_coding(dummy_coding);
            return coint::test_rank(data, spec, start_period_index, RngState{seed, stream}, n_draws, burn_in,
                                    coint::ThresholdPolicy::parse(threshold_policy), fbst::parse_dimension_convention(convention));
        },
        py::arg("data"), py::arg("p") = 1, py::arg("constant") = true, py::arg("dummies") = 0, py::arg("dummy_period") = 4,
        py::arg("dummy_coding") = "indicator", py::arg("start_period_index") = 0, py::arg("seed") = io::kFallbackSeed,
        py::arg("stream") = 0, py::arg("n_draws") = fbst::kDefaultDraws, py::arg("burn_in") = fbst::kDefaultBurnIn,
        py::arg("threshold_policy") = "bridge:p=0.01", py::arg("convention") = "paper-literal");

    m.def("run_json", &run_json, py::arg("config_json"),
          "Runs a JSON run configuration and returns the JSON report.");
}
