#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ntas/errors.hpp"
#include "ntas/moments.hpp"
#include "ntas/montecarlo.hpp"
#include "ntas/schemes.hpp"
#include "ntas/specfun.hpp"
#include "ntas/validation.hpp"

namespace py = pybind11;

namespace {

ntas::ChannelConfig make_config(int n, int n_t, int n_r, double mean_snr, std::optional<double> omega) {
  ntas::ChannelConfig cfg{ntas::CascadeOrder{n}, n_t, n_r, mean_snr, omega};
  cfg.validate();
  return cfg;
}

ntas::mc::SimSettings make_settings(std::uint64_t trials, std::uint64_t seed, unsigned workers) {
  ntas::mc::SimSettings s;
  s.trials = trials;
  s.master_seed = seed;
  s.workers = workers;
  return s;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Closed-form and Monte-Carlo analysis of TAS/MRC and TAS/SC over n*Rayleigh channels.";

  py::register_exception<ntas::DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ntas::ConvergenceError>(m, "ConvergenceError", PyExc_ArithmeticError);
  py::register_exception<ntas::NonPhysicalError>(m, "NonPhysicalError", PyExc_ArithmeticError);
  py::register_exception<ntas::CoefficientLookupError>(m, "CoefficientLookupError", PyExc_KeyError);

  py::enum_<ntas::Scheme>(m, "Scheme").value("TAS_MRC", ntas::Scheme::TasMrc).value("TAS_SC", ntas::Scheme::TasSc);

  py::class_<ntas::ChannelConfig>(m, "ChannelConfig")
      .def(py::init(&make_config), py::arg("n"), py::arg("n_t") = 1, py::arg("n_r") = 1, py::arg("mean_snr") = 1.0,
           py::arg("omega") = std::nullopt)
      .def_property_readonly("n", [](const ntas::ChannelConfig& c) { return c.n.value(); })
      .def_readonly("n_t", &ntas::ChannelConfig::n_t)
      .def_readonly("n_r", &ntas::ChannelConfig::n_r)
      .def_readonly("mean_snr", &ntas::ChannelConfig::mean_snr)
      .def("omega_for", &ntas::ChannelConfig::omega_for)
      .def("with_mean_snr", &ntas::ChannelConfig::with_mean_snr);

  m.def("ln_gamma", &ntas::specfun::ln_gamma, py::arg("x"));
  m.def("reg_lower_gamma", [](double a, double x) { return ntas::specfun::reg_lower_gamma(a, x); }, py::arg("a"),
        py::arg("x"));
  m.def("reg_upper_gamma", [](double a, double x) { return ntas::specfun::reg_upper_gamma(a, x); }, py::arg("a"),
        py::arg("x"));
  m.def("binomial", &ntas::specfun::binomial, py::arg("n"), py::arg("k"));

  m.def(
      "fading_params",
      [](int n) {
        const auto p = ntas::fading_params(ntas::CascadeOrder{n});
        return py::dict(py::arg("m") = p.m, py::arg("omega") = p.omega, py::arg("alpha") = p.alpha);
      },
      py::arg("n"));

  m.def("postproc_cdf", &ntas::postproc_cdf, py::arg("scheme"), py::arg("gamma"), py::arg("cfg"));
  m.def(
      "outage",
      [](ntas::Scheme s, double gamma_o, const ntas::ChannelConfig& cfg) {
        return ntas::outage(s, ntas::OutageQuery::threshold(gamma_o), cfg);
      },
      py::arg("scheme"), py::arg("gamma_o"), py::arg("cfg"));
  m.def(
      "outage_asymptotic",
      [](ntas::Scheme s, double gamma_o, const ntas::ChannelConfig& cfg) {
        const auto a = ntas::outage_asymptotic(s, ntas::OutageQuery::threshold(gamma_o), cfg);
        return py::dict(py::arg("probability") = a.probability, py::arg("coefficient") = a.form.coefficient,
                        py::arg("diversity") = a.form.diversity, py::arg("z") = a.form.z);
      },
      py::arg("scheme"), py::arg("gamma_o"), py::arg("cfg"));
  m.def("diversity_order", &ntas::diversity_order, py::arg("scheme"), py::arg("cfg"));
  m.def(
      "coding_gain",
      [](ntas::Scheme s, const ntas::ChannelConfig& cfg) {
        const auto cg = ntas::coding_gain(s, cfg);
        return py::dict(py::arg("printed") = cg.printed, py::arg("extracted") = cg.extracted);
      },
      py::arg("scheme"), py::arg("cfg"));
  m.def(
      "required_snr",
      [](ntas::Scheme s, double target, double gamma_o, const ntas::ChannelConfig& cfg) {
        return ntas::required_snr(s, target, ntas::OutageQuery::threshold(gamma_o), cfg);
      },
      py::arg("scheme"), py::arg("target_outage"), py::arg("gamma_o"), py::arg("cfg"));

  m.def(
      "moment",
      [](ntas::Scheme s, int l, const ntas::ChannelConfig& cfg, std::optional<double> b1, std::optional<double> b2) {
        auto w = (b1 && b2) ? ntas::WeightingCoefficients{*b1, *b2} : ntas::default_weighting(cfg.n);
        if (b1) w.b1 = *b1;
        if (b2) w.b2 = *b2;
        return ntas::moment(s, l, cfg, w);
      },
      py::arg("scheme"), py::arg("l"), py::arg("cfg"), py::arg("b1") = std::nullopt, py::arg("b2") = std::nullopt);
  m.def(
      "amount_of_fading",
      [](ntas::Scheme s, const ntas::ChannelConfig& cfg) {
        return ntas::amount_of_fading(s, cfg, ntas::default_weighting(cfg.n));
      },
      py::arg("scheme"), py::arg("cfg"));
  m.def("moment_oracle", &ntas::moment_oracle, py::arg("l"), py::arg("scheme"), py::arg("cfg"));
  m.def("af_oracle", &ntas::af_oracle, py::arg("scheme"), py::arg("cfg"));
  m.def("af_bound_tas_mrc", &ntas::af_bound_tas_mrc, py::arg("cfg"));
  m.def("af_simo", [](int n, int n_r) { return ntas::af_simo(ntas::CascadeOrder{n}, n_r); }, py::arg("n"),
        py::arg("n_r"));
  m.def("af_siso", [](int n) { return ntas::af_siso(ntas::CascadeOrder{n}); }, py::arg("n"));

  py::class_<ntas::mc::EmpiricalEstimate>(m, "EmpiricalEstimate")
      .def_readonly("value", &ntas::mc::EmpiricalEstimate::value)
      .def_readonly("std_error", &ntas::mc::EmpiricalEstimate::std_error)
      .def_readonly("trials", &ntas::mc::EmpiricalEstimate::trials)
      .def_readonly("ci95_low", &ntas::mc::EmpiricalEstimate::ci95_low)
      .def_readonly("ci95_high", &ntas::mc::EmpiricalEstimate::ci95_high)
      .def_readonly("events", &ntas::mc::EmpiricalEstimate::events)
      .def_readonly("low_event_count", &ntas::mc::EmpiricalEstimate::low_event_count);

  m.def(
      "estimate_outage",
      [](ntas::Scheme s, const ntas::ChannelConfig& cfg, double gamma_o, std::uint64_t trials, std::uint64_t seed,
         unsigned workers) {
        py::gil_scoped_release release;
        return ntas::mc::estimate_outage(s, cfg, gamma_o, make_settings(trials, seed, workers));
      },
      py::arg("scheme"), py::arg("cfg"), py::arg("gamma_o"), py::arg("trials") = 1'000'000, py::arg("seed") = ntas::mc::SimSettings{}.master_seed,
      py::arg("workers") = 1);
  m.def(
      "estimate_moments_af",
      [](ntas::Scheme s, const ntas::ChannelConfig& cfg, std::uint64_t trials, std::uint64_t seed, unsigned workers) {
        ntas::mc::MomentsEstimate e;
        {
          py::gil_scoped_release release;
          e = ntas::mc::estimate_moments_af(s, cfg, make_settings(trials, seed, workers));
        }
        return py::dict(py::arg("mean") = e.mean, py::arg("second_moment") = e.second_moment, py::arg("af") = e.af);
      },
      py::arg("scheme"), py::arg("cfg"), py::arg("trials") = 1'000'000, py::arg("seed") = ntas::mc::SimSettings{}.master_seed, py::arg("workers") = 1);
  m.def(
      "empirical_cdf",
      [](ntas::Scheme s, const ntas::ChannelConfig& cfg, const std::vector<double>& grid, std::uint64_t trials,
         std::uint64_t seed, unsigned workers) {
        py::gil_scoped_release release;
        return ntas::mc::empirical_cdf(s, cfg, make_settings(trials, seed, workers), grid);
      },
      py::arg("scheme"), py::arg("cfg"), py::arg("grid"), py::arg("trials") = 1'000'000, py::arg("seed") = ntas::mc::SimSettings{}.master_seed,
      py::arg("workers") = 1);
}
