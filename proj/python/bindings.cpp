#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <span>
#include <sstream>

#include "sburgers/bounds.hpp"
#include "sburgers/harness.hpp"
#include "sburgers/nonlinearity.hpp"

namespace py = pybind11;
using namespace sburgers;

namespace {

SpectralVector to_vector(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 1) throw InvalidArgument("expected a 1-d coefficient array");
  return SpectralVector(std::vector<double>(a.data(), a.data() + a.size()));
}

py::array_t<double> to_array(std::span<const double> v) {
  py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

py::array_t<double> to_array(const SpectralVector& v) { return to_array(v.coeffs()); }

py::dict rate_dict(const RateReport& r) {
  py::list ns, means;
  for (const auto& pt : r.points) {
    ns.append(pt.N);
    means.append(pt.mean);
  }
  py::dict d;
  d["experiment"] = r.experiment;
  d["N"] = ns;
  d["mean_error"] = means;
  d["slope"] = r.fit.slope;
  d["slope_stderr"] = r.fit.stderr_;
  d["threshold"] = r.threshold;
  d["tolerance"] = r.tolerance;
  d["degenerate"] = r.degenerate;
  d["pass"] = r.pass;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Spectral Galerkin solver for the stochastic Burgers equation";

  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<BlowUp>(m, "BlowUp", PyExc_RuntimeError);

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init<>())
      .def_readwrite("c0", &ModelParams::c0)
      .def_readwrite("c1", &ModelParams::c1)
      .def_readwrite("T", &ModelParams::T)
      .def_readwrite("beta", &ModelParams::beta)
      .def_readwrite("gamma", &ModelParams::gamma)
      .def_readwrite("eps", &ModelParams::eps)
      .def("validate", &ModelParams::validate);

  m.def("eigenvalue", &eigenvalue, py::arg("n"), py::arg("params") = ModelParams{});
  m.def(
      "hr_norm", [](const py::array_t<double>& v, double r, const ModelParams& p) { return hr_norm(to_vector(v), r, p); },
      py::arg("v"), py::arg("r"), py::arg("params") = ModelParams{});
  m.def(
      "apply_semigroup",
      [](double t, const py::array_t<double>& v, const ModelParams& p) { return to_array(apply_semigroup(t, to_vector(v), p)); },
      py::arg("t"), py::arg("v"), py::arg("params") = ModelParams{});
  m.def(
      "eval_F", [](const py::array_t<double>& v, const ModelParams& p) { return to_array(eval_F(to_vector(v), p)); },
      py::arg("v"), py::arg("params") = ModelParams{}, "Sine coefficients of c1 v v' (2N modes).");
  m.def(
      "eval_F_direct",
      [](const py::array_t<double>& v, const ModelParams& p) { return to_array(eval_F_direct(to_vector(v), p)); },
      py::arg("v"), py::arg("params") = ModelParams{});
  m.def(
      "energy_pairing", [](const py::array_t<double>& v, const ModelParams& p) { return energy_pairing(to_vector(v), p); },
      py::arg("v"), py::arg("params") = ModelParams{});
  m.def(
      "growth_constant",
      [](double alpha, const std::string& item, const ModelParams& p) {
        if (item != "i" && item != "iii") throw InvalidArgument("growth item must be 'i' or 'iii'");
        return growth_constant(alpha, item == "i" ? GrowthItem::item_i : GrowthItem::item_iii, p).K;
      },
      py::arg("alpha"), py::arg("item"), py::arg("params") = ModelParams{});

  m.def(
      "simulate",
      [](const std::string& config_json) {
        const RunConfig c = RunConfig::from_json(config_json);
        const SimulateRun run = run_simulate(c);
        const auto& t = run.trajectory;
        py::array_t<double> states({t.times.size(), t.modes()});
        auto w = states.mutable_unchecked<2>();
        for (std::size_t k = 0; k < t.times.size(); ++k) {
          for (std::size_t n = 0; n < t.modes(); ++n) w(k, n) = t.states[k][n];
        }
        return py::make_tuple(to_array(std::span<const double>(t.times)), states);
      },
      py::arg("config_json"), "Returns (times, states[time, mode]) for path 0 of a simulate config.");

  m.def(
      "run_rates",
      [](const std::string& config_json, unsigned threads) {
        const RunConfig c = RunConfig::from_json(config_json);
        py::gil_scoped_release release;
        RateReport r = c.experiment == "rates-noise" ? run_noise_tail_rate(c, threads) : run_galerkin_rate(c, threads);
        py::gil_scoped_acquire acquire;
        return rate_dict(r);
      },
      py::arg("config_json"), py::arg("threads") = 1);

  m.def(
      "default_config", [](const std::string& experiment) { return RunConfig::defaults_for(experiment).to_json(); },
      py::arg("experiment"));

  m.def(
      "fit_slope",
      [](const std::vector<double>& n, const std::vector<double>& e) {
        const SlopeFit f = fit_slope(n, e);
        return py::make_tuple(f.slope, f.stderr_, f.intercept);
      },
      py::arg("n"), py::arg("error"));

  m.def("selftest", [] {
    std::ostringstream log;
    const bool ok = run_selftest(log);
    return py::make_tuple(ok, log.str());
  });
}
