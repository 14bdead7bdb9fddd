#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "epdyn/encircle.hpp"
#include "epdyn/gep_identity.hpp"
#include "epdyn/survival.hpp"

namespace py = pybind11;
using namespace epdyn;

namespace {

ModelParams params_of(const std::string& model, double g, double x) {
  if (model == "I") return ModelOneParams{g, x};
  if (model == "II") return ModelTwoParams{g, x};
  fail(ErrorKind::InvalidParameter, "model must be 'I' or 'II'");
}

py::dict point_dict(const SpectralPoint& p) {
  py::dict d;
  d["lambda"] = p.lambda;
  d["energy"] = p.energy;
  d["k"] = p.k;
  d["classification"] = to_string(p.classification);
  return d;
}

py::dict series_dict(const SurvivalSeries& s) {
  py::dict d;
  d["method"] = to_string(s.method);
  d["t"] = py::array_t<double>(py::ssize_t(s.size()), s.times.data());
  d["amplitude"] = py::array_t<Complex>(py::ssize_t(s.size()), s.amplitude.data());
  d["probability"] = py::array_t<double>(py::ssize_t(s.size()), s.probability.data());
  d["err_est"] = py::array_t<double>(py::ssize_t(s.size()), s.err_est.data());
  d["flags"] = py::array_t<std::uint32_t>(py::ssize_t(s.size()), s.flags.data());
  return d;
}

std::string label(const SignedLabel& l) { return to_string(l); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "exceptional-point dynamics of an impurity coupled to a semi-infinite chain";

  static py::exception<Error> base(m, "EpdynError", PyExc_RuntimeError);
  static py::exception<Error> validation(m, "ValidationError", base.ptr());
  static py::exception<Error> numerical(m, "NumericalError", base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      const std::string msg = std::string(kind_name(e.kind())) + ": " + e.what();
      py::set_error(e.category() == ErrorCategory::Validation ? validation : numerical, msg.c_str());
    }
  });

  m.def("spectrum_one", [](double g, double eps_d) {
    const auto s = discrete_spectrum({g, eps_d});
    py::list pts;
    for (auto& p : s.points) pts.append(point_dict(p));
    return pts;
  }, py::arg("g"), py::arg("eps_d"));

  m.def("spectrum_two", [](double g, double V) {
    const auto s = quartic_spectrum({g, V});
    py::list pts;
    for (auto& p : s.points) {
      auto d = point_dict(p);
      d["s"] = p.s;
      pts.append(d);
    }
    return pts;
  }, py::arg("g"), py::arg("V"));

  m.def("ep_location", [](double g, bool upper) {
    const auto e = ep_location(g, upper ? EpBranch::Upper : EpBranch::Lower);
    py::dict d;
    d["eps_bar"] = e.eps_bar;
    d["E_bar"] = e.E_bar;
    d["lambda_bar"] = e.lambda_bar;
    return d;
  }, py::arg("g"), py::arg("upper") = false);

  m.def("ep2b_location", [](double g) {
    const auto e = ep_locations_m2(g);
    py::dict d;
    d["V_bar"] = e.ep2b.V_bar;
    d["E_bar"] = e.ep2b.E_bar;
    d["lambda_bar"] = e.ep2b.lambda_bar;
    d["gamma_bar"] = e.ep2b.gamma_bar;
    d["ep2a"] = e.ep2a;
    return d;
  }, py::arg("g"));

  m.def("survival", [](const std::string& model, double g, double x, std::vector<double> times, bool force_time_domain) {
    SurvivalOptions o;
    o.force_time_domain = force_time_domain;
    const auto p = params_of(model, g, x);
    SurvivalSeries s;
    {
      py::gil_scoped_release nogil;
      s = std::holds_alternative<ModelOneParams>(p) ? amplitude_contour_m1(std::get<ModelOneParams>(p), times, o)
                                                    : amplitude_contour_m2(std::get<ModelTwoParams>(p), times, o);
    }
    return series_dict(s);
  }, py::arg("model"), py::arg("g"), py::arg("x"), py::arg("times"), py::arg("force_time_domain") = false,
     "Exact amplitude; x is eps_d for model I and V for model II.");

  m.def("finite_chain", [](const std::string& model, double g, double x, int n_sites, std::vector<double> times) {
    return series_dict(amplitude_finite_chain(params_of(model, g, x), n_sites, times));
  }, py::arg("model"), py::arg("g"), py::arg("x"), py::arg("n_sites"), py::arg("times"));

  m.def("approximation", [](const std::string& method, const std::string& model, double g, double x,
                            std::vector<double> times) {
    return series_dict(approximation_series(method_from_string(method), params_of(model, g, x), times));
  }, py::arg("method"), py::arg("model"), py::arg("g"), py::arg("x"), py::arg("times"));

  m.def("timescales", [](const std::string& model, double g, double x) {
    const auto p = params_of(model, g, x);
    const auto t = std::holds_alternative<ModelOneParams>(p) ? timescales(std::get<ModelOneParams>(p))
                                                             : timescales(std::get<ModelTwoParams>(p));
    py::dict d;
    d["t_zeno"] = t.t_zeno;
    d["t_ep"] = t.t_ep;
    d["gamma_bar"] = t.gamma_bar;
    return d;
  }, py::arg("model"), py::arg("g"), py::arg("x"));

  m.def("encircle_once", [](double g, const std::string& dir) {
    const auto r = encircle_once(g, direction_from_string(dir));
    py::dict d;
    d["minus_to"] = label(r.minus_to);
    d["plus_to"] = label(r.plus_to);
    d["residual"] = r.residual;
    return d;
  }, py::arg("g"), py::arg("direction") = "ccw");

  m.def("revolution_cycle", [](double g, const std::string& dir, int n) {
    std::vector<std::pair<std::string, std::string>> out;
    for (auto& c : revolution_cycle(g, direction_from_string(dir), n)) out.emplace_back(label(c[0]), label(c[1]));
    return out;
  }, py::arg("g"), py::arg("direction") = "ccw", py::arg("n_loops") = 4,
     "Images (of Psi+, of Psi-) after each loop.");

  m.def("trace_lambda_loop", [](double g, double center, double radius, const std::string& dir, int steps) {
    const auto t = trace_lambda_loop(g, {center, radius, direction_from_string(dir), steps});
    py::dict d;
    d["xi"] = t.xi;
    d["branch_a"] = t.branch[0];
    d["branch_b"] = t.branch[1];
    d["swapped"] = t.swapped;
    d["encloses_both_eps"] = t.encloses_both_eps;
    return d;
  }, py::arg("g"), py::arg("center"), py::arg("radius"), py::arg("direction") = "ccw", py::arg("steps") = 256);

  m.def("resolvent_identity", [](double g, double eps_d, Complex E) {
    const auto s = resolvent_identity_check({g, eps_d}, E);
    return std::make_pair(s.lhs, s.rhs);
  }, py::arg("g"), py::arg("eps_d"), py::arg("E"));
}
