// Python bindings. Matrices cross the boundary as complex128 numpy arrays.

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mmimo/analytic.hpp"
#include "mmimo/beamforming.hpp"
#include "mmimo/channel.hpp"
#include "mmimo/harness.hpp"
#include "mmimo/rates.hpp"
#include "mmimo/selection.hpp"

namespace py = pybind11;
using namespace mmimo;

namespace {

using CArray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;

ComplexMatrix from_numpy(const CArray& a) {
  if (a.ndim() != 2) throw std::invalid_argument("expected a 2-D array");
  const auto rows = static_cast<std::size_t>(a.shape(0));
  const auto cols = static_cast<std::size_t>(a.shape(1));
  return ComplexMatrix(rows, cols, std::vector<cplx>(a.data(), a.data() + rows * cols));
}

CArray to_numpy(const ComplexMatrix& m) {
  CArray out({m.rows(), m.cols()});
  std::copy(m.data().begin(), m.data().end(), out.mutable_data());
  return out;
}

}  // namespace

PYBIND11_MODULE(_mmimo, mod) {
  mod.doc() = "Massive-MIMO ZF / MRT / MRC sum rates";

  py::register_exception<ConfigError>(mod, "ConfigError", PyExc_ValueError);
  py::register_exception<DegenerateChannel>(mod, "DegenerateChannel", PyExc_RuntimeError);
  py::register_exception<NotPositiveDefinite>(mod, "NotPositiveDefinite", PyExc_ArithmeticError);

  py::enum_<LinkDirection>(mod, "LinkDirection")
      .value("DOWNLINK", LinkDirection::Downlink)
      .value("UPLINK", LinkDirection::Uplink);
  py::enum_<Scheme>(mod, "Scheme").value("ZF", Scheme::ZF).value("MRT", Scheme::MRT).value("MRC", Scheme::MRC);
  py::enum_<Normalization>(mod, "Normalization")
      .value("VECTOR", Normalization::Vector)
      .value("MATRIX", Normalization::Matrix)
      .value("NONE", Normalization::None);

  py::class_<SystemConfig>(mod, "SystemConfig")
      .def(py::init([](std::uint32_t m, std::uint32_t k, double pt, double pu, std::uint64_t trials,
                       std::uint64_t seed) { return SystemConfig{m, k, pt, pu, trials, seed}; }),
           py::arg("m") = 24, py::arg("k") = 20, py::arg("pt") = 1.0, py::arg("pu") = 1.0,
           py::arg("trials") = 10000, py::arg("seed") = 1)
      .def_readwrite("m", &SystemConfig::m)
      .def_readwrite("k", &SystemConfig::k)
      .def_readwrite("pt", &SystemConfig::pt)
      .def_readwrite("pu", &SystemConfig::pu)
      .def_readwrite("trials", &SystemConfig::trials)
      .def_readwrite("seed", &SystemConfig::seed)
      .def(py::self == py::self)
      .def("__repr__", [](const SystemConfig& c) {
        return "SystemConfig(m=" + std::to_string(c.m) + ", k=" + std::to_string(c.k) +
               ", pt=" + std::to_string(c.pt) + ", pu=" + std::to_string(c.pu) +
               ", trials=" + std::to_string(c.trials) + ", seed=" + std::to_string(c.seed) + ")";
      });

  mod.def("validate_config",
          [](const SystemConfig& cfg, Scheme scheme) {
            std::vector<std::string> warnings;
            SystemConfig out = validate_config(cfg, scheme, &warnings);
            return py::make_tuple(out, warnings);
          },
          py::arg("cfg"), py::arg("scheme"), "Returns (config, warnings); raises ConfigError.");
  mod.def("db_to_linear", &db_to_linear);
  mod.def("linear_to_db", &linear_to_db);

  // Channel and beamformers.
  mod.def("draw_channel",
          [](std::uint32_t k, std::uint32_t m, std::uint64_t seed, std::uint64_t trial) {
            return to_numpy(draw_channel(k, m, {seed, trial}));
          },
          py::arg("k"), py::arg("m"), py::arg("seed"), py::arg("trial") = 0);
  mod.def("invert_hpd", [](const CArray& a) { return to_numpy(invert_hpd(from_numpy(a))); });
  mod.def("zf_precoder", [](const CArray& h) { return to_numpy(zf_precoder(from_numpy(h))); });
  mod.def("mrt_precoder", [](const CArray& h) { return to_numpy(mrt_precoder(from_numpy(h))); });
  mod.def("zf_combiner", [](const CArray& h) { return to_numpy(zf_combiner(from_numpy(h))); });
  mod.def("mrc_combiner", [](const CArray& h) { return to_numpy(mrc_combiner(from_numpy(h))); });
  mod.def("normalize", [](const CArray& f, Normalization n) { return to_numpy(normalize(from_numpy(f), n)); });

  mod.def("downlink_sinr",
          [](const CArray& h, Scheme scheme, Normalization norm, double pt) {
            const ComplexMatrix hm = from_numpy(h);
            return downlink_sinr(hm, make_precoder(hm, scheme, norm), pt).values;
          },
          py::arg("h"), py::arg("scheme"), py::arg("normalization"), py::arg("pt"));
  mod.def("uplink_sinr",
          [](const CArray& h, Scheme scheme, double pu) {
            const ComplexMatrix hm = from_numpy(h);
            return uplink_sinr(hm, make_combiner(hm, scheme), pu).values;
          },
          py::arg("h"), py::arg("scheme"), py::arg("pu"));

  // Monte Carlo.
  py::class_<RateEstimate>(mod, "RateEstimate")
      .def_readonly("mean_rate", &RateEstimate::mean_rate)
      .def_readonly("std_error", &RateEstimate::std_error)
      .def_readonly("trials", &RateEstimate::trials)
      .def("ci95_halfwidth", &RateEstimate::ci95_halfwidth)
      .def("__repr__", [](const RateEstimate& r) {
        return "RateEstimate(mean_rate=" + std::to_string(r.mean_rate) +
               ", std_error=" + std::to_string(r.std_error) + ", trials=" + std::to_string(r.trials) + ")";
      });

  mod.def("ergodic_sum_rate",
          [](const SystemConfig& cfg, LinkDirection d, Scheme s, Normalization n, unsigned threads) {
            py::gil_scoped_release release;
            return ergodic_sum_rate(cfg, d, s, n, {threads});
          },
          py::arg("cfg"), py::arg("direction"), py::arg("scheme"), py::arg("normalization"),
          py::arg("threads") = 1);
  mod.def("ergodic_zf_mat_u1",
          [](const SystemConfig& cfg, unsigned threads) {
            py::gil_scoped_release release;
            return ergodic_zf_mat_u1(cfg, {threads});
          },
          py::arg("cfg"), py::arg("threads") = 1);

  // Closed forms and thresholds.
  auto an = mod.def_submodule("analytic", "Closed-form sum rates");
  an.def("zf_dl_lower", &analytic::zf_dl_lower, py::arg("pt"), py::arg("m"), py::arg("k"));
  an.def("zf_dl_vec", &analytic::zf_dl_vec, py::arg("pt"), py::arg("m"), py::arg("k"));
  an.def("mrt_dl_vec_low", &analytic::mrt_dl_vec_low, py::arg("pt"), py::arg("m"), py::arg("k"));
  an.def("mrt_dl_vec_high", &analytic::mrt_dl_vec_high, py::arg("pt"), py::arg("m"), py::arg("k"));
  an.def("mrt_dl_mat", &analytic::mrt_dl_mat, py::arg("pt"), py::arg("m"), py::arg("k"));
  an.def("mrc_ul_high", &analytic::mrc_ul_high, py::arg("pu"), py::arg("m"), py::arg("k"));
  an.def("mrc_ul_low", &analytic::mrc_ul_low, py::arg("pu"), py::arg("m"), py::arg("k"));
  an.def("zf_ul_low", &analytic::zf_ul_low, py::arg("pu"), py::arg("m"), py::arg("k"));
  an.def("gradient_difference", &analytic::gradient_difference, py::arg("pt"), py::arg("m"));

  auto sel = mod.def_submodule("selection", "Mode-selection thresholds");
  sel.def("p_th_dl", &selection::p_th_dl, py::arg("m"), py::arg("k"));
  sel.def("p_th_ul", &selection::p_th_ul, py::arg("m"), py::arg("k"));
  sel.def("p_cross", &selection::p_cross, py::arg("direction"), py::arg("m"));
  sel.def("k_cross_dl", &selection::k_cross_dl, py::arg("pt"), py::arg("m"));
  sel.def("k_cross_ul", &selection::k_cross_ul, py::arg("pu"), py::arg("m"));
  sel.def("select_mode",
          [](LinkDirection d, double power, std::uint32_t m, std::uint32_t k) {
            const auto dec = selection::select_mode(d, power, m, k);
            return py::make_tuple(dec.chosen, dec.threshold_value);
          },
          py::arg("direction"), py::arg("power"), py::arg("m"), py::arg("k"),
          "Returns (chosen scheme, threshold used).");

  // Harness.
  mod.def("figure_ids", [] {
    std::vector<std::string> ids;
    for (std::string_view id : harness::figure_ids()) ids.emplace_back(id);
    return ids;
  });
  mod.def("reproduce_fig",
          [](const std::string& id, std::optional<std::uint64_t> trials, std::optional<std::uint64_t> seed,
             unsigned threads) {
            harness::SweepSpec spec = harness::figure_spec(id);
            if (trials) spec.fixed.trials = *trials;
            if (seed) spec.fixed.seed = *seed;
            py::gil_scoped_release release;
            return harness::run_sweep(spec, {threads});
          },
          py::arg("figure"), py::arg("trials") = py::none(), py::arg("seed") = py::none(),
          py::arg("threads") = 1, "CSV text for a figure preset.");
  mod.def("thresholds", &harness::print_thresholds, py::arg("m"), py::arg("k"), py::arg("pt_db") = py::none(),
          py::arg("pu_db") = py::none());
}
