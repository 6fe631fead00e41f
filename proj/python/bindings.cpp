#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "stochfv/cli_io.hpp"
#include "stochfv/solver.hpp"

namespace py = pybind11;
using namespace stochfv;

namespace {

// Solve a preset in memory and return the cell-center statistics of the
// conserved quantities (plus the x/y cell centers) without touching disk.
py::dict solve_statistics(const Preset& preset, std::vector<double> levels,
                          int threads) {
  Grid grid = preset_grid(preset);
  Field field = initialize_field(grid, preset.model, preset.pdf, preset.initial);
  SolverConfig cfg = preset.solver;
  cfg.threads = threads;
  Solver solver(grid, preset.model, preset.pdf, cfg);
  const RunReport report = solver.run(field, nullptr);
  const StatisticsResult stats = statistics(field, preset.pdf, levels);

  std::vector<double> xc(grid.nx());
  for (int j = 0; j < grid.nx(); ++j) xc[j] = grid.x.center(j);
  py::dict out;
  out["x"] = xc;
  if (grid.has_y()) {
    std::vector<double> yc(grid.ny());
    for (int k = 0; k < grid.ny(); ++k) yc[k] = grid.y.center(k);
    out["y"] = yc;
  }
  out["n_components"] = stats.n_components;
  out["mean"] = stats.mean;
  out["std"] = stats.stddev;
  out["quantile"] = stats.quantile;
  out["levels"] = stats.levels;
  out["steps"] = report.steps;
  return out;
}

}  // namespace

PYBIND11_MODULE(_stochfv, m) {
  m.doc() = "Finite-volume solver for hyperbolic balance laws with random inputs";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<NumericalAbort>(m, "NumericalAbort", PyExc_RuntimeError);

  py::class_<Preset>(m, "Preset")
      .def_readonly("name", &Preset::name)
      .def_readonly("description", &Preset::description)
      .def_readonly("sigma", &Preset::sigma)
      .def_readonly("has_sigma", &Preset::has_sigma);

  py::class_<LoadedConfig>(m, "LoadedConfig")
      .def_readonly("preset", &LoadedConfig::preset)
      .def_readonly("conv_nxi", &LoadedConfig::conv_nxi)
      .def_readonly("conv_nx", &LoadedConfig::conv_nx);

  py::class_<RunReport>(m, "RunReport")
      .def_readonly("steps", &RunReport::steps)
      .def_readonly("min_draining_avg", &RunReport::min_draining_avg)
      .def_readonly("output_times", &RunReport::output_times)
      .def_readonly("totals_at_output", &RunReport::totals_at_output);

  py::class_<ConvergenceResult>(m, "ConvergenceResult")
      .def_readonly("nxi", &ConvergenceResult::nxi)
      .def_readonly("nx", &ConvergenceResult::nx)
      .def_readonly("exact_match", &ConvergenceResult::exact_match)
      .def_readonly("err_w", &ConvergenceResult::err_w)
      .def_readonly("rate_w", &ConvergenceResult::rate_w)
      .def_readonly("err_hu", &ConvergenceResult::err_hu)
      .def_readonly("rate_hu", &ConvergenceResult::rate_hu);

  m.def("preset_names", &preset_names, "Names of the built-in benchmark problems");
  m.def(
      "make_preset",
      [](const std::string& name, std::optional<double> sigma) {
        return make_preset(name, sigma);
      },
      py::arg("name"), py::arg("sigma") = std::nullopt);
  m.def("load_config_text", &load_config_text, py::arg("text"),
        py::arg("overrides") = std::vector<std::string>{});
  m.def("load_config", &load_config, py::arg("path"),
        py::arg("overrides") = std::vector<std::string>{});
  m.def("solve_and_write", &solve_and_write, py::arg("preset"),
        py::arg("out_dir"), py::arg("threads") = 1,
        "Solve and write per-quantity statistics files plus a manifest");
  m.def("solve_statistics", &solve_statistics, py::arg("preset"),
        py::arg("levels") = std::vector<double>{},
        py::arg("threads") = 1,
        "Solve in memory; returns cell-center mean/std/quantiles per component");
  m.def("convergence_study", &convergence_study, py::arg("preset"),
        py::arg("nxi"), py::arg("nx"), py::arg("threads") = 1);
  m.def("format_convergence", &format_convergence);
}
