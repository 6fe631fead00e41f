#ifndef STOCHFV_CLI_IO_HPP
#define STOCHFV_CLI_IO_HPP

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "stochfv/presets.hpp"

namespace stochfv {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A parsed configuration: the resolved preset plus the mesh triples used by
/// the convergence harness (ignored by plain solves).
struct LoadedConfig {
  Preset preset;
  std::array<int, 3> conv_nxi = {8, 16, 32};
  std::array<int, 3> conv_nx = {24, 144, 864};
};

/// Parse flat `key = value` text (# comments) and apply `overrides`
/// (each "key=value") on top.  Throws ConfigError on unknown presets or
/// keys, malformed values, and out-of-range theta/cfl.
LoadedConfig load_config_text(const std::string& text,
                              const std::vector<std::string>& overrides = {});

/// Same, reading the text from a file; a missing file is a ConfigError.
LoadedConfig load_config(const std::string& path,
                         const std::vector<std::string>& overrides = {});

/// Solve the preset and write one delimited text file per output time and
/// quantity plus a run manifest into `out_dir` (created if needed).
/// Returns the solver run report.
RunReport solve_and_write(const Preset& preset, const std::string& out_dir,
                          int threads);

struct ConvergenceResult {
  std::array<int, 3> nxi{}, nx{};
  bool exact_match = false;  // grids produced identical restricted solutions
  double delta12_w = 0, delta24_w = 0, err_w = 0, rate_w = 0;
  double delta12_hu = 0, delta24_hu = 0, err_hu = 0, rate_hu = 0;
};

/// Three-grid Runge error/rate estimate for the water surface and discharge
/// mean fields.  The random-direction counts must double between meshes and
/// the physical counts must divide evenly (fine-to-coarse cell-average
/// restriction); otherwise a ConfigError is thrown.  A timestep restriction
/// dt <= dx^{3/2}/(2 max speed) is enforced on top of the CFL bound.
ConvergenceResult convergence_study(const Preset& preset,
                                    const std::array<int, 3>& nxi,
                                    const std::array<int, 3>& nx, int threads);

/// Render the convergence table (also written by the CLI).
std::string format_convergence(const ConvergenceResult& r);

}  // namespace stochfv

#endif
