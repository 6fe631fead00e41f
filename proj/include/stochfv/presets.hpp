#ifndef STOCHFV_PRESETS_HPP
#define STOCHFV_PRESETS_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "stochfv/grid.hpp"
#include "stochfv/models.hpp"
#include "stochfv/random_space.hpp"
#include "stochfv/solver.hpp"

namespace stochfv {

/// Pointwise initial data: writes n_components values at (x, y, xi, eta).
/// Euler presets fill conserved variables; shallow-water presets fill the
/// water surface w followed by velocities (u[, v]).
using InitialData =
    std::function<void(double x, double y, double xi, double eta, double* out)>;

/// A fully specified benchmark problem: physics, random model, mesh
/// defaults, scheme parameters, and initial data.
struct Preset {
  std::string name;
  std::string description;
  GridConfig config = GridConfig::d1s1;
  Model model;
  Pdf pdf{Pdf1::uniform(-1.0, 1.0)};
  Axis x{0.0, 1.0, 1}, y{0.0, 1.0, 1}, xi{-1.0, 1.0, 5}, eta{-1.0, 1.0, 5};
  SolverConfig solver;
  double sigma = 0.0;      // perturbation amplitude, where applicable
  bool has_sigma = false;  // whether sigma is meaningful for this preset
  InitialData initial;
};

std::vector<std::string> preset_names();

/// Build a preset by name; an explicit sigma overrides the default
/// perturbation amplitude.  Throws std::invalid_argument for unknown names.
Preset make_preset(const std::string& name,
                   std::optional<double> sigma = std::nullopt);

Grid preset_grid(const Preset& p);

/// Project pointwise initial data onto weighted cell averages with a
/// per-cell tensor quadrature: 3-point Gauss-Legendre in each random
/// dimension and 3 midpoint subsamples in each physical dimension.  For
/// shallow water the surface average is converted to a depth average via the
/// solver's bottom cell averages (exact for lake-at-rest data), clamped at 0,
/// and momenta use the pointwise depth max(w,Z)-Z.
Field initialize_field(const Grid& grid, const Model& model, const Pdf& pdf,
                       const InitialData& initial);

}  // namespace stochfv

#endif
