#include "stochfv/grid.hpp"

namespace stochfv {

std::string to_string(GridConfig cfg) {
  switch (cfg) {
    case GridConfig::d1s1: return "d1s1";
    case GridConfig::d1s2: return "d1s2";
    case GridConfig::d2s1: return "d2s1";
  }
  return "?";
}

Grid build_grid(GridConfig config, const std::vector<Axis>& axes) {
  Grid g;
  g.config = config;
  switch (config) {
    case GridConfig::d1s1:
      if (axes.size() != 2)
        throw std::invalid_argument("d1s1 grid needs axes (x, xi)");
      g.x = axes[0];
      g.xi = axes[1];
      break;
    case GridConfig::d1s2:
      if (axes.size() != 3)
        throw std::invalid_argument("d1s2 grid needs axes (x, xi, eta)");
      g.x = axes[0];
      g.xi = axes[1];
      g.eta = axes[2];
      break;
    case GridConfig::d2s1:
      if (axes.size() != 3)
        throw std::invalid_argument("d2s1 grid needs axes (x, y, xi)");
      g.x = axes[0];
      g.y = axes[1];
      g.xi = axes[2];
      break;
  }
  return g;
}

std::vector<double> field_total(const Field& field) {
  const int nc = field.n_components;
  std::vector<double> total(nc, 0.0);
  const double vol = field.grid.cell_volume();
  const std::size_t ncells = field.grid.n_cells_total();
  for (std::size_t cell = 0; cell < ncells; ++cell)
    for (int c = 0; c < nc; ++c)
      total[c] += field.data[cell * nc + c];
  for (int c = 0; c < nc; ++c) total[c] *= vol;
  return total;
}

}  // namespace stochfv
