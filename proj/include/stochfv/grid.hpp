#ifndef STOCHFV_GRID_HPP
#define STOCHFV_GRID_HPP

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace stochfv {

/// Uniform 1-D axis: cell counts are the primitive, spacings are derived.
struct Axis {
  double lo = 0.0;
  double hi = 1.0;
  int n_cells = 1;

  Axis() = default;
  Axis(double lo_, double hi_, int n) : lo(lo_), hi(hi_), n_cells(n) {
    if (!(hi > lo)) throw std::invalid_argument("Axis: hi must exceed lo");
    if (n_cells < 1) throw std::invalid_argument("Axis: need at least one cell");
  }

  double spacing() const { return (hi - lo) / n_cells; }
  /// Face j, j = 0..n_cells.
  double face(int j) const { return lo + j * spacing(); }
  /// Center of cell j, j = 0..n_cells-1.
  double center(int j) const { return lo + (j + 0.5) * spacing(); }
};

/// Dimensional configuration: physical dims x random dims.
enum class GridConfig { d1s1, d1s2, d2s1 };

std::string to_string(GridConfig cfg);

/// Tensor-product mesh over physical (x[,y]) and random (xi[,eta]) axes.
/// Axes that are absent in a configuration degenerate to a single cell.
struct Grid {
  GridConfig config = GridConfig::d1s1;
  Axis x, y, xi, eta;

  int nx() const { return x.n_cells; }
  int ny() const { return has_y() ? y.n_cells : 1; }
  int nxi() const { return xi.n_cells; }
  int neta() const { return has_eta() ? eta.n_cells : 1; }

  bool has_y() const { return config == GridConfig::d2s1; }
  bool has_eta() const { return config == GridConfig::d1s2; }

  std::size_t n_phys() const { return std::size_t(nx()) * ny(); }
  std::size_t n_rand() const { return std::size_t(nxi()) * neta(); }
  std::size_t n_cells_total() const { return n_phys() * n_rand(); }

  /// Product of spacings over all active dimensions.
  double cell_volume() const {
    double v = x.spacing() * xi.spacing();
    if (has_y()) v *= y.spacing();
    if (has_eta()) v *= eta.spacing();
    return v;
  }
  /// Product of spacings over physical dimensions only.
  double phys_cell_volume() const {
    return has_y() ? x.spacing() * y.spacing() : x.spacing();
  }
  /// Product of spacings over random dimensions only.
  double rand_cell_volume() const {
    return has_eta() ? xi.spacing() * eta.spacing() : xi.spacing();
  }
};

Grid build_grid(GridConfig config, const std::vector<Axis>& axes);

/// Container of nu-weighted conserved cell averages.
/// Layout: physical cell (j outer, k inner), then random cell (l outer,
/// m inner), component innermost; the random index runs fastest within a
/// physical cell so xi-stencils at a fixed x-face are contiguous.
struct Field {
  Grid grid;
  int n_components = 1;
  std::vector<double> data;

  Field() = default;
  Field(const Grid& g, int ncomp)
      : grid(g), n_components(ncomp),
        data(g.n_cells_total() * std::size_t(ncomp), 0.0) {}

  std::size_t index(int j, int k, int l, int m, int c) const {
    return (((std::size_t(j) * grid.ny() + k) * grid.nxi() + l) *
                grid.neta() + m) * n_components + c;
  }
  double& at(int j, int k, int l, int m, int c) { return data[index(j, k, l, m, c)]; }
  double at(int j, int k, int l, int m, int c) const { return data[index(j, k, l, m, c)]; }
};

/// Sum of value * cell volume over all cells, per component, in a fixed
/// traversal order (conservation diagnostic).
std::vector<double> field_total(const Field& field);

}  // namespace stochfv

#endif
