#ifndef STOCHFV_SOLVER_HPP
#define STOCHFV_SOLVER_HPP

#include <functional>
#include <limits>
#include <vector>

#include "stochfv/grid.hpp"
#include "stochfv/models.hpp"
#include "stochfv/random_space.hpp"
#include "stochfv/recon.hpp"
#include "stochfv/weno.hpp"

namespace stochfv {

enum class BcMode { Free, Periodic };

struct SolverConfig {
  SlopeParams slope{1.3};
  double cfl = 0.45;
  WenoParams weno;
  double t_final = 0.0;
  BcMode bc_x = BcMode::Free;
  BcMode bc_y = BcMode::Free;
  int draining_component = -1;  // -1 disables the draining limiter
  std::vector<double> output_times;
  bool accuracy_dt = false;  // additionally enforce dt <= dx^1.5/(2 max speed)
  int threads = 1;

  void validate() const;
};

struct NumericalAbort : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Central-upwind numerical flux from one-sided states, their physical
/// fluxes, and the speed bounds a- <= 0 <= a+.  Degenerates to the
/// arithmetic-mean flux when a+ - a- vanishes.
StateVec cu_flux(const StateVec& um, const StateVec& up, const StateVec& fm,
                 const StateVec& fp, double am, double ap, int ncomp);

struct RunReport {
  int steps = 0;
  double wall_seconds = 0.0;
  /// Minimum evolved average of the draining component over all cells and
  /// Runge-Kutta stages (+inf when draining is disabled).
  double min_draining_avg = std::numeric_limits<double>::infinity();
  std::vector<double> output_times;
  std::vector<std::vector<double>> totals_at_output;
};

class Solver {
 public:
  Solver(Grid grid, Model model, Pdf pdf, SolverConfig config);

  /// Interface flux quadratures, well-balanced source averages, and speed
  /// maxima for one semi-discrete right-hand-side evaluation.
  struct Assembly {
    std::vector<double> flux_x;  // (x-face, k, l, m, comp)
    std::vector<double> flux_y;  // (j, y-face, l, comp), d2s1 only
    std::vector<double> source;  // (cell, comp)
    double max_speed_x = 0.0;
    double max_speed_y = 0.0;
  };

  Assembly assemble(const Field& field) const;

  /// CFL timestep from the speed maxima; schedule_cap bounds the result and
  /// is returned when the flow is quiescent.
  double cfl_dt(const Assembly& a, double schedule_cap) const;

  /// Flux differences plus sources; when dt > 0 and a draining component is
  /// configured, interface fluxes of that component are rescaled by the
  /// draining-timestep limiter first.
  std::vector<double> rhs(const Field& field, const Assembly& a, double dt) const;

  /// One SSP-RK3 step; `first_stage` is the assembly of `field` (reused so
  /// the caller's CFL assembly is not recomputed).  Draining is applied
  /// inside every stage.
  void step(Field& field, const Assembly& first_stage, double dt);

  /// Advance to t_final, landing exactly on every output time and invoking
  /// the callback there (including t = 0 if scheduled or t_final == 0).
  RunReport run(Field& field,
                const std::function<void(double, const Field&)>& on_output);

  const Grid& grid() const { return grid_; }
  const Model& model() const { return model_; }
  const Pdf& pdf() const { return pdf_; }
  const SolverConfig& config() const { return config_; }

  /// Weighted cell averages of the bottom topography (SWE), one per cell.
  const std::vector<double>& bottom_cell_averages() const { return zbar_; }

  double min_draining_seen() const { return min_drain_; }

 private:
  Grid grid_;
  Model model_;
  Pdf pdf_;
  SolverConfig config_;

  int nc_ = 0, nx_ = 0, ny_ = 0, nxi_ = 0, neta_ = 0;
  int nrand_ = 0, nnode_ = 0;  // nodes per random cell: 3 (s=1) or 9 (s=2)

  // Random-space caches: center densities, node coordinates, node quadrature
  // weights mu*nu.
  std::vector<double> nu_center_;    // (l, m)
  std::vector<double> xi_node_;      // (l, 3)
  std::vector<double> eta_node_;     // (m, 3)
  std::vector<double> node_weight_;  // (l, m, node)

  // SWE caches: weighted bottom cell averages and face samples at the
  // Gauss-Legendre nodes.
  std::vector<double> zbar_;    // (j, k, l, m)
  std::vector<double> zface_x_; // (x-face, k, l, m, node)
  std::vector<double> zface_y_; // (j, y-face, l, node)

  double min_drain_ = std::numeric_limits<double>::infinity();

  std::size_t cell_index(int j, int k, int r) const {
    return (std::size_t(j) * ny_ + k) * nrand_ + r;
  }
  std::size_t fx_index(int f, int k, int r) const {
    return (std::size_t(f) * ny_ + k) * nrand_ + r;
  }
  std::size_t fy_index(int j, int f, int r) const {
    return (std::size_t(j) * (ny_ + 1) + f) * nrand_ + r;
  }

  void build_caches();
  void sweep_x(const Field& field, Assembly& a) const;
  void sweep_y(const Field& field, Assembly& a) const;
  void apply_draining(const Field& field, const Assembly& a, double dt,
                      std::vector<double>& fx_scale,
                      std::vector<double>& fy_scale) const;
};

/// Weighted cell averages of a bottom topography function via the
/// trapezoidal rule in the physical directions and the Gauss-Legendre rule
/// in the random directions.
std::vector<double> bottom_cell_average(
    const Grid& grid, const Pdf& pdf,
    const std::function<double(double, double, double, double)>& bottom);

}  // namespace stochfv

#endif
