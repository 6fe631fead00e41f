#ifndef STOCHFV_RANDOM_SPACE_HPP
#define STOCHFV_RANDOM_SPACE_HPP

#include <array>
#include <cmath>
#include <vector>

#include "stochfv/grid.hpp"

namespace stochfv {

/// 1-D probability density on an interval, evaluable in closed form.
/// Evaluation outside the support is clamped to 0.
class Pdf1 {
 public:
  static Pdf1 uniform(double a, double b);
  static Pdf1 normal(double mean, double variance);
  /// Beta density shifted to [-1,1]; density (1+x)^(alpha-1)(1-x)^(beta-1)
  /// normalized over [-1,1].
  static Pdf1 beta_shifted(double alpha, double beta);

  double operator()(double x) const;

 private:
  enum class Kind { Uniform, Normal, Beta } kind_ = Kind::Uniform;
  double a_ = -1.0, b_ = 1.0;    // support (uniform/beta)
  double p0_ = 0.5, p1_ = 0.0;   // kind-specific parameters
  double norm_ = 0.5;
};

/// Joint density over the random axes: product of independent 1-D densities.
struct Pdf {
  Pdf1 xi;
  Pdf1 eta;        // ignored unless the grid has an eta axis
  bool has_eta = false;

  explicit Pdf(Pdf1 xi_pdf) : xi(xi_pdf) {}
  Pdf(Pdf1 xi_pdf, Pdf1 eta_pdf) : xi(xi_pdf), eta(eta_pdf), has_eta(true) {}

  double operator()(double xi_v, double eta_v = 0.0) const {
    double v = xi(xi_v);
    if (has_eta) v *= eta(eta_v);
    return v;
  }
};

/// Densities are floored before any division so that the weighted
/// formulation stays finite in underflowing tails.
inline double floor_density(double nu) { return nu > 1e-300 ? nu : 1e-300; }

/// Per-cell 3-node Gauss-Legendre rule: weights and the node offset kappa
/// in units of the cell spacing.
namespace quad {
inline constexpr std::array<double, 3> mu = {5.0 / 18.0, 4.0 / 9.0, 5.0 / 18.0};
inline const double kappa = 0.5 * std::sqrt(3.0 / 5.0);
/// Node offsets from the cell center in units of the spacing: {-k, 0, +k}.
inline const std::array<double, 3> offset = {-kappa, 0.0, kappa};
}  // namespace quad

/// The three Gauss-Legendre nodes of cell `cell` of `axis`.
std::array<double, 3> gl_nodes(const Axis& axis, int cell);

struct StatisticsResult {
  int n_phys = 0;
  int n_components = 0;
  std::vector<double> levels;
  std::vector<double> mean;      // [phys][comp]
  std::vector<double> stddev;    // [phys][comp]
  std::vector<double> quantile;  // [phys][comp][level]

  double mean_at(int p, int c) const { return mean[std::size_t(p) * n_components + c]; }
  double std_at(int p, int c) const { return stddev[std::size_t(p) * n_components + c]; }
  double quantile_at(int p, int c, int lev) const {
    return quantile[(std::size_t(p) * n_components + c) * levels.size() + lev];
  }
};

/// Statistics of the cell-center point values recovered from weighted
/// averages: U = Ubar/nu at cell centers, midpoint quadrature in the random
/// directions, step-function weighted empirical CDF for quantiles.
StatisticsResult statistics(const Field& field, const Pdf& pdf,
                            const std::vector<double>& levels);

/// Same extraction applied to already-recovered point values laid out like a
/// Field (used for derived quantities such as pressure).
StatisticsResult statistics_from_points(const Grid& grid, int n_components,
                                        const std::vector<double>& point_values,
                                        const Pdf& pdf,
                                        const std::vector<double>& levels);

}  // namespace stochfv

#endif
