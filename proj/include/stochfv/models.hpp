#ifndef STOCHFV_MODELS_HPP
#define STOCHFV_MODELS_HPP

#include <array>
#include <functional>
#include <stdexcept>

#include "stochfv/random_space.hpp"

namespace stochfv {

/// Conserved state, up to 4 components (2-D Euler).
using StateVec = std::array<double, 4>;

struct InadmissibleState : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---- Euler ideal-gas equations --------------------------------------------

double euler_pressure(const StateVec& u, double gamma, int ncomp);

/// 1-D Euler flux of (rho, rho*u, E).
StateVec euler1d_flux(const StateVec& u, double gamma);

/// One-sided speed bounds from the characteristic speeds u_n -+ c, clamped
/// at 0. `direction` is 0 for x (velocity component 1) and 1 for y.
std::pair<double, double> euler_speeds(const StateVec& um, const StateVec& up,
                                       double gamma, int direction, int ncomp);

/// 2-D Euler fluxes of (rho, rho*u, rho*v, E).
std::pair<StateVec, StateVec> euler2d_fluxes(const StateVec& u, double gamma);

// ---- Saint-Venant shallow water -------------------------------------------

/// 1-D shallow-water flux of (h, hu); assumes momentum already consistent
/// with a desingularized velocity.
StateVec swe1d_flux(const StateVec& u, double g);

/// 2-D shallow-water fluxes of (h, hu, hv).
std::pair<StateVec, StateVec> swe2d_fluxes(const StateVec& u, double g);

std::pair<double, double> swe_speeds(const StateVec& um, const StateVec& up,
                                     double g, int direction);

/// Regularized velocity recovery u = 2h(hu)/(h^2 + max(h,eps)^2); returns
/// the velocity and overwrites the momentum with h*u.
double desingularize(double h, double& momentum, double eps);

/// Nonnegative water depth at a face from surface and bottom samples.
inline double positivity_fix(double w, double z) {
  return (w > z ? w : z) - z;
}

/// Well-balanced source quadrature for one Gauss-Legendre node of one cell:
/// -(g/2)(h_right_of_left_face + h_left_of_right_face)(Z_right - Z_left).
inline double swe_wb_source(double h_lo, double h_hi, double z_lo, double z_hi,
                            double g) {
  return -0.5 * g * (h_lo + h_hi) * (z_hi - z_lo);
}

// ---- Model bundle ----------------------------------------------------------

enum class ModelKind { Euler1D, Euler2D, Swe1D, Swe2D };

/// Physics bundle: flux/speed dispatch plus per-system parameters.  For
/// Euler, gamma may depend on the random coordinates; for shallow water, a
/// closed-form bottom topography is attached.
struct Model {
  ModelKind kind = ModelKind::Euler1D;
  int n_components = 3;

  std::function<double(double xi, double eta)> gamma =
      [](double, double) { return 1.4; };

  double g = 1.0;             // gravity (SWE)
  double desing_eps = 1e-6;   // desingularization length (SWE)
  std::function<double(double x, double y, double xi, double eta)> bottom =
      [](double, double, double, double) { return 0.0; };

  bool is_swe() const {
    return kind == ModelKind::Swe1D || kind == ModelKind::Swe2D;
  }

  StateVec flux(const StateVec& u, int direction, double xi, double eta) const;
  std::pair<double, double> speeds(const StateVec& um, const StateVec& up,
                                   int direction, double xi, double eta) const;

  static Model euler1d(double gamma = 1.4);
  static Model euler2d(double gamma = 1.4);
  static Model swe1d(double g, double eps);
  static Model swe2d(double g, double eps);
};

}  // namespace stochfv

#endif
