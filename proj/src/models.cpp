#include "stochfv/models.hpp"

#include <cmath>

namespace stochfv {

double euler_pressure(const StateVec& u, double gamma, int ncomp) {
  const double rho = u[0];
  if (!(rho > 0)) throw InadmissibleState("non-positive density");
  double kin = u[1] * u[1];
  if (ncomp == 4) kin += u[2] * u[2];
  kin /= 2.0 * rho;
  return (gamma - 1.0) * (u[ncomp - 1] - kin);
}

StateVec euler1d_flux(const StateVec& u, double gamma) {
  const double p = euler_pressure(u, gamma, 3);
  if (!(p > 0)) throw InadmissibleState("non-positive pressure");
  const double vel = u[1] / u[0];
  return {u[1], u[1] * vel + p, vel * (u[2] + p), 0.0};
}

std::pair<StateVec, StateVec> euler2d_fluxes(const StateVec& u, double gamma) {
  const double p = euler_pressure(u, gamma, 4);
  if (!(p > 0)) throw InadmissibleState("non-positive pressure");
  const double vx = u[1] / u[0], vy = u[2] / u[0];
  StateVec F = {u[1], u[1] * vx + p, u[1] * vy, vx * (u[3] + p)};
  StateVec G = {u[2], u[2] * vx, u[2] * vy + p, vy * (u[3] + p)};
  return {F, G};
}

std::pair<double, double> euler_speeds(const StateVec& um, const StateVec& up,
                                       double gamma, int direction, int ncomp) {
  auto lam = [&](const StateVec& u) {
    const double p = euler_pressure(u, gamma, ncomp);
    if (!(p > 0)) throw InadmissibleState("non-positive pressure in speed bound");
    const double c = std::sqrt(gamma * p / u[0]);
    const double un = u[1 + direction] / u[0];
    return std::pair<double, double>{un - c, un + c};
  };
  auto [l1m, lNm] = lam(um);
  auto [l1p, lNp] = lam(up);
  return {std::min({l1m, l1p, 0.0}), std::max({lNm, lNp, 0.0})};
}

StateVec swe1d_flux(const StateVec& u, double g) {
  const double h = u[0];
  const double vel = h > 0 ? u[1] / h : 0.0;
  return {u[1], u[1] * vel + 0.5 * g * h * h, 0.0, 0.0};
}

std::pair<StateVec, StateVec> swe2d_fluxes(const StateVec& u, double g) {
  const double h = u[0];
  const double vx = h > 0 ? u[1] / h : 0.0;
  const double vy = h > 0 ? u[2] / h : 0.0;
  StateVec F = {u[1], u[1] * vx + 0.5 * g * h * h, u[1] * vy, 0.0};
  StateVec G = {u[2], u[2] * vx, u[2] * vy + 0.5 * g * h * h, 0.0};
  return {F, G};
}

std::pair<double, double> swe_speeds(const StateVec& um, const StateVec& up,
                                     double g, int direction) {
  auto lam = [&](const StateVec& u) {
    const double h = u[0] > 0 ? u[0] : 0.0;
    const double c = std::sqrt(g * h);
    const double un = h > 0 ? u[1 + direction] / u[0] : 0.0;
    return std::pair<double, double>{un - c, un + c};
  };
  auto [l1m, lNm] = lam(um);
  auto [l1p, lNp] = lam(up);
  return {std::min({l1m, l1p, 0.0}), std::max({lNm, lNp, 0.0})};
}

double desingularize(double h, double& momentum, double eps) {
  if (h <= 0.0) {
    momentum = 0.0;
    return 0.0;
  }
  const double hm = h > eps ? h : eps;
  const double u = 2.0 * h * momentum / (h * h + hm * hm);
  momentum = h * u;
  return u;
}

StateVec Model::flux(const StateVec& u, int direction, double xi, double eta) const {
  switch (kind) {
    case ModelKind::Euler1D:
      return euler1d_flux(u, gamma(xi, eta));
    case ModelKind::Euler2D: {
      auto [F, G] = euler2d_fluxes(u, gamma(xi, eta));
      return direction == 0 ? F : G;
    }
    case ModelKind::Swe1D:
      return swe1d_flux(u, g);
    case ModelKind::Swe2D: {
      auto [F, G] = swe2d_fluxes(u, g);
      return direction == 0 ? F : G;
    }
  }
  return {};
}

std::pair<double, double> Model::speeds(const StateVec& um, const StateVec& up,
                                        int direction, double xi, double eta) const {
  if (is_swe()) return swe_speeds(um, up, g, direction);
  return euler_speeds(um, up, gamma(xi, eta), direction, n_components);
}

Model Model::euler1d(double g) {
  Model m;
  m.kind = ModelKind::Euler1D;
  m.n_components = 3;
  m.gamma = [g](double, double) { return g; };
  return m;
}

Model Model::euler2d(double g) {
  Model m;
  m.kind = ModelKind::Euler2D;
  m.n_components = 4;
  m.gamma = [g](double, double) { return g; };
  return m;
}

Model Model::swe1d(double g, double eps) {
  Model m;
  m.kind = ModelKind::Swe1D;
  m.n_components = 2;
  m.g = g;
  m.desing_eps = eps;
  return m;
}

Model Model::swe2d(double g, double eps) {
  Model m;
  m.kind = ModelKind::Swe2D;
  m.n_components = 3;
  m.g = g;
  m.desing_eps = eps;
  return m;
}

}  // namespace stochfv
