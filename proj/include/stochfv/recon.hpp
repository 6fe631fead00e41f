#ifndef STOCHFV_RECON_HPP
#define STOCHFV_RECON_HPP

#include <algorithm>
#include <stdexcept>

namespace stochfv {

/// min if all arguments positive, max if all negative, 0 otherwise.
inline double minmod(double a, double b, double c) {
  if (a > 0 && b > 0 && c > 0) return std::min({a, b, c});
  if (a < 0 && b < 0 && c < 0) return std::max({a, b, c});
  return 0.0;
}

struct SlopeParams {
  double theta = 1.3;  // in [1,2]; larger is less dissipative
  explicit SlopeParams(double t = 1.3) : theta(t) {
    if (t < 1.0 || t > 2.0)
      throw std::invalid_argument("minmod theta must lie in [1,2]");
  }
};

/// Generalized minmod slope from three consecutive cell averages, already
/// multiplied by the spacing (face offsets are +-slope/2).
inline double minmod_slope(double um, double u0, double up, double theta) {
  return minmod(theta * (u0 - um), 0.5 * (up - um), theta * (up - u0));
}

}  // namespace stochfv

#endif
