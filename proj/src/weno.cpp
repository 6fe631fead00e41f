#include "stochfv/weno.hpp"

#include <cmath>
#include <stdexcept>

namespace stochfv {

namespace {

const double R15 = std::sqrt(15.0);

// Scale guard over the full 5-value window: mean absolute deviation.
inline double scale_guard(const double u[5]) {
  const double psi = (u[0] + u[1] + u[2] + u[3] + u[4]) / 5.0;
  return (std::fabs(u[0] - psi) + std::fabs(u[1] - psi) + std::fabs(u[2] - psi) +
          std::fabs(u[3] - psi) + std::fabs(u[4] - psi)) / 5.0;
}

inline double sq(double v) { return v * v; }

}  // namespace

double interp_interior(const double u[5], int side, const WenoParams& prm,
                       WenoWeights* diag) {
  const double pm = side > 0 ? 1.0 : -1.0;

  // Parabola values at the +-kappa node; stencils (0,1,2), (1,2,3), (2,3,4).
  const double P0 = (3 + pm * 2 * R15) / 40 * u[0] - (3 + pm * 4 * R15) / 20 * u[1] +
                    (43 + pm * 6 * R15) / 40 * u[2];
  const double P1 = (3 - pm * 2 * R15) / 40 * u[1] + 17.0 / 20.0 * u[2] +
                    (3 + pm * 2 * R15) / 40 * u[3];
  const double P2 = (43 - pm * 6 * R15) / 40 * u[2] - (3 - pm * 4 * R15) / 20 * u[3] +
                    (3 - pm * 2 * R15) / 40 * u[4];

  const double d0 = (43 - pm * 6 * R15) / 240;
  const double d1 = 77.0 / 120.0;
  const double d2 = (43 + pm * 6 * R15) / 240;

  const double b0 = 13.0 / 12.0 * sq(u[0] - 2 * u[1] + u[2]) +
                    0.25 * sq(u[0] - 4 * u[1] + 3 * u[2]);
  const double b1 = 13.0 / 12.0 * sq(u[1] - 2 * u[2] + u[3]) + 0.25 * sq(u[1] - u[3]);
  const double b2 = 13.0 / 12.0 * sq(u[2] - 2 * u[3] + u[4]) +
                    0.25 * sq(3 * u[2] - 4 * u[3] + u[4]);
  const double tau = std::fabs(b2 - b0);

  const double phi2 = sq(scale_guard(u));
  const double a0 = d0 * (1.0 + sq(tau / (b0 + prm.eps1 * phi2 + prm.eps2)));
  const double a1 = d1 * (1.0 + sq(tau / (b1 + prm.eps1 * phi2 + prm.eps2)));
  const double a2 = d2 * (1.0 + sq(tau / (b2 + prm.eps1 * phi2 + prm.eps2)));
  const double asum = a0 + a1 + a2;
  const double w0 = a0 / asum, w1 = a1 / asum, w2 = a2 / asum;

  if (diag) {
    diag->omega[0] = w0;
    diag->omega[1] = w1;
    diag->omega[2] = w2;
    diag->sum = w0 + w1 + w2;
  }
  return w0 * P0 + w1 * P1 + w2 * P2;
}

double interp_boundary(const double u[5], int target_cell, int side,
                       const WenoParams& prm, WenoWeights* diag) {
  if (target_cell != 1 && target_cell != 2)
    throw std::invalid_argument("interp_boundary: target cell must be 1 or 2");
  const double pm = side > 0 ? 1.0 : -1.0;
  const double mp = -pm;  // printed tables carry the opposite sign of the node

  // Parabola values at the target node; stencils on cells (1,2,3), (2,3,4),
  // (3,4,5), i.e. u[0..2], u[1..3], u[2..4].
  double P0, P1, P2;
  if (target_cell == 1) {
    P0 = (43 + mp * 6 * R15) / 40 * u[0] - (3 + mp * 4 * R15) / 20 * u[1] +
         (3 + mp * 2 * R15) / 40 * u[2];
    P1 = (123 + mp * 10 * R15) / 40 * u[1] - (63 + mp * 8 * R15) / 20 * u[2] +
         (43 + mp * 6 * R15) / 40 * u[3];
    P2 = (243 + mp * 14 * R15) / 40 * u[2] - (163 + mp * 12 * R15) / 20 * u[3] +
         (123 + mp * 10 * R15) / 40 * u[4];
  } else {
    P0 = (3 + mp * 2 * R15) / 40 * u[0] + 17.0 / 20.0 * u[1] +
         (3 - mp * 2 * R15) / 40 * u[2];
    P1 = (43 + mp * 6 * R15) / 40 * u[1] - (3 + mp * 4 * R15) / 20 * u[2] +
         (3 + mp * 2 * R15) / 40 * u[3];
    P2 = (123 + mp * 10 * R15) / 40 * u[2] - (63 + mp * 8 * R15) / 20 * u[3] +
         (43 + mp * 6 * R15) / 40 * u[4];
  }

  // Split linear weight tables and combination factors, indexed by the four
  // targets 1-k, 1+k, 2-k, 2+k.
  static const double dt_tab[4][3] = {
      {(18489 - 782 * R15) / 17787, (-711 + 640 * R15) / 17787, (9 + 142 * R15) / 17787},
      {(77142 - 5368 * R15) / 73767, (-2844 + 5048 * R15) / 73767, (-531 + 320 * R15) / 73767},
      {(38022 + 2648 * R15) / 73767, (36276 - 2968 * R15) / 73767, (-531 + 320 * R15) / 73767},
      {(123 - 10 * R15) / 240, (57 + 4 * R15) / 120, (3 + 2 * R15) / 240}};
  static const double dh_tab[4][3] = {
      {(8769 - 1342 * R15) / 5334, (-1662 + 640 * R15) / 2667, (-111 + 62 * R15) / 5334},
      {(19131 - 1564 * R15) / 17607, (-942 + 1244 * R15) / 17607, (-582 + 320 * R15) / 17607},
      {(9171 + 524 * R15) / 17607, (9018 - 844 * R15) / 17607, (-582 + 320 * R15) / 17607},
      {0.0, 0.0, 0.0}};
  static const double delta_t[4] = {(83 + 8 * R15) / 40, (157 + 2 * R15) / 80,
                                    (157 + 2 * R15) / 80, 1.0};
  static const double delta_h[4] = {(43 + 8 * R15) / 40, (77 + 2 * R15) / 80,
                                    (77 + 2 * R15) / 80, 0.0};
  const int t = (target_cell - 1) * 2 + (side > 0 ? 1 : 0);

  // Smoothness indicators over the cell containing the target node.
  double b[3];
  if (target_cell == 1) {
    b[0] = (10 * sq(u[0]) - 31 * u[0] * u[1] + 25 * sq(u[1]) + 11 * u[0] * u[2] -
            19 * u[1] * u[2] + 4 * sq(u[2])) / 3.0;
    b[1] = (22 * sq(u[1]) - 73 * u[1] * u[2] + 61 * sq(u[2]) + 29 * u[1] * u[3] -
            49 * u[2] * u[3] + 10 * sq(u[3])) / 3.0;
    b[2] = (40 * sq(u[2]) - 139 * u[2] * u[3] + 121 * sq(u[3]) + 59 * u[2] * u[4] -
            103 * u[3] * u[4] + 22 * sq(u[4])) / 3.0;
  } else {
    b[0] = (4 * sq(u[0]) - 13 * u[0] * u[1] + 13 * sq(u[1]) + 5 * u[0] * u[2] -
            13 * u[1] * u[2] + 4 * sq(u[2])) / 3.0;
    b[1] = (10 * sq(u[1]) - 31 * u[1] * u[2] + 25 * sq(u[2]) + 11 * u[1] * u[3] -
            19 * u[2] * u[3] + 4 * sq(u[3])) / 3.0;
    b[2] = (22 * sq(u[2]) - 73 * u[2] * u[3] + 61 * sq(u[3]) + 29 * u[2] * u[4] -
            49 * u[3] * u[4] + 10 * sq(u[4])) / 3.0;
  }
  const double tau = b[2] - b[0];
  const double phi2 = sq(scale_guard(u));

  double at[3], ah[3], ats = 0.0, ahs = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double z = 1.0 + sq(tau / (b[i] + prm.eps1 * phi2 + prm.eps2));
    at[i] = dt_tab[t][i] * z;
    ah[i] = dh_tab[t][i] * z;
    ats += at[i];
    ahs += ah[i];
  }

  double value = 0.0, wsum = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double wt = at[i] / ats;
    const double wh = ahs > 0.0 ? ah[i] / ahs : 0.0;
    const double w = delta_t[t] * wt - delta_h[t] * wh;
    if (diag) diag->omega[i] = w;
    wsum += w;
    value += w * (i == 0 ? P0 : i == 1 ? P1 : P2);
  }
  if (diag) diag->sum = wsum;
  return value;
}

void interp_line(const double* vals, int n, double* out_minus, double* out_plus,
                 const WenoParams& prm) {
  if (n < 5)
    throw std::invalid_argument("interp_line: need at least 5 random cells");

  double refl[5];
  for (int l = 0; l < n; ++l) {
    if (l >= 2 && l <= n - 3) {
      out_minus[l] = interp_interior(vals + (l - 2), -1, prm);
      out_plus[l] = interp_interior(vals + (l - 2), +1, prm);
    } else if (l < 2) {
      out_minus[l] = interp_boundary(vals, l + 1, -1, prm);
      out_plus[l] = interp_boundary(vals, l + 1, +1, prm);
    } else {
      // High boundary: reflect the stencil and reuse the low-boundary path
      // with the node side flipped.
      for (int i = 0; i < 5; ++i) refl[i] = vals[n - 1 - i];
      const int cell = n - l;  // 1 or 2
      out_minus[l] = interp_boundary(refl, cell, +1, prm);
      out_plus[l] = interp_boundary(refl, cell, -1, prm);
    }
  }
}

}  // namespace stochfv
