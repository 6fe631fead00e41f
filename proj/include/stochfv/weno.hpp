#ifndef STOCHFV_WENO_HPP
#define STOCHFV_WENO_HPP

#include <cstddef>

namespace stochfv {

struct WenoParams {
  double eps1 = 1e-12;
  double eps2 = 1e-40;
};

/// Optional diagnostics: the final per-parabola weights (combined weights at
/// the boundary, where they may be negative) and their sum.
struct WenoWeights {
  double omega[3] = {0, 0, 0};
  double sum = 0.0;
};

/// Fifth-order Ai-WENO-Z interpolation of point data given at five
/// consecutive cell centers (spacing-free; targets are center +- kappa of the
/// middle cell). `side` is +1 for the +kappa node and -1 for -kappa.
double interp_interior(const double stencil[5], int side,
                       const WenoParams& params = {},
                       WenoWeights* diag = nullptr);

/// One-sided variant near the low boundary: `stencil` holds the five cells
/// closest to the boundary (cells 1..5), `target_cell` is 1 or 2, and the
/// interpolation target is its center +- kappa. Negative linear weights are
/// split into two positive groups combined as delta~*omega~ - delta^*omega^.
double interp_boundary(const double stencil[5], int target_cell, int side,
                       const WenoParams& params = {},
                       WenoWeights* diag = nullptr);

/// Interpolate a line of n >= 5 values (point values at consecutive cell
/// centers along a random axis) to the off-center Gauss-Legendre nodes:
/// out_minus[l] is the value at center(l) - kappa*spacing, out_plus[l] at
/// center(l) + kappa*spacing. The two cells nearest each end use the
/// one-sided stencil (mirror-symmetrically at the high end).
void interp_line(const double* vals, int n, double* out_minus,
                 double* out_plus, const WenoParams& params = {});

}  // namespace stochfv

#endif
