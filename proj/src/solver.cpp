#include "stochfv/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "stochfv/parallel.hpp"

namespace stochfv {

void SolverConfig::validate() const {
  if (!(cfl > 0.0) || cfl > 0.5)
    throw std::invalid_argument("CFL number must lie in (0, 1/2]");
  if (t_final < 0.0) throw std::invalid_argument("final time must be >= 0");
}

StateVec cu_flux(const StateVec& um, const StateVec& up, const StateVec& fm,
                 const StateVec& fp, double am, double ap, int ncomp) {
  StateVec out{};
  const double spread = ap - am;
  if (spread < 1e-12) {
    for (int c = 0; c < ncomp; ++c) out[c] = 0.5 * (fm[c] + fp[c]);
    return out;
  }
  const double prod = ap * am / spread;
  for (int c = 0; c < ncomp; ++c)
    out[c] = (ap * fm[c] - am * fp[c]) / spread + prod * (up[c] - um[c]);
  return out;
}

std::vector<double> bottom_cell_average(
    const Grid& grid, const Pdf& pdf,
    const std::function<double(double, double, double, double)>& bottom) {
  const int nx = grid.nx(), ny = grid.ny(), nxi = grid.nxi(), neta = grid.neta();
  const int nrand = nxi * neta;
  std::vector<double> zbar(std::size_t(nx) * ny * nrand, 0.0);
  for (int j = 0; j < nx; ++j) {
    const double xlo = grid.x.face(j), xhi = grid.x.face(j + 1);
    const double xc = grid.x.center(j);
    for (int k = 0; k < ny; ++k) {
      for (int l = 0; l < nxi; ++l) {
        const auto xin = gl_nodes(grid.xi, l);
        for (int m = 0; m < neta; ++m) {
          double z = 0.0;
          if (grid.has_eta()) {
            const auto etn = gl_nodes(grid.eta, m);
            for (int i = 0; i < 3; ++i)
              for (int r = 0; r < 3; ++r) {
                const double w = quad::mu[i] * quad::mu[r] * pdf(xin[i], etn[r]);
                z += 0.5 * w * (bottom(xlo, 0, xin[i], etn[r]) +
                                bottom(xhi, 0, xin[i], etn[r]));
              }
          } else if (grid.has_y()) {
            const double ylo = grid.y.face(k), yhi = grid.y.face(k + 1);
            const double yc = grid.y.center(k);
            for (int i = 0; i < 3; ++i) {
              const double w = quad::mu[i] * pdf(xin[i]);
              z += 0.25 * w *
                   (bottom(xlo, yc, xin[i], 0) + bottom(xhi, yc, xin[i], 0) +
                    bottom(xc, ylo, xin[i], 0) + bottom(xc, yhi, xin[i], 0));
            }
          } else {
            for (int i = 0; i < 3; ++i) {
              const double w = quad::mu[i] * pdf(xin[i]);
              z += 0.5 * w * (bottom(xlo, 0, xin[i], 0) + bottom(xhi, 0, xin[i], 0));
            }
          }
          zbar[(std::size_t(j) * ny + k) * nrand + std::size_t(l) * neta + m] = z;
        }
      }
    }
  }
  return zbar;
}

Solver::Solver(Grid grid, Model model, Pdf pdf, SolverConfig config)
    : grid_(std::move(grid)), model_(std::move(model)), pdf_(std::move(pdf)),
      config_(std::move(config)) {
  config_.validate();
  nc_ = model_.n_components;
  nx_ = grid_.nx();
  ny_ = grid_.ny();
  nxi_ = grid_.nxi();
  neta_ = grid_.neta();
  nrand_ = nxi_ * neta_;
  nnode_ = grid_.has_eta() ? 9 : 3;
  if (nxi_ < 5)
    throw std::invalid_argument("need at least 5 cells in the xi direction");
  if (grid_.has_eta() && neta_ < 5)
    throw std::invalid_argument("need at least 5 cells in the eta direction");
  build_caches();
}

void Solver::build_caches() {
  nu_center_.resize(nrand_);
  xi_node_.resize(std::size_t(nxi_) * 3);
  eta_node_.resize(std::size_t(neta_) * 3, 0.0);
  node_weight_.resize(std::size_t(nrand_) * nnode_);

  for (int l = 0; l < nxi_; ++l) {
    const auto n = gl_nodes(grid_.xi, l);
    for (int i = 0; i < 3; ++i) xi_node_[l * 3 + i] = n[i];
  }
  if (grid_.has_eta())
    for (int m = 0; m < neta_; ++m) {
      const auto n = gl_nodes(grid_.eta, m);
      for (int i = 0; i < 3; ++i) eta_node_[m * 3 + i] = n[i];
    }

  for (int l = 0; l < nxi_; ++l)
    for (int m = 0; m < neta_; ++m) {
      const int r = l * neta_ + m;
      nu_center_[r] = floor_density(
          pdf_(grid_.xi.center(l), grid_.has_eta() ? grid_.eta.center(m) : 0.0));
      if (grid_.has_eta()) {
        for (int i = 0; i < 3; ++i)
          for (int q = 0; q < 3; ++q)
            node_weight_[std::size_t(r) * 9 + i * 3 + q] =
                quad::mu[i] * quad::mu[q] *
                pdf_(xi_node_[l * 3 + i], eta_node_[m * 3 + q]);
      } else {
        for (int i = 0; i < 3; ++i)
          node_weight_[std::size_t(r) * 3 + i] =
              quad::mu[i] * pdf_(xi_node_[l * 3 + i]);
      }
    }

  if (model_.is_swe()) {
    zbar_ = bottom_cell_average(grid_, pdf_, model_.bottom);
    zface_x_.resize(std::size_t(nx_ + 1) * ny_ * nrand_ * nnode_);
    for (int f = 0; f <= nx_; ++f) {
      const double xf = grid_.x.face(f);
      for (int k = 0; k < ny_; ++k) {
        const double yc = grid_.has_y() ? grid_.y.center(k) : 0.0;
        for (int l = 0; l < nxi_; ++l)
          for (int m = 0; m < neta_; ++m) {
            const int r = l * neta_ + m;
            double* dst = &zface_x_[(fx_index(f, k, r)) * nnode_];
            if (grid_.has_eta()) {
              for (int i = 0; i < 3; ++i)
                for (int q = 0; q < 3; ++q)
                  dst[i * 3 + q] = model_.bottom(xf, yc, xi_node_[l * 3 + i],
                                                 eta_node_[m * 3 + q]);
            } else {
              for (int i = 0; i < 3; ++i)
                dst[i] = model_.bottom(xf, yc, xi_node_[l * 3 + i], 0.0);
            }
          }
      }
    }
    if (grid_.has_y()) {
      zface_y_.resize(std::size_t(nx_) * (ny_ + 1) * nrand_ * nnode_);
      for (int j = 0; j < nx_; ++j) {
        const double xc = grid_.x.center(j);
        for (int f = 0; f <= ny_; ++f) {
          const double yf = grid_.y.face(f);
          for (int r = 0; r < nrand_; ++r) {
            double* dst = &zface_y_[(fy_index(j, f, r)) * nnode_];
            for (int i = 0; i < 3; ++i)
              dst[i] = model_.bottom(xc, yf, xi_node_[r * 3 + i], 0.0);
          }
        }
      }
    }
  }
}

namespace {

// Maps a ghosted along-axis cell index to an interior index, or -1 when the
// neighbor is a free-boundary copy.
inline int wrap_cell(int jg, int n, BcMode bc) {
  if (jg >= 1 && jg <= n) return jg - 1;
  if (bc == BcMode::Periodic) return (jg - 1 + n) % n;
  return jg < 1 ? 0 : n - 1;
}

}  // namespace

void Solver::sweep_x(const Field& field, Assembly& a) const { // NOLINT
  // Shared implementation for both directions lives here for dir = 0 and in
  // sweep_y for dir = 1; the bodies are kept in lockstep.
  const int dir = 0;
  const int n_along = nx_;
  const int n_perp = ny_;
  const double dx = grid_.x.spacing();
  const BcMode bc = config_.bc_x;
  const bool swe = model_.is_swe();
  const int nc = nc_;
  const std::size_t rc = std::size_t(nrand_) * nc;

  // Ghosted reconstruction variables: (along+2, perp, rand, comp); for SWE
  // the first component is the water surface w = h + Z.
  std::vector<double> W(std::size_t(n_along + 2) * n_perp * rc);
  auto Wat = [&](int ag, int p) -> double* {
    return &W[(std::size_t(ag) * n_perp + p) * rc];
  };
  for (int ag = 0; ag <= n_along + 1; ++ag) {
    const int j = wrap_cell(ag, n_along, bc);
    for (int p = 0; p < n_perp; ++p) {
      const double* src = &field.data[cell_index(j, p, 0) * nc];
      double* dst = Wat(ag, p);
      std::copy(src, src + rc, dst);
      if (swe) {
        const double* zb = &zbar_[cell_index(j, p, 0)];
        for (int r = 0; r < nrand_; ++r) dst[r * nc + 0] += zb[r];
      }
    }
  }

  // Minmod slopes (in units of the cell difference); ghost-cell slopes are 0
  // for free boundaries and wrap for periodic ones.
  std::vector<double> slope(W.size(), 0.0);
  auto Sat = [&](int ag, int p) -> double* {
    return &slope[(std::size_t(ag) * n_perp + p) * rc];
  };
  const double theta = config_.slope.theta;
  parallel_for(n_along, config_.threads, [&](int b, int e) {
    for (int jj = b; jj < e; ++jj) {
      const int ag = jj + 1;
      for (int p = 0; p < n_perp; ++p) {
        const double* wm = Wat(ag - 1, p);
        const double* w0 = Wat(ag, p);
        const double* wp = Wat(ag + 1, p);
        double* s = Sat(ag, p);
        for (std::size_t i = 0; i < rc; ++i)
          s[i] = minmod_slope(wm[i], w0[i], wp[i], theta);
      }
    }
  });
  if (bc == BcMode::Periodic)
    for (int p = 0; p < n_perp; ++p) {
      std::copy(Sat(n_along, p), Sat(n_along, p) + rc, Sat(0, p));
      std::copy(Sat(1, p), Sat(1, p) + rc, Sat(n_along + 1, p));
    }

  const int n_faces = n_along + 1;
  a.flux_x.assign(std::size_t(n_faces) * n_perp * rc, 0.0);
  if (swe && a.source.empty())
    a.source.assign(std::size_t(nx_) * ny_ * rc, 0.0);

  // Per-face per-side water depths at every node, kept for the
  // well-balanced source quadrature.
  std::vector<double> h_minus, h_plus;
  if (swe) {
    h_minus.assign(std::size_t(n_faces) * n_perp * nrand_ * nnode_, 0.0);
    h_plus.assign(std::size_t(n_faces) * n_perp * nrand_ * nnode_, 0.0);
  }
  std::vector<double> face_speed(std::size_t(n_faces) * n_perp, 0.0);

  const int center_node = grid_.has_eta() ? 4 : 1;
  const bool s2 = grid_.has_eta();

  auto face_task = [&](int fb, int fe) {
    // Scratch reused across the faces of this chunk.
    std::vector<double> pts[2];   // point values (rand, comp) per side
    std::vector<double> nodes[2]; // node values (rand, node, comp) per side
    for (int s = 0; s < 2; ++s) {
      pts[s].resize(rc);
      nodes[s].resize(std::size_t(nrand_) * nnode_ * nc);
    }
    std::vector<double> line(std::max(nxi_, neta_)), lm(line.size()), lp(line.size());
    std::vector<double> vm, vp, hm, hp, cm0, cp0, cm2, cp2;
    if (s2) {
      vm.resize(nrand_); vp.resize(nrand_); hm.resize(nrand_); hp.resize(nrand_);
      cm0.resize(nrand_); cp0.resize(nrand_); cm2.resize(nrand_); cp2.resize(nrand_);
    }

    for (int f = fb; f < fe; ++f) {
      for (int p = 0; p < n_perp; ++p) {
        try {
          // One-sided point values at the face midline, rescaled by 1/nu.
          for (int s = 0; s < 2; ++s) {
            const int ag = f + s;  // left cell for s=0, right cell for s=1
            const double sgn = s == 0 ? 0.5 : -0.5;
            const double* w = Wat(ag, p);
            const double* sl = Sat(ag, p);
            for (int r = 0; r < nrand_; ++r) {
              const double inv_nu = 1.0 / nu_center_[r];
              for (int c = 0; c < nc; ++c)
                pts[s][r * nc + c] = (w[r * nc + c] + sgn * sl[r * nc + c]) * inv_nu;
            }
          }

          // Interpolate along the random directions to the off-center nodes.
          for (int s = 0; s < 2; ++s) {
            for (int c = 0; c < nc; ++c) {
              if (!s2) {
                for (int l = 0; l < nxi_; ++l) line[l] = pts[s][l * nc + c];
                interp_line(line.data(), nxi_, lm.data(), lp.data(), config_.weno);
                for (int l = 0; l < nxi_; ++l) {
                  double* nd = &nodes[s][(std::size_t(l) * nnode_) * nc];
                  nd[0 * nc + c] = lm[l];
                  nd[1 * nc + c] = line[l];
                  nd[2 * nc + c] = lp[l];
                }
              } else {
                // Step 1: xi-interpolation per eta row, eta-interpolation per
                // xi row.
                for (int m = 0; m < neta_; ++m) {
                  for (int l = 0; l < nxi_; ++l)
                    line[l] = pts[s][(l * neta_ + m) * nc + c];
                  interp_line(line.data(), nxi_, lm.data(), lp.data(), config_.weno);
                  for (int l = 0; l < nxi_; ++l) {
                    vm[l * neta_ + m] = lm[l];
                    vp[l * neta_ + m] = lp[l];
                  }
                }
                for (int l = 0; l < nxi_; ++l) {
                  for (int m = 0; m < neta_; ++m)
                    line[m] = pts[s][(l * neta_ + m) * nc + c];
                  interp_line(line.data(), neta_, &hm[l * neta_], &hp[l * neta_],
                              config_.weno);
                  // Step 2: eta-interpolation of the xi-node rows.
                  interp_line(&vm[l * neta_], neta_, &cm0[l * neta_],
                              &cp0[l * neta_], config_.weno);
                  interp_line(&vp[l * neta_], neta_, &cm2[l * neta_],
                              &cp2[l * neta_], config_.weno);
                }
                for (int l = 0; l < nxi_; ++l)
                  for (int m = 0; m < neta_; ++m) {
                    const int r = l * neta_ + m;
                    double* nd = &nodes[s][(std::size_t(r) * nnode_) * nc];
                    nd[(0 * 3 + 0) * nc + c] = cm0[r];
                    nd[(0 * 3 + 1) * nc + c] = vm[r];
                    nd[(0 * 3 + 2) * nc + c] = cp0[r];
                    nd[(1 * 3 + 0) * nc + c] = hm[r];
                    nd[(1 * 3 + 1) * nc + c] = pts[s][r * nc + c];
                    nd[(1 * 3 + 2) * nc + c] = hp[r];
                    nd[(2 * 3 + 0) * nc + c] = cm2[r];
                    nd[(2 * 3 + 1) * nc + c] = vp[r];
                    nd[(2 * 3 + 2) * nc + c] = cp2[r];
                  }
              }
            }
          }

          // Shallow water: positivity of h at every node, then
          // desingularized velocities with recomputed momenta.
          if (swe) {
            const double* zf = &zface_x_[fx_index(f, p, 0) * nnode_];
            for (int s = 0; s < 2; ++s)
              for (int r = 0; r < nrand_; ++r)
                for (int i = 0; i < nnode_; ++i) {
                  double* nd = &nodes[s][(std::size_t(r) * nnode_ + i) * nc];
                  const double z = zf[r * nnode_ + i];
                  const double h = positivity_fix(nd[0], z);
                  nd[0] = h;
                  for (int c = 1; c < nc; ++c) desingularize(h, nd[c], model_.desing_eps);
                  double* store = s == 0 ? &h_minus[(fx_index(f, p, r)) * nnode_]
                                         : &h_plus[(fx_index(f, p, r)) * nnode_];
                  store[i] = h;
                }
          }

          // Speeds from the cell-center node, one pair per random cell; the
          // same pair serves all nodes of this interface.
          double local_max = 0.0;
          for (int r = 0; r < nrand_; ++r) {
            const int l = r / neta_, m = r % neta_;
            StateVec um{}, up{};
            for (int c = 0; c < nc; ++c) {
              um[c] = nodes[0][(std::size_t(r) * nnode_ + center_node) * nc + c];
              up[c] = nodes[1][(std::size_t(r) * nnode_ + center_node) * nc + c];
            }
            const double xic = grid_.xi.center(l);
            const double etc = s2 ? grid_.eta.center(m) : 0.0;
            auto [am, ap] = model_.speeds(um, up, dir, xic, etc);
            local_max = std::max({local_max, ap, -am});

            double* fout = &a.flux_x[fx_index(f, p, r) * nc];
            for (int i = 0; i < nnode_; ++i) {
              StateVec nm{}, np{};
              for (int c = 0; c < nc; ++c) {
                nm[c] = nodes[0][(std::size_t(r) * nnode_ + i) * nc + c];
                np[c] = nodes[1][(std::size_t(r) * nnode_ + i) * nc + c];
              }
              const double xin = xi_node_[l * 3 + (s2 ? i / 3 : i)];
              const double etn = s2 ? eta_node_[m * 3 + i % 3] : 0.0;
              const StateVec fm = model_.flux(nm, dir, xin, etn);
              const StateVec fp2 = model_.flux(np, dir, xin, etn);
              const StateVec fc = cu_flux(nm, np, fm, fp2, am, ap, nc);
              const double wq = node_weight_[std::size_t(r) * nnode_ + i];
              for (int c = 0; c < nc; ++c) fout[c] += wq * fc[c];
            }
          }
          face_speed[std::size_t(f) * n_perp + p] = local_max;
        } catch (const InadmissibleState& ex) {
          char buf[160];
          std::snprintf(buf, sizeof buf, "%s at x-face %d (perp %d)", ex.what(), f, p);
          throw NumericalAbort(buf);
        }
      }
    }
  };
  parallel_for(n_faces, config_.threads, face_task);

  for (double s : face_speed) a.max_speed_x = std::max(a.max_speed_x, s);

  // Well-balanced geometric source, x-contribution (momentum component 1).
  if (swe) {
    const double g = model_.g;
    for (int j = 0; j < n_along; ++j)
      for (int p = 0; p < n_perp; ++p)
        for (int r = 0; r < nrand_; ++r) {
          const double* zlo = &zface_x_[fx_index(j, p, r) * nnode_];
          const double* zhi = &zface_x_[fx_index(j + 1, p, r) * nnode_];
          const double* hlo = &h_plus[fx_index(j, p, r) * nnode_];
          const double* hhi = &h_minus[fx_index(j + 1, p, r) * nnode_];
          double src = 0.0;
          for (int i = 0; i < nnode_; ++i)
            src += node_weight_[std::size_t(r) * nnode_ + i] *
                   swe_wb_source(hlo[i], hhi[i], zlo[i], zhi[i], g);
          a.source[cell_index(j, p, r) * nc + 1] += src / dx;
        }
  }
}

void Solver::sweep_y(const Field& field, Assembly& a) const {
  // d2s1 only: mirror of sweep_x along y (random space is 1-D here).
  const int dir = 1;
  const int n_along = ny_;
  const int n_perp = nx_;
  const double dy = grid_.y.spacing();
  const BcMode bc = config_.bc_y;
  const bool swe = model_.is_swe();
  const int nc = nc_;
  const std::size_t rc = std::size_t(nrand_) * nc;

  std::vector<double> W(std::size_t(n_along + 2) * n_perp * rc);
  auto Wat = [&](int ag, int p) -> double* {
    return &W[(std::size_t(ag) * n_perp + p) * rc];
  };
  for (int ag = 0; ag <= n_along + 1; ++ag) {
    const int k = wrap_cell(ag, n_along, bc);
    for (int p = 0; p < n_perp; ++p) {
      const double* src = &field.data[cell_index(p, k, 0) * nc];
      double* dst = Wat(ag, p);
      std::copy(src, src + rc, dst);
      if (swe) {
        const double* zb = &zbar_[cell_index(p, k, 0)];
        for (int r = 0; r < nrand_; ++r) dst[r * nc + 0] += zb[r];
      }
    }
  }

  std::vector<double> slope(W.size(), 0.0);
  auto Sat = [&](int ag, int p) -> double* {
    return &slope[(std::size_t(ag) * n_perp + p) * rc];
  };
  const double theta = config_.slope.theta;
  parallel_for(n_along, config_.threads, [&](int b, int e) {
    for (int kk = b; kk < e; ++kk) {
      const int ag = kk + 1;
      for (int p = 0; p < n_perp; ++p) {
        const double* wm = Wat(ag - 1, p);
        const double* w0 = Wat(ag, p);
        const double* wp = Wat(ag + 1, p);
        double* s = Sat(ag, p);
        for (std::size_t i = 0; i < rc; ++i)
          s[i] = minmod_slope(wm[i], w0[i], wp[i], theta);
      }
    }
  });
  if (bc == BcMode::Periodic)
    for (int p = 0; p < n_perp; ++p) {
      std::copy(Sat(n_along, p), Sat(n_along, p) + rc, Sat(0, p));
      std::copy(Sat(1, p), Sat(1, p) + rc, Sat(n_along + 1, p));
    }

  const int n_faces = n_along + 1;
  a.flux_y.assign(std::size_t(n_perp) * n_faces * rc, 0.0);
  if (swe && a.source.empty())
    a.source.assign(std::size_t(nx_) * ny_ * rc, 0.0);

  std::vector<double> h_minus, h_plus;
  if (swe) {
    h_minus.assign(std::size_t(n_perp) * n_faces * nrand_ * nnode_, 0.0);
    h_plus.assign(std::size_t(n_perp) * n_faces * nrand_ * nnode_, 0.0);
  }
  std::vector<double> face_speed(std::size_t(n_faces) * n_perp, 0.0);

  auto face_task = [&](int fb, int fe) {
    std::vector<double> pts[2];
    std::vector<double> nodes[2];
    for (int s = 0; s < 2; ++s) {
      pts[s].resize(rc);
      nodes[s].resize(std::size_t(nrand_) * nnode_ * nc);
    }
    std::vector<double> line(nxi_), lm(nxi_), lp(nxi_);

    for (int f = fb; f < fe; ++f) {
      for (int p = 0; p < n_perp; ++p) {
        try {
          for (int s = 0; s < 2; ++s) {
            const int ag = f + s;
            const double sgn = s == 0 ? 0.5 : -0.5;
            const double* w = Wat(ag, p);
            const double* sl = Sat(ag, p);
            for (int r = 0; r < nrand_; ++r) {
              const double inv_nu = 1.0 / nu_center_[r];
              for (int c = 0; c < nc; ++c)
                pts[s][r * nc + c] = (w[r * nc + c] + sgn * sl[r * nc + c]) * inv_nu;
            }
          }
          for (int s = 0; s < 2; ++s)
            for (int c = 0; c < nc; ++c) {
              for (int l = 0; l < nxi_; ++l) line[l] = pts[s][l * nc + c];
              interp_line(line.data(), nxi_, lm.data(), lp.data(), config_.weno);
              for (int l = 0; l < nxi_; ++l) {
                double* nd = &nodes[s][(std::size_t(l) * nnode_) * nc];
                nd[0 * nc + c] = lm[l];
                nd[1 * nc + c] = line[l];
                nd[2 * nc + c] = lp[l];
              }
            }

          if (swe) {
            const double* zf = &zface_y_[fy_index(p, f, 0) * nnode_];
            for (int s = 0; s < 2; ++s)
              for (int r = 0; r < nrand_; ++r)
                for (int i = 0; i < nnode_; ++i) {
                  double* nd = &nodes[s][(std::size_t(r) * nnode_ + i) * nc];
                  const double z = zf[r * nnode_ + i];
                  const double h = positivity_fix(nd[0], z);
                  nd[0] = h;
                  for (int c = 1; c < nc; ++c) desingularize(h, nd[c], model_.desing_eps);
                  double* store = s == 0 ? &h_minus[(fy_index(p, f, r)) * nnode_]
                                         : &h_plus[(fy_index(p, f, r)) * nnode_];
                  store[i] = h;
                }
          }

          double local_max = 0.0;
          for (int r = 0; r < nrand_; ++r) {
            StateVec um{}, up{};
            for (int c = 0; c < nc; ++c) {
              um[c] = nodes[0][(std::size_t(r) * nnode_ + 1) * nc + c];
              up[c] = nodes[1][(std::size_t(r) * nnode_ + 1) * nc + c];
            }
            auto [am, ap] = model_.speeds(um, up, dir, grid_.xi.center(r), 0.0);
            local_max = std::max({local_max, ap, -am});

            double* fout = &a.flux_y[fy_index(p, f, r) * nc];
            for (int i = 0; i < nnode_; ++i) {
              StateVec nm{}, np{};
              for (int c = 0; c < nc; ++c) {
                nm[c] = nodes[0][(std::size_t(r) * nnode_ + i) * nc + c];
                np[c] = nodes[1][(std::size_t(r) * nnode_ + i) * nc + c];
              }
              const double xin = xi_node_[r * 3 + i];
              const StateVec fm = model_.flux(nm, dir, xin, 0.0);
              const StateVec fp2 = model_.flux(np, dir, xin, 0.0);
              const StateVec fc = cu_flux(nm, np, fm, fp2, am, ap, nc);
              const double wq = node_weight_[std::size_t(r) * nnode_ + i];
              for (int c = 0; c < nc; ++c) fout[c] += wq * fc[c];
            }
          }
          face_speed[std::size_t(f) * n_perp + p] = local_max;
        } catch (const InadmissibleState& ex) {
          char buf[160];
          std::snprintf(buf, sizeof buf, "%s at y-face %d (perp %d)", ex.what(), f, p);
          throw NumericalAbort(buf);
        }
      }
    }
  };
  parallel_for(n_faces, config_.threads, face_task);

  for (double s : face_speed) a.max_speed_y = std::max(a.max_speed_y, s);

  if (swe) {
    const double g = model_.g;
    for (int p = 0; p < n_perp; ++p)
      for (int k = 0; k < n_along; ++k)
        for (int r = 0; r < nrand_; ++r) {
          const double* zlo = &zface_y_[fy_index(p, k, r) * nnode_];
          const double* zhi = &zface_y_[fy_index(p, k + 1, r) * nnode_];
          const double* hlo = &h_plus[fy_index(p, k, r) * nnode_];
          const double* hhi = &h_minus[fy_index(p, k + 1, r) * nnode_];
          double src = 0.0;
          for (int i = 0; i < nnode_; ++i)
            src += node_weight_[std::size_t(r) * nnode_ + i] *
                   swe_wb_source(hlo[i], hhi[i], zlo[i], zhi[i], g);
          a.source[cell_index(p, k, r) * nc + 2] += src / dy;
        }
  }
}

Solver::Assembly Solver::assemble(const Field& field) const {
  Assembly a;
  sweep_x(field, a);
  if (grid_.has_y()) sweep_y(field, a);
  return a;
}

double Solver::cfl_dt(const Assembly& a, double schedule_cap) const {
  const double tiny = 1e-14;
  double dt = schedule_cap;
  if (a.max_speed_x > tiny)
    dt = std::min(dt, config_.cfl * grid_.x.spacing() / a.max_speed_x);
  if (grid_.has_y() && a.max_speed_y > tiny)
    dt = std::min(dt, config_.cfl * grid_.y.spacing() / a.max_speed_y);
  if (config_.accuracy_dt) {
    const double ms = std::max(a.max_speed_x, a.max_speed_y);
    if (ms > tiny)
      dt = std::min(dt, std::pow(grid_.x.spacing(), 1.5) / (2.0 * ms));
  }
  return dt;
}

void Solver::apply_draining(const Field& field, const Assembly& a, double dt,
                            std::vector<double>& fx_scale,
                            std::vector<double>& fy_scale) const {
  const int q = config_.draining_component;
  const int nc = nc_;
  const double dx = grid_.x.spacing();
  const double dy = grid_.has_y() ? grid_.y.spacing() : 1.0;
  const double inf = std::numeric_limits<double>::infinity();

  // Draining timestep per interior cell from the outgoing-flux sums.
  std::vector<double> dtd(std::size_t(nx_) * ny_ * nrand_, inf);
  for (int j = 0; j < nx_; ++j)
    for (int k = 0; k < ny_; ++k)
      for (int r = 0; r < nrand_; ++r) {
        const double fhi = a.flux_x[fx_index(j + 1, k, r) * nc + q];
        const double flo = a.flux_x[fx_index(j, k, r) * nc + q];
        double denom = (std::max(0.0, fhi) + std::max(0.0, -flo)) *
                       (grid_.has_y() ? dy : 1.0);
        if (grid_.has_y()) {
          const double ghi = a.flux_y[fy_index(j, k + 1, r) * nc + q];
          const double glo = a.flux_y[fy_index(j, k, r) * nc + q];
          denom += (std::max(0.0, ghi) + std::max(0.0, -glo)) * dx;
        }
        if (denom > 0.0) {
          const double avg = std::max(field.data[cell_index(j, k, r) * nc + q], 0.0);
          dtd[cell_index(j, k, r)] = dx * (grid_.has_y() ? dy : 1.0) * avg / denom;
        }
      }

  auto lookup = [&](int j, int k, int r, BcMode bc, bool along_x) -> double {
    const int n = along_x ? nx_ : ny_;
    int idx = along_x ? j : k;
    if (idx < 0 || idx >= n) {
      if (bc == BcMode::Periodic) idx = (idx + n) % n;
      else return inf;  // free boundary: the upwind ghost never limits
      if (along_x) j = idx; else k = idx;
    }
    return dtd[cell_index(j, k, r)];
  };

  fx_scale.assign(std::size_t(nx_ + 1) * ny_ * nrand_, 1.0);
  for (int f = 0; f <= nx_; ++f)
    for (int k = 0; k < ny_; ++k)
      for (int r = 0; r < nrand_; ++r) {
        const double fl = a.flux_x[fx_index(f, k, r) * nc + q];
        const int j0 = fl > 0.0 ? f - 1 : f;
        const double d = lookup(j0, k, r, config_.bc_x, true);
        if (d < dt) fx_scale[fx_index(f, k, r)] = d / dt;
      }
  if (grid_.has_y()) {
    fy_scale.assign(std::size_t(nx_) * (ny_ + 1) * nrand_, 1.0);
    for (int j = 0; j < nx_; ++j)
      for (int f = 0; f <= ny_; ++f)
        for (int r = 0; r < nrand_; ++r) {
          const double gl = a.flux_y[fy_index(j, f, r) * nc + q];
          const int k0 = gl > 0.0 ? f - 1 : f;
          const double d = lookup(j, k0, r, config_.bc_y, false);
          if (d < dt) fy_scale[fy_index(j, f, r)] = d / dt;
        }
  }
}

std::vector<double> Solver::rhs(const Field& field, const Assembly& a,
                                double dt) const {
  const int nc = nc_;
  const double dx = grid_.x.spacing();
  const double dy = grid_.has_y() ? grid_.y.spacing() : 1.0;
  const int q = config_.draining_component;

  std::vector<double> fx_scale, fy_scale;
  const bool drain = q >= 0 && dt > 0.0;
  if (drain) apply_draining(field, a, dt, fx_scale, fy_scale);

  std::vector<double> dudt(field.data.size(), 0.0);
  for (int j = 0; j < nx_; ++j)
    for (int k = 0; k < ny_; ++k)
      for (int r = 0; r < nrand_; ++r) {
        const std::size_t ci = cell_index(j, k, r);
        const double* flo = &a.flux_x[fx_index(j, k, r) * nc];
        const double* fhi = &a.flux_x[fx_index(j + 1, k, r) * nc];
        double* out = &dudt[ci * nc];
        for (int c = 0; c < nc; ++c) {
          double lo = flo[c], hi = fhi[c];
          if (drain && c == q) {
            lo *= fx_scale[fx_index(j, k, r)];
            hi *= fx_scale[fx_index(j + 1, k, r)];
          }
          out[c] = -(hi - lo) / dx;
        }
        if (grid_.has_y()) {
          const double* glo = &a.flux_y[fy_index(j, k, r) * nc];
          const double* ghi = &a.flux_y[fy_index(j, k + 1, r) * nc];
          for (int c = 0; c < nc; ++c) {
            double lo = glo[c], hi = ghi[c];
            if (drain && c == q) {
              lo *= fy_scale[fy_index(j, k, r)];
              hi *= fy_scale[fy_index(j, k + 1, r)];
            }
            out[c] -= (hi - lo) / dy;
          }
        }
        if (!a.source.empty())
          for (int c = 0; c < nc; ++c) out[c] += a.source[ci * nc + c];
      }
  return dudt;
}

void Solver::step(Field& field, const Assembly& first_stage, double dt) {
  const std::size_t n = field.data.size();
  const int q = config_.draining_component;

  auto post_stage = [&](Field& f) {
    if (q < 0) return;
    const int nc = nc_;
    for (std::size_t i = 0; i < n / nc; ++i) {
      double& v = f.data[i * nc + q];
      if (v < 0.0 && v > -1e-13) v = 0.0;
      min_drain_ = std::min(min_drain_, v);
    }
  };

  Field u1(grid_, nc_), u2(grid_, nc_);
  const auto L0 = rhs(field, first_stage, dt);
  for (std::size_t i = 0; i < n; ++i) u1.data[i] = field.data[i] + dt * L0[i];
  post_stage(u1);

  const auto A1 = assemble(u1);
  const auto L1 = rhs(u1, A1, dt);
  for (std::size_t i = 0; i < n; ++i)
    u2.data[i] = 0.75 * field.data[i] + 0.25 * (u1.data[i] + dt * L1[i]);
  post_stage(u2);

  const auto A2 = assemble(u2);
  const auto L2 = rhs(u2, A2, dt);
  for (std::size_t i = 0; i < n; ++i)
    field.data[i] = (1.0 / 3.0) * field.data[i] +
                    (2.0 / 3.0) * (u2.data[i] + dt * L2[i]);
  post_stage(field);
}

RunReport Solver::run(Field& field,
                      const std::function<void(double, const Field&)>& on_output) {
  const auto t_start = std::chrono::steady_clock::now();
  RunReport report;

  std::vector<double> outs = config_.output_times;
  std::sort(outs.begin(), outs.end());
  outs.erase(std::unique(outs.begin(), outs.end()), outs.end());
  outs.erase(std::remove_if(outs.begin(), outs.end(),
                            [&](double t) { return t < 0 || t > config_.t_final; }),
             outs.end());
  if (outs.empty() || outs.back() < config_.t_final)
    outs.push_back(config_.t_final);

  auto emit = [&](double t) {
    if (on_output) on_output(t, field);
    report.output_times.push_back(t);
    report.totals_at_output.push_back(field_total(field));
  };

  double t = 0.0;
  std::size_t next = 0;
  while (next < outs.size() && outs[next] <= 0.0) {
    emit(0.0);
    ++next;
  }
  if (config_.t_final == 0.0 && report.output_times.empty()) emit(0.0);

  while (next < outs.size()) {
    const double target = outs[next];
    while (t < target) {
      const auto a = assemble(field);
      double dt = cfl_dt(a, target - t);
      bool landed = false;
      if (dt >= target - t - 1e-15 * std::max(1.0, target)) {
        dt = target - t;
        landed = true;
      }
      step(field, a, dt);
      t = landed ? target : t + dt;
      ++report.steps;
      for (double v : field.data)
        if (!std::isfinite(v)) {
          char buf[120];
          std::snprintf(buf, sizeof buf,
                        "non-finite value detected at t=%.6g after step %d", t,
                        report.steps);
          throw NumericalAbort(buf);
        }
    }
    emit(target);
    ++next;
  }

  report.min_draining_avg = min_drain_;
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
          .count();
  return report;
}

}  // namespace stochfv
