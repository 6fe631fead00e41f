#include "stochfv/random_space.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace stochfv {

Pdf1 Pdf1::uniform(double a, double b) {
  if (!(b > a)) throw std::invalid_argument("uniform pdf: b must exceed a");
  Pdf1 p;
  p.kind_ = Kind::Uniform;
  p.a_ = a;
  p.b_ = b;
  p.norm_ = 1.0 / (b - a);
  return p;
}

Pdf1 Pdf1::normal(double mean, double variance) {
  if (!(variance > 0)) throw std::invalid_argument("normal pdf: variance must be positive");
  Pdf1 p;
  p.kind_ = Kind::Normal;
  p.p0_ = mean;
  p.p1_ = variance;
  p.norm_ = 1.0 / std::sqrt(2.0 * M_PI * variance);
  return p;
}

Pdf1 Pdf1::beta_shifted(double alpha, double beta) {
  if (!(alpha > 0) || !(beta > 0))
    throw std::invalid_argument("beta pdf: exponents must be positive");
  Pdf1 p;
  p.kind_ = Kind::Beta;
  p.a_ = -1.0;
  p.b_ = 1.0;
  p.p0_ = alpha;
  p.p1_ = beta;
  // density (1+x)^(a-1) (1-x)^(b-1) / (2^(a+b-1) B(a,b)) on [-1,1]
  const double logB = std::lgamma(alpha) + std::lgamma(beta) - std::lgamma(alpha + beta);
  p.norm_ = std::exp(-logB - (alpha + beta - 1.0) * std::log(2.0));
  return p;
}

double Pdf1::operator()(double x) const {
  switch (kind_) {
    case Kind::Uniform:
      return (x >= a_ && x <= b_) ? norm_ : 0.0;
    case Kind::Normal: {
      const double d = x - p0_;
      return norm_ * std::exp(-0.5 * d * d / p1_);
    }
    case Kind::Beta: {
      if (x <= a_ || x >= b_) return (x == a_ || x == b_) ? 0.0 : 0.0;
      return norm_ * std::pow(1.0 + x, p0_ - 1.0) * std::pow(1.0 - x, p1_ - 1.0);
    }
  }
  return 0.0;
}

std::array<double, 3> gl_nodes(const Axis& axis, int cell) {
  if (cell < 0 || cell >= axis.n_cells)
    throw std::out_of_range("gl_nodes: cell index out of range");
  const double c = axis.center(cell);
  const double d = axis.spacing();
  return {c - quad::kappa * d, c, c + quad::kappa * d};
}

namespace {

StatisticsResult stats_impl(const Grid& grid, int nc,
                            const std::vector<double>& values, const Pdf& pdf,
                            const std::vector<double>& levels, bool weighted) {
  StatisticsResult res;
  res.n_phys = int(grid.n_phys());
  res.n_components = nc;
  res.levels = levels;
  res.mean.assign(std::size_t(res.n_phys) * nc, 0.0);
  res.stddev.assign(std::size_t(res.n_phys) * nc, 0.0);
  res.quantile.assign(std::size_t(res.n_phys) * nc * levels.size(), 0.0);

  const int nxi = grid.nxi(), neta = grid.neta();
  const std::size_t nrand = grid.n_rand();
  const double dvol = grid.rand_cell_volume();

  // Per random cell: center density and quadrature weight nu * dxi [* deta].
  std::vector<double> weight(nrand), nu_c(nrand);
  for (int l = 0; l < nxi; ++l)
    for (int m = 0; m < neta; ++m) {
      const double nu = pdf(grid.xi.center(l),
                            grid.has_eta() ? grid.eta.center(m) : 0.0);
      nu_c[std::size_t(l) * neta + m] = floor_density(nu);
      weight[std::size_t(l) * neta + m] = nu * dvol;
    }
  const double wsum = std::accumulate(weight.begin(), weight.end(), 0.0);

  std::vector<std::pair<double, double>> sorted(nrand);  // (U, weight)
  for (int p = 0; p < res.n_phys; ++p) {
    for (int c = 0; c < nc; ++c) {
      const std::size_t base = (std::size_t(p) * nrand) * nc;
      double mean = 0.0;
      for (std::size_t r = 0; r < nrand; ++r) {
        double u = values[base + r * nc + c];
        if (weighted) u /= nu_c[r];
        sorted[r] = {u, weight[r]};
        mean += u * weight[r];
      }
      double var = 0.0;
      for (std::size_t r = 0; r < nrand; ++r) {
        const double d = sorted[r].first - mean;
        var += d * d * sorted[r].second;
      }
      var = std::max(var, 0.0);
      res.mean[std::size_t(p) * nc + c] = mean;
      res.stddev[std::size_t(p) * nc + c] = std::sqrt(var);
      if (!levels.empty()) {
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t lev = 0; lev < levels.size(); ++lev) {
          double cum = 0.0;
          double q = sorted.back().first;
          for (std::size_t r = 0; r < nrand; ++r) {
            cum += sorted[r].second / wsum;
            if (cum >= levels[lev]) { q = sorted[r].first; break; }
          }
          res.quantile[(std::size_t(p) * nc + c) * levels.size() + lev] = q;
        }
      }
    }
  }
  return res;
}

}  // namespace

StatisticsResult statistics(const Field& field, const Pdf& pdf,
                            const std::vector<double>& levels) {
  return stats_impl(field.grid, field.n_components, field.data, pdf, levels,
                    /*weighted=*/true);
}

StatisticsResult statistics_from_points(const Grid& grid, int n_components,
                                        const std::vector<double>& point_values,
                                        const Pdf& pdf,
                                        const std::vector<double>& levels) {
  return stats_impl(grid, n_components, point_values, pdf, levels,
                    /*weighted=*/false);
}

}  // namespace stochfv
