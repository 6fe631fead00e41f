#include "stochfv/presets.hpp"

#include <cmath>
#include <stdexcept>

namespace stochfv {

namespace {

constexpr double pi = 3.14159265358979323846;

// Sod shock tube: primitive (rho, u, p) -> conserved (rho, rho u, E).
void euler1d_conserved(double rho, double u, double p, double gamma,
                       double* out) {
  out[0] = rho;
  out[1] = rho * u;
  out[2] = p / (gamma - 1.0) + 0.5 * rho * u * u;
}

void euler2d_conserved(double rho, double u, double v, double p, double gamma,
                       double* out) {
  out[0] = rho;
  out[1] = rho * u;
  out[2] = rho * v;
  out[3] = p / (gamma - 1.0) + 0.5 * rho * (u * u + v * v);
}

Preset sod_base(const std::string& name) {
  Preset p;
  p.name = name;
  p.config = GridConfig::d1s1;
  p.model = Model::euler1d(1.4);
  p.x = Axis(0.0, 1.0, 200);
  p.xi = Axis(-1.0, 1.0, 50);
  p.solver.slope = SlopeParams(1.3);
  p.solver.t_final = 0.1644;
  return p;
}

Preset dam_break_bottom_base(const std::string& name) {
  Preset p;
  p.name = name;
  p.config = GridConfig::d1s1;
  p.x = Axis(-1.0, 1.0, 1600);
  p.xi = Axis(-1.0, 1.0, 50);
  p.solver.slope = SlopeParams(1.3);
  p.solver.draining_component = 0;
  return p;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"example1_test1", "example1_test1_normal", "example1_test2",
          "example2",       "example3",              "example4",
          "example5",       "example6",              "example7",
          "example8",       "example9"};
}

Preset make_preset(const std::string& name, std::optional<double> sigma_opt) {
  if (name == "example1_test1" || name == "example1_test1_normal") {
    Preset p = sod_base(name);
    p.description =
        "Sod shock tube with randomly perturbed left density 1 + sigma*xi";
    p.has_sigma = true;
    p.sigma = sigma_opt.value_or(0.1);
    if (name == "example1_test1_normal")
      p.pdf = Pdf(Pdf1::normal(0.0, 1.0 / 36.0));
    const double s = p.sigma;
    p.initial = [s](double x, double, double xi, double, double* out) {
      if (x < 0.5)
        euler1d_conserved(1.0 + s * xi, 0.0, 1.0, 1.4, out);
      else
        euler1d_conserved(0.125, 0.0, 0.1, 1.4, out);
    };
    return p;
  }

  if (name == "example1_test2") {
    Preset p = sod_base(name);
    p.description =
        "Sod shock tube with uncertain adiabatic constant gamma = 1.4 + 0.1*xi";
    p.model.gamma = [](double xi, double) { return 1.4 + 0.1 * xi; };
    p.initial = [](double x, double, double xi, double, double* out) {
      const double g = 1.4 + 0.1 * xi;
      if (x < 0.5)
        euler1d_conserved(1.0, 0.0, 1.0, g, out);
      else
        euler1d_conserved(0.125, 0.0, 0.1, g, out);
    };
    return p;
  }

  if (name == "example2") {
    Preset p = sod_base(name);
    p.description =
        "Sod shock tube with random left density (xi) and random gamma (eta)";
    p.config = GridConfig::d1s2;
    p.pdf = Pdf(Pdf1::uniform(-1.0, 1.0), Pdf1::uniform(-1.0, 1.0));
    p.eta = Axis(-1.0, 1.0, 50);
    p.model.gamma = [](double, double eta) { return 1.4 + 0.1 * eta; };
    p.initial = [](double x, double, double xi, double eta, double* out) {
      const double g = 1.4 + 0.1 * eta;
      if (x < 0.5)
        euler1d_conserved(1.0 + 0.1 * xi, 0.0, 1.0, g, out);
      else
        euler1d_conserved(0.125, 0.0, 0.1, g, out);
    };
    return p;
  }

  if (name == "example3") {
    Preset p;
    p.name = name;
    p.description =
        "2-D four-quadrant Riemann problem with randomly perturbed states";
    p.config = GridConfig::d2s1;
    p.model = Model::euler2d(1.4);
    p.x = Axis(0.0, 1.0, 400);
    p.y = Axis(0.0, 1.0, 400);
    p.xi = Axis(-1.0, 1.0, 10);
    p.solver.slope = SlopeParams(1.3);
    p.solver.t_final = 0.15;
    p.has_sigma = true;
    p.sigma = sigma_opt.value_or(0.5);
    const double s = p.sigma;
    p.initial = [s](double x, double y, double xi, double, double* out) {
      const double sx = s * xi;
      if (x > 0.5 && y > 0.5)
        euler2d_conserved(1.0, 0.0, 0.4297 * (1.0 - sx), 1.0, 1.4, out);
      else if (x < 0.5 && y > 0.5)
        euler2d_conserved(0.5 * (1.0 + sx), sx, 0.6076 * (1.0 - sx),
                          1.0 - sx, 1.4, out);
      else if (x < 0.5 && y < 0.5)
        euler2d_conserved(0.2281 * (1.0 + sx), 0.0, -0.6076 * (1.0 + sx),
                          0.3333, 1.4, out);
      else
        euler2d_conserved(0.4562, 0.0, -0.4297 * (1.0 + sx), 0.3333, 1.4, out);
    };
    return p;
  }

  if (name == "example4") {
    Preset p;
    p.name = name;
    p.description =
        "Smooth accuracy test: random surface perturbation, flat bottom, "
        "periodic";
    p.config = GridConfig::d1s1;
    p.model = Model::swe1d(1.0, 1e-6);
    p.x = Axis(0.0, 1.0, 200);
    p.xi = Axis(-1.0, 1.0, 16);
    p.solver.slope = SlopeParams(1.0);
    p.solver.t_final = 0.01;
    p.solver.bc_x = BcMode::Periodic;
    p.solver.draining_component = 0;
    p.initial = [](double x, double, double xi, double, double* out) {
      out[0] = 1.0 + 0.1 * std::tanh(4.0 * xi) + 0.01 * std::sin(2.0 * pi * x);
      out[1] = 0.1;
    };
    return p;
  }

  if (name == "example5") {
    Preset p = dam_break_bottom_base(name);
    p.description = "Dam break over a random bottom topography";
    p.model = Model::swe1d(1.0, 1e-3);
    p.model.bottom = [](double x, double, double xi, double) {
      const double hump =
          std::abs(x) < 0.2 ? 0.125 * (std::cos(5.0 * pi * x) + 2.0) : 0.125;
      return 0.125 * xi + hump;
    };
    p.solver.t_final = 0.8;
    p.initial = [](double x, double, double, double, double* out) {
      out[0] = x < 0.0 ? 1.0 : 0.5;
      out[1] = 0.0;
    };
    return p;
  }

  if (name == "example6") {
    Preset p = dam_break_bottom_base(name);
    p.description =
        "Randomly perturbed water surface over a deterministic ridge";
    p.model = Model::swe1d(1.0, 1e-6);
    p.model.bottom = [](double x, double, double, double) {
      if (x >= 0.3 && x <= 0.4) return 10.0 * (x - 0.3);
      if (x > 0.4 && x < 0.6) {
        const double sn = std::sin(25.0 * pi * x);
        return 1.0 - 0.0025 * sn * sn;
      }
      if (x >= 0.6 && x <= 0.7) return -10.0 * (x - 0.7);
      return 0.0;
    };
    p.solver.t_final = 1.0;
    p.initial = [](double x, double, double xi, double, double* out) {
      out[0] = (x > 0.1 && x < 0.2) ? 1.001 + 0.001 * xi : 1.0;
      out[1] = 0.0;
    };
    return p;
  }

  if (name == "example7") {
    Preset p;
    p.name = name;
    p.description =
        "Opposing streams over a random discontinuous bottom, Beta-distributed";
    p.config = GridConfig::d1s1;
    p.model = Model::swe1d(2.0, 1e-5);
    p.model.bottom = [](double x, double, double xi, double) {
      return (x <= 0.5 ? 1.5 : 1.1) + 0.1 * xi;
    };
    p.pdf = Pdf(Pdf1::beta_shifted(2.0, 4.0));
    p.x = Axis(0.0, 1.0, 401);
    p.xi = Axis(-1.0, 1.0, 50);
    p.solver.slope = SlopeParams(1.0);
    p.solver.t_final = 0.15;
    p.solver.draining_component = 0;
    p.initial = [](double x, double, double, double, double* out) {
      out[0] = x <= 0.5 ? 5.0 : 1.6;
      out[1] = x <= 0.5 ? 1.0 : -2.0;
    };
    return p;
  }

  if (name == "example8") {
    Preset p;
    p.name = name;
    p.description =
        "Wetting/drying over a parabolic island, random surface and discharge";
    p.config = GridConfig::d1s2;
    p.model = Model::swe1d(9.812, 5e-4);
    p.model.bottom = [](double x, double, double, double) {
      return std::abs(x) < 1.0 ? 1.0 - x * x : 0.0;
    };
    p.pdf = Pdf(Pdf1::uniform(-1.0, 1.0), Pdf1::uniform(-1.0, 1.0));
    p.x = Axis(-4.0, 2.0, 600);
    p.xi = Axis(-1.0, 1.0, 10);
    p.eta = Axis(-1.0, 1.0, 10);
    p.solver.slope = SlopeParams(1.0);
    p.solver.t_final = 1.0;
    p.solver.output_times = {0.0, 0.5, 0.75, 1.0};
    p.solver.draining_component = 0;
    p.initial = [](double x, double, double xi, double eta, double* out) {
      const double z = std::abs(x) < 1.0 ? 1.0 - x * x : 0.0;
      double w = std::max(0.9, z);
      if (x > -1.6 && x < -1.4) w += 0.1 * (1.0 + 0.1 * xi);
      out[0] = w;
      out[1] = 0.01 * eta;
    };
    return p;
  }

  if (name == "example9") {
    Preset p;
    p.name = name;
    p.description = "2-D hump release over a random Gaussian bump bottom";
    p.config = GridConfig::d2s1;
    p.model = Model::swe2d(1.0, 1e-6);
    p.model.bottom = [](double x, double y, double xi, double) {
      const double dx = x - 0.9, dy = y - 0.5;
      return 0.8 * std::exp(-5.0 * dx * dx - 50.0 * dy * dy) +
             0.1 * (xi + 1.0);
    };
    p.x = Axis(0.0, 2.0, 400);
    p.y = Axis(0.0, 1.0, 200);
    p.xi = Axis(-1.0, 1.0, 10);
    p.solver.slope = SlopeParams(1.3);
    p.solver.t_final = 1.2;
    p.solver.draining_component = 0;
    auto bottom = p.model.bottom;
    p.initial = [bottom](double x, double y, double xi, double, double* out) {
      const double z = bottom(x, y, xi, 0.0);
      out[0] = (x > 0.05 && x < 0.15) ? std::max(1.01, z) : std::max(1.0, z);
      out[1] = 0.0;
      out[2] = 0.0;
    };
    return p;
  }

  throw std::invalid_argument("unknown preset: " + name);
}

Grid preset_grid(const Preset& p) {
  switch (p.config) {
    case GridConfig::d1s1:
      return build_grid(p.config, {p.x, p.xi});
    case GridConfig::d1s2:
      return build_grid(p.config, {p.x, p.xi, p.eta});
    case GridConfig::d2s1:
      return build_grid(p.config, {p.x, p.y, p.xi});
  }
  throw std::logic_error("unreachable");
}

Field initialize_field(const Grid& grid, const Model& model, const Pdf& pdf,
                       const InitialData& initial) {
  const int nc = model.n_components;
  Field field(grid, nc);
  const bool swe = model.is_swe();

  std::vector<double> zbar;
  if (swe) zbar = bottom_cell_average(grid, pdf, model.bottom);

  const int nsub = 3;  // midpoint subsamples per physical dimension
  const int nx = grid.nx(), ny = grid.ny(), nxi = grid.nxi(), neta = grid.neta();

  for (int j = 0; j < nx; ++j)
    for (int k = 0; k < ny; ++k)
      for (int l = 0; l < nxi; ++l)
        for (int m = 0; m < neta; ++m) {
          const auto xin = gl_nodes(grid.xi, l);
          std::array<double, 3> etn = {0.0, 0.0, 0.0};
          if (grid.has_eta()) etn = gl_nodes(grid.eta, m);
          const int n_eta_q = grid.has_eta() ? 3 : 1;
          const int n_y_q = grid.has_y() ? nsub : 1;

          double acc[4] = {0, 0, 0, 0};
          double vals[4];
          for (int sx = 0; sx < nsub; ++sx) {
            const double x =
                grid.x.face(j) + (sx + 0.5) * grid.x.spacing() / nsub;
            for (int sy = 0; sy < n_y_q; ++sy) {
              const double y = grid.has_y()
                                   ? grid.y.face(k) +
                                         (sy + 0.5) * grid.y.spacing() / nsub
                                   : 0.0;
              for (int i = 0; i < 3; ++i)
                for (int q = 0; q < n_eta_q; ++q) {
                  double wq = quad::mu[i] * pdf(xin[i], etn[q]) /
                              (nsub * n_y_q);
                  if (grid.has_eta()) wq *= quad::mu[q];
                  initial(x, y, xin[i], etn[q], vals);
                  for (int c = 0; c < nc; ++c)
                    if (!std::isfinite(vals[c]))
                      throw std::runtime_error(
                          "initial data evaluated to a non-finite value");
                  if (swe) {
                    const double z = model.bottom(x, y, xin[i], etn[q]);
                    const double h = positivity_fix(vals[0], z);
                    acc[0] += wq * vals[0];  // surface average for now
                    for (int c = 1; c < nc; ++c) acc[c] += wq * h * vals[c];
                  } else {
                    for (int c = 0; c < nc; ++c) acc[c] += wq * vals[c];
                  }
                }
            }
          }
          for (int c = 0; c < nc; ++c) field.at(j, k, l, m, c) = acc[c];
          if (swe) {
            const std::size_t zi =
                (std::size_t(j) * ny + k) * (std::size_t(nxi) * neta) +
                std::size_t(l) * neta + m;
            double& h = field.at(j, k, l, m, 0);
            h = std::max(h - zbar[zi], 0.0);
          }
        }
  return field;
}

}  // namespace stochfv
