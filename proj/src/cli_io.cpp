#include "stochfv/cli_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace stochfv {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("malformed value for '" + key + "': " + value);
  }
}

int parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("malformed value for '" + key + "': " + value);
  }
}

std::array<int, 3> parse_int_triple(const std::string& key,
                                    const std::string& value) {
  std::array<int, 3> out{};
  std::stringstream ss(value);
  std::string tok;
  int n = 0;
  while (std::getline(ss, tok, ',')) {
    if (n >= 3) throw ConfigError("expected 3 values for '" + key + "'");
    out[n++] = parse_int(key, trim(tok));
  }
  if (n != 3) throw ConfigError("expected 3 values for '" + key + "'");
  return out;
}

void parse_pair(const std::string& line, std::string& key, std::string& value) {
  const auto eq = line.find('=');
  if (eq == std::string::npos)
    throw ConfigError("expected 'key = value', got: " + line);
  key = trim(line.substr(0, eq));
  value = trim(line.substr(eq + 1));
  if (key.empty()) throw ConfigError("empty key in: " + line);
}

}  // namespace

LoadedConfig load_config_text(const std::string& text,
                              const std::vector<std::string>& overrides) {
  // Ordered key/value pairs: later entries (including CLI overrides) win.
  std::vector<std::pair<std::string, std::string>> entries;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    std::string key, value;
    parse_pair(line, key, value);
    entries.emplace_back(key, value);
  }
  for (const auto& ov : overrides) {
    std::string key, value;
    parse_pair(ov, key, value);
    entries.emplace_back(key, value);
  }

  std::map<std::string, std::string> kv;
  for (auto& [k, v] : entries) kv[k] = v;

  const auto pit = kv.find("preset");
  if (pit == kv.end()) throw ConfigError("missing required key 'preset'");

  std::optional<double> sigma;
  if (kv.count("sigma")) sigma = parse_double("sigma", kv["sigma"]);

  LoadedConfig cfg;
  try {
    cfg.preset = make_preset(pit->second, sigma);
  } catch (const std::invalid_argument& ex) {
    throw ConfigError(ex.what());
  }
  Preset& p = cfg.preset;

  try {
    for (const auto& [key, value] : kv) {
      if (key == "preset" || key == "sigma") continue;
      if (key == "nx") p.x.n_cells = parse_int(key, value);
      else if (key == "ny") p.y.n_cells = parse_int(key, value);
      else if (key == "nxi") p.xi.n_cells = parse_int(key, value);
      else if (key == "neta") p.eta.n_cells = parse_int(key, value);
      else if (key == "theta") p.solver.slope = SlopeParams(parse_double(key, value));
      else if (key == "cfl") p.solver.cfl = parse_double(key, value);
      else if (key == "eps") p.model.desing_eps = parse_double(key, value);
      else if (key == "g") p.model.g = parse_double(key, value);
      else if (key == "t_final") p.solver.t_final = parse_double(key, value);
      else if (key == "conv_nxi") cfg.conv_nxi = parse_int_triple(key, value);
      else if (key == "conv_nx") cfg.conv_nx = parse_int_triple(key, value);
      else throw ConfigError("unknown key '" + key + "'");
    }
    p.solver.validate();
  } catch (const std::invalid_argument& ex) {
    throw ConfigError(ex.what());
  }
  return cfg;
}

LoadedConfig load_config(const std::string& path,
                         const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return load_config_text(buf.str(), overrides);
}

namespace {

const char* bc_name(BcMode bc) {
  return bc == BcMode::Periodic ? "periodic" : "free";
}

struct Quantities {
  std::vector<std::string> names;
  int nq = 0;
  std::vector<double> values;  // point values, Field layout with nq comps
};

/// Cell-center point values of everything we report: conserved components
/// (depth/surface for shallow water) plus derived pressure for Euler.
Quantities extract_quantities(const Field& field, const Model& model,
                              const Pdf& pdf,
                              const std::vector<double>& zbar) {
  const Grid& g = field.grid;
  const int nc = model.n_components;
  Quantities out;
  switch (model.kind) {
    case ModelKind::Euler1D: out.names = {"rho", "mom_x", "energy", "pressure"}; break;
    case ModelKind::Euler2D: out.names = {"rho", "mom_x", "mom_y", "energy", "pressure"}; break;
    case ModelKind::Swe1D:   out.names = {"w", "h", "hu"}; break;
    case ModelKind::Swe2D:   out.names = {"w", "h", "hu", "hv"}; break;
  }
  out.nq = int(out.names.size());
  out.values.resize(g.n_cells_total() * out.nq);

  for (int j = 0; j < g.nx(); ++j)
    for (int k = 0; k < g.ny(); ++k)
      for (int l = 0; l < g.nxi(); ++l)
        for (int m = 0; m < g.neta(); ++m) {
          const double xic = g.xi.center(l);
          const double etc = g.has_eta() ? g.eta.center(m) : 0.0;
          const double nu = floor_density(pdf(xic, etc));
          double u[4];
          for (int c = 0; c < nc; ++c) u[c] = field.at(j, k, l, m, c) / nu;
          const std::size_t base = field.index(j, k, l, m, 0) / nc * out.nq;
          if (model.is_swe()) {
            const std::size_t zi = field.index(j, k, l, m, 0) / nc;
            const double z = zbar[zi] / nu;
            out.values[base + 0] = u[0] + z;  // surface
            out.values[base + 1] = u[0];      // depth
            for (int c = 1; c < nc; ++c) out.values[base + 1 + c] = u[c];
          } else {
            for (int c = 0; c < nc; ++c) out.values[base + c] = u[c];
            const double gamma = model.gamma(xic, etc);
            double kin = u[1] * u[1];
            if (nc == 4) kin += u[2] * u[2];
            kin /= 2.0 * u[0];
            out.values[base + nc] = (gamma - 1.0) * (u[nc - 1] - kin);
          }
        }
  return out;
}

void write_snapshot(const std::string& out_dir, int snap_idx,
                    const Field& field, const Model& model, const Pdf& pdf,
                    const std::vector<double>& zbar,
                    std::vector<std::string>& files_written) {
  const Grid& g = field.grid;
  const Quantities q = extract_quantities(field, model, pdf, zbar);
  const StatisticsResult stats =
      statistics_from_points(g, q.nq, q.values, pdf, {0.95});

  for (int c = 0; c < q.nq; ++c) {
    char fname[64];
    std::snprintf(fname, sizeof fname, "snap%03d_%s.txt", snap_idx,
                  q.names[c].c_str());
    const std::string path = out_dir + "/" + fname;
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    std::fprintf(f, g.has_y() ? "# x y mean std q95\n" : "# x mean std q95\n");
    for (int j = 0; j < g.nx(); ++j)
      for (int k = 0; k < g.ny(); ++k) {
        const int p = j * g.ny() + k;
        std::fprintf(f, "%.17g ", g.x.center(j));
        if (g.has_y()) std::fprintf(f, "%.17g ", g.y.center(k));
        std::fprintf(f, "%.17g %.17g %.17g\n", stats.mean_at(p, c),
                     stats.std_at(p, c), stats.quantile_at(p, c, 0));
      }
    std::fclose(f);
    files_written.push_back(fname);
  }
}

void axis_line(std::FILE* f, const char* name, const Axis& a) {
  std::fprintf(f, "%s = %.17g %.17g %d\n", name, a.lo, a.hi, a.n_cells);
}

}  // namespace

RunReport solve_and_write(const Preset& preset, const std::string& out_dir,
                          int threads) {
  std::filesystem::create_directories(out_dir);
  const Grid grid = preset_grid(preset);
  Field field = initialize_field(grid, preset.model, preset.pdf, preset.initial);

  SolverConfig cfg = preset.solver;
  cfg.threads = threads;
  Solver solver(grid, preset.model, preset.pdf, cfg);

  std::vector<double> zbar;
  if (preset.model.is_swe()) zbar = solver.bottom_cell_averages();

  std::vector<std::string> files;
  int snap_idx = 0;
  RunReport report = solver.run(field, [&](double, const Field& fld) {
    write_snapshot(out_dir, snap_idx, fld, preset.model, preset.pdf, zbar, files);
    ++snap_idx;
  });

  const std::string mpath = out_dir + "/manifest.txt";
  std::FILE* f = std::fopen(mpath.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open output file: " + mpath);
  std::fprintf(f, "preset = %s\n", preset.name.c_str());
  std::fprintf(f, "description = %s\n", preset.description.c_str());
  std::fprintf(f, "grid = %s\n", to_string(preset.config).c_str());
  axis_line(f, "x", preset.x);
  if (grid.has_y()) axis_line(f, "y", preset.y);
  axis_line(f, "xi", preset.xi);
  if (grid.has_eta()) axis_line(f, "eta", preset.eta);
  std::fprintf(f, "theta = %.17g\n", preset.solver.slope.theta);
  std::fprintf(f, "cfl = %.17g\n", preset.solver.cfl);
  if (preset.has_sigma) std::fprintf(f, "sigma = %.17g\n", preset.sigma);
  if (preset.model.is_swe()) {
    std::fprintf(f, "g = %.17g\n", preset.model.g);
    std::fprintf(f, "eps = %.17g\n", preset.model.desing_eps);
  }
  std::fprintf(f, "t_final = %.17g\n", preset.solver.t_final);
  std::fprintf(f, "bc_x = %s\n", bc_name(preset.solver.bc_x));
  if (grid.has_y()) std::fprintf(f, "bc_y = %s\n", bc_name(preset.solver.bc_y));
  std::fprintf(f, "threads = %d\n", threads);
  std::fprintf(f, "steps = %d\n", report.steps);
  if (preset.solver.draining_component >= 0)
    std::fprintf(f, "min_draining_avg = %.17g\n", report.min_draining_avg);
  for (std::size_t i = 0; i < report.output_times.size(); ++i) {
    std::fprintf(f, "output %zu: t = %.17g totals =", i, report.output_times[i]);
    for (double tot : report.totals_at_output[i]) std::fprintf(f, " %.17g", tot);
    std::fprintf(f, "\n");
  }
  for (const auto& fn : files) std::fprintf(f, "file = %s\n", fn.c_str());
  std::fclose(f);
  return report;
}

namespace {

/// Fine-to-coarse restriction of weighted cell averages (block means),
/// followed by the x-profile of the mean field: mean(x_j) = sum_l Ubar*dxi.
void restricted_mean_profiles(const Field& fine, int nx0, int nxi0,
                              std::vector<double>& mean0,
                              std::vector<double>& mean1) {
  const Grid& g = fine.grid;
  const int rx = g.nx() / nx0, rxi = g.nxi() / nxi0;
  const double dxi0 = (g.xi.hi - g.xi.lo) / nxi0;
  mean0.assign(nx0, 0.0);
  mean1.assign(nx0, 0.0);
  for (int j0 = 0; j0 < nx0; ++j0) {
    double acc0 = 0.0, acc1 = 0.0;
    for (int l0 = 0; l0 < nxi0; ++l0) {
      double bar0 = 0.0, bar1 = 0.0;
      for (int a = 0; a < rx; ++a)
        for (int b = 0; b < rxi; ++b) {
          bar0 += fine.at(j0 * rx + a, 0, l0 * rxi + b, 0, 0);
          bar1 += fine.at(j0 * rx + a, 0, l0 * rxi + b, 0, 1);
        }
      acc0 += bar0 / (rx * rxi);
      acc1 += bar1 / (rx * rxi);
    }
    mean0[j0] = acc0 * dxi0;
    mean1[j0] = acc1 * dxi0;
  }
}

double l1_diff(const std::vector<double>& a, const std::vector<double>& b,
               double dx) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s * dx;
}

}  // namespace

ConvergenceResult convergence_study(const Preset& preset,
                                    const std::array<int, 3>& nxi,
                                    const std::array<int, 3>& nx, int threads) {
  if (preset.config != GridConfig::d1s1)
    throw ConfigError(
        "the convergence harness supports 1-D presets with one random "
        "variable");
  if (nxi[1] != 2 * nxi[0] || nxi[2] != 2 * nxi[1])
    throw ConfigError("non-nested meshes: random-direction counts must double");
  if (nx[0] <= 0 || nx[1] % nx[0] != 0 || nx[2] % nx[1] != 0)
    throw ConfigError("non-nested meshes: physical counts must divide evenly");

  ConvergenceResult r;
  r.nxi = nxi;
  r.nx = nx;

  std::vector<double> w[3], hu[3];
  for (int i = 0; i < 3; ++i) {
    Preset p = preset;
    p.x.n_cells = nx[i];
    p.xi.n_cells = nxi[i];
    const Grid grid = preset_grid(p);
    Field field = initialize_field(grid, p.model, p.pdf, p.initial);
    SolverConfig cfg = p.solver;
    cfg.threads = threads;
    cfg.accuracy_dt = true;
    cfg.output_times.clear();
    Solver solver(grid, p.model, p.pdf, cfg);
    solver.run(field, nullptr);
    restricted_mean_profiles(field, nx[0], nxi[0], w[i], hu[i]);
  }

  const double dx0 = (preset.x.hi - preset.x.lo) / nx[0];
  r.delta12_w = l1_diff(w[2], w[1], dx0);
  r.delta24_w = l1_diff(w[1], w[0], dx0);
  r.delta12_hu = l1_diff(hu[2], hu[1], dx0);
  r.delta24_hu = l1_diff(hu[1], hu[0], dx0);

  if (r.delta12_w == 0.0 && r.delta24_w == 0.0 && r.delta12_hu == 0.0 &&
      r.delta24_hu == 0.0) {
    r.exact_match = true;
    return r;
  }
  auto runge = [](double d12, double d24, double& err, double& rate) {
    const double denom = std::abs(d12 - d24);
    err = denom > 0.0 ? d12 * d12 / denom
                      : std::numeric_limits<double>::infinity();
    rate = (d12 > 0.0 && d24 > 0.0) ? std::log2(d24 / d12) : 0.0;
  };
  runge(r.delta12_w, r.delta24_w, r.err_w, r.rate_w);
  runge(r.delta12_hu, r.delta24_hu, r.err_hu, r.rate_hu);
  return r;
}

std::string format_convergence(const ConvergenceResult& r) {
  char buf[512];
  std::string out;
  std::snprintf(buf, sizeof buf, "# nxi = %d,%d,%d  nx = %d,%d,%d\n", r.nxi[0],
                r.nxi[1], r.nxi[2], r.nx[0], r.nx[1], r.nx[2]);
  out += buf;
  if (r.exact_match) {
    out += "exact_match = true\n";
    return out;
  }
  out += "# quantity delta12 delta24 error rate\n";
  std::snprintf(buf, sizeof buf, "w %.17g %.17g %.17g %.17g\n", r.delta12_w,
                r.delta24_w, r.err_w, r.rate_w);
  out += buf;
  std::snprintf(buf, sizeof buf, "hu %.17g %.17g %.17g %.17g\n", r.delta12_hu,
                r.delta24_hu, r.err_hu, r.rate_hu);
  out += buf;
  return out;
}

}  // namespace stochfv
