#include <cstdio>
#include <exception>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stochfv/cli_io.hpp"

namespace {

int run_solve(const std::string& config_path,
              const std::vector<std::string>& overrides,
              const std::string& out_dir, int threads) {
  const stochfv::LoadedConfig cfg = stochfv::load_config(config_path, overrides);
  const stochfv::RunReport report =
      stochfv::solve_and_write(cfg.preset, out_dir, threads);
  std::printf("preset %s: %d steps, %zu output time(s), results in %s\n",
              cfg.preset.name.c_str(), report.steps,
              report.output_times.size(), out_dir.c_str());
  return 0;
}

int run_converge(const std::string& config_path,
                 const std::vector<std::string>& overrides,
                 const std::string& out_dir, int threads) {
  const stochfv::LoadedConfig cfg = stochfv::load_config(config_path, overrides);
  const stochfv::ConvergenceResult r =
      stochfv::convergence_study(cfg.preset, cfg.conv_nxi, cfg.conv_nx, threads);
  const std::string table = stochfv::format_convergence(r);
  std::fputs(table.c_str(), stdout);
  std::filesystem::create_directories(out_dir);
  const std::string path = out_dir + "/convergence.txt";
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open output file: " + path);
  std::fputs(table.c_str(), f);
  std::fclose(f);
  return 0;
}

int run_list_presets() {
  for (const auto& name : stochfv::preset_names()) {
    const stochfv::Preset p = stochfv::make_preset(name);
    std::printf("%-22s %s\n", name.c_str(), p.description.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-volume solver for hyperbolic balance laws with random inputs"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "out";
  std::vector<std::string> overrides;
  int threads = 1;

  auto add_common = [&](CLI::App* sub, bool needs_config) {
    if (needs_config)
      sub->add_option("config", config_path, "configuration file")->required();
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--threads", threads, "worker threads");
    sub->add_option("--override", overrides,
                    "key=value overriding the config (repeatable)");
  };

  CLI::App* solve = app.add_subcommand("solve", "run a preset and write outputs");
  add_common(solve, true);
  CLI::App* converge =
      app.add_subcommand("converge", "three-grid convergence study");
  add_common(converge, true);
  app.add_subcommand("list-presets", "list available presets");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return run_solve(config_path, overrides, out_dir, threads);
    if (converge->parsed())
      return run_converge(config_path, overrides, out_dir, threads);
    return run_list_presets();
  } catch (const stochfv::ConfigError& ex) {
    std::fprintf(stderr, "config error: %s\n", ex.what());
    return 2;
  } catch (const stochfv::NumericalAbort& ex) {
    std::fprintf(stderr, "numerical abort: %s\n", ex.what());
    return 3;
  } catch (const std::exception& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return 1;
  }
}
