// qbound: CHSH bounds, figure sweeps and simulated coincidence experiments.

#include <CLI11.hpp>

#include <iostream>
#include <numbers>
#include <optional>
#include <string>

#include "commands.hpp"

namespace {

using namespace qbound::cli;

struct CommonFlags {
  std::string out;
  std::optional<std::uint64_t> seed;
  bool degrees = false;
  std::string config;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--out", f.out, "Output CSV path (stdout when omitted)");
  cmd->add_option("--seed", f.seed, "64-bit random seed");
  cmd->add_flag("--degrees", f.degrees, "Read angle arguments in degrees");
  cmd->add_option("--config", f.config, "key = value file with noise and run defaults");
}

RunConfig base_config(const CommonFlags& f) {
  RunConfig cfg;
  if (!f.config.empty()) load_config_file(f.config, cfg);
  if (f.seed) cfg.seed = *f.seed;
  return cfg;
}

Grid grid_or_default(const std::string& text, bool degrees) {
  return text.empty() ? Grid::full_turn_half() : Grid::parse(text, degrees);
}

std::vector<double> list_or_default(const std::string& text, bool degrees) {
  return text.empty() ? default_curve_angles() : parse_angle_list(text, degrees);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CHSH parameter, quantum bounds and simulated Bell-test counts"};
  app.require_subcommand(1);

  CommonFlags common;
  std::string theta_grid;
  std::string xi_grid;
  std::string theta_list;
  std::string xi_list;

  auto* surface = app.add_subcommand("surface", "S over a (theta, xi) grid");
  add_common(surface, common);
  surface->add_option("--theta-grid", theta_grid, "start:stop:count (default 0:pi:181)");
  surface->add_option("--xi-grid", xi_grid, "start:stop:count (default 0:pi:181)");

  auto* sweep_xi = app.add_subcommand("sweep-xi", "S versus xi, one curve per theta");
  add_common(sweep_xi, common);
  sweep_xi->add_option("--theta", theta_list, "comma-separated theta values (default 0,pi/8,pi/4,3pi/8,pi/2)");
  sweep_xi->add_option("--xi-grid", xi_grid, "start:stop:count (default 0:pi:181)");

  auto* sweep_theta = app.add_subcommand("sweep-theta", "S versus theta with the spectral bound envelope");
  add_common(sweep_theta, common);
  sweep_theta->add_option("--xi", xi_list, "comma-separated xi values (default 0,pi/8,pi/4,3pi/8,pi/2)");
  sweep_theta->add_option("--theta-grid", theta_grid, "start:stop:count (default 0:pi:181)");

  auto* bounds = app.add_subcommand("bounds", "Classical, quantum and Cirel'son bounds per theta");
  add_common(bounds, common);
  bounds->add_option("--theta-grid", theta_grid, "start:stop:count (default 0:pi:181)");

  auto* simulate = app.add_subcommand("simulate", "Simulated coincidence-count estimates of S");
  add_common(simulate, common);
  std::optional<double> visibility;
  std::optional<double> offset_a;
  std::optional<double> offset_b;
  std::optional<double> accidental;
  std::optional<std::uint64_t> pairs;
  std::optional<std::uint64_t> replications;
  simulate->add_option("--theta", theta_list, "comma-separated theta values (default 0,pi/8,pi/4,3pi/8,pi/2)");
  simulate->add_option("--xi", xi_list, "comma-separated xi values (default 0)");
  simulate->add_option("--visibility", visibility, "Werner visibility in [0, 1] (default 0.96)");
  simulate->add_option("--offset-a", offset_a, "analyzer a misalignment angle (default 0)");
  simulate->add_option("--offset-b", offset_b, "analyzer b misalignment angle (default 0)");
  simulate->add_option("--accidental", accidental, "accidental coincidence fraction in [0, 1) (default 0.005)");
  simulate->add_option("--pairs", pairs, "pairs per analyzer setting (default 100000)");
  simulate->add_option("--replications", replications, "replications per (theta, xi) (default 1)");

  auto* sample = app.add_subcommand("sample", "<B(theta)> on Haar-random pure states");
  add_common(sample, common);
  double sample_theta = std::numbers::pi / 4.0;
  std::size_t sample_n = 100000;
  sample->add_option("--theta", sample_theta, "theta (default pi/4)");
  sample->add_option("-n,--count", sample_n, "number of states (default 100000)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  const bool deg = common.degrees;
  const double angle_scale = deg ? std::numbers::pi / 180.0 : 1.0;
  try {
    if (surface->parsed()) {
      base_config(common);
      cmd_surface({grid_or_default(theta_grid, deg), grid_or_default(xi_grid, deg), common.out});
    } else if (sweep_xi->parsed()) {
      base_config(common);
      cmd_sweep_xi(list_or_default(theta_list, deg), grid_or_default(xi_grid, deg), common.out);
    } else if (sweep_theta->parsed()) {
      base_config(common);
      cmd_sweep_theta(list_or_default(xi_list, deg), grid_or_default(theta_grid, deg), common.out);
    } else if (bounds->parsed()) {
      base_config(common);
      cmd_bounds(grid_or_default(theta_grid, deg), common.out);
    } else if (simulate->parsed()) {
      RunConfig cfg = base_config(common);
      if (visibility) cfg.noise.visibility = *visibility;
      if (offset_a) cfg.noise.analyzer_offset_a = *offset_a * angle_scale;
      if (offset_b) cfg.noise.analyzer_offset_b = *offset_b * angle_scale;
      if (accidental) cfg.noise.accidental_fraction = *accidental;
      if (pairs) cfg.pairs_per_setting = *pairs;
      if (replications) cfg.replications = *replications;
      const auto xis = xi_list.empty() ? std::vector<double>{0.0} : parse_angle_list(xi_list, deg);
      cmd_simulate(list_or_default(theta_list, deg), xis, cfg, common.out);
    } else if (sample->parsed()) {
      const RunConfig cfg = base_config(common);
      cmd_sample(sample_theta * angle_scale, sample_n, cfg.seed, common.out);
    }
  } catch (const IoError& e) {
    std::cerr << "qbound: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "qbound: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "qbound: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
