#pragma once

// Figure and table generators behind the qbound command line. Every writer
// emits one lowercase header row followed by data rows with 12 significant
// digits; output depends only on the arguments.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qbound/expsim.hpp"

namespace qbound::cli {

/// Bad flag values or combinations.
class UsageError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Output could not be written.
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultSeed = 20260417;
inline constexpr std::size_t kDefaultGridCount = 181;

/// Evenly spaced angles, endpoints included.
struct Grid {
  double start = 0.0;
  double stop = 0.0;
  std::size_t count = 0;

  /// Parses `start:stop:count`; angles converted from degrees when asked.
  static Grid parse(std::string_view text, bool degrees);
  /// [0, π] in 181 steps.
  static Grid full_turn_half();

  void validate() const;
  std::vector<double> values() const;
};

/// Comma-separated angles.
std::vector<double> parse_angle_list(std::string_view text, bool degrees);

/// θ (or ξ) values used for the figure curves when no list is given:
/// {0, π/8, π/4, 3π/8, π/2}.
std::vector<double> default_curve_angles();

struct SweepSpec {
  Grid theta_grid = Grid::full_turn_half();
  Grid xi_grid = Grid::full_turn_half();
  std::string output_path;
};

struct RunConfig {
  std::uint64_t pairs_per_setting = 100000;
  expsim::NoiseModel noise;
  std::uint64_t seed = kDefaultSeed;
  std::uint64_t replications = 1;

  void validate() const;
};

/// Applies `key = value` lines (blank lines and `#` comments ignored) on top
/// of cfg. Keys: visibility, analyzer_offset_a, analyzer_offset_b,
/// accidental_fraction, pairs_per_setting, replications, seed. Offsets are
/// radians. Throws UsageError on unknown keys or malformed values.
void apply_config(std::istream& in, RunConfig& cfg);
void load_config_file(const std::string& path, RunConfig& cfg);

/// Number formatting shared by all writers (%.12g, negative zero printed as 0).
std::string format_number(double v);

// Stream writers.
void write_surface(const Grid& theta_grid, const Grid& xi_grid, std::ostream& out);
void write_sweep_xi(const std::vector<double>& thetas, const Grid& xi_grid, std::ostream& out);
void write_sweep_theta(const std::vector<double>& xis, const Grid& theta_grid, std::ostream& out);
void write_bounds(const Grid& theta_grid, std::ostream& out);
void write_simulate(const std::vector<double>& thetas, const std::vector<double>& xis, const RunConfig& cfg,
                    std::ostream& out);
void write_sample(double theta, std::size_t n, std::uint64_t seed, std::ostream& out);

/// Writes through `body` to `path`, or to stdout when path is empty or "-".
/// Throws IoError naming the path when the file cannot be opened or written.
void write_output(const std::string& path, const std::function<void(std::ostream&)>& body);

// File-level commands.
void cmd_surface(const SweepSpec& spec);
void cmd_sweep_xi(const std::vector<double>& thetas, const Grid& xi_grid, const std::string& out);
void cmd_sweep_theta(const std::vector<double>& xis, const Grid& theta_grid, const std::string& out);
void cmd_bounds(const Grid& theta_grid, const std::string& out);
void cmd_simulate(const std::vector<double>& thetas, const std::vector<double>& xis, const RunConfig& cfg,
                  const std::string& out);
void cmd_sample(double theta, std::size_t n, std::uint64_t seed, const std::string& out);

}  // namespace qbound::cli
