#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>

#include "qbound/chsh.hpp"

namespace qbound::cli {

namespace {

constexpr double kDegree = std::numbers::pi / 180.0;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view text, std::string_view what) {
  const std::string s(trim(text));
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size() || !std::isfinite(v))
    throw UsageError(std::string(what) + ": cannot parse '" + s + "' as a number");
  return v;
}

std::uint64_t parse_u64(std::string_view text, std::string_view what) {
  const std::string_view s = trim(text);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw UsageError(std::string(what) + ": cannot parse '" + std::string(s) + "' as a nonnegative integer");
  return v;
}

void write_row(std::ostream& out, std::initializer_list<double> fields) {
  bool first = true;
  for (double f : fields) {
    if (!first) out << ',';
    out << format_number(f);
    first = false;
  }
  out << '\n';
}

}  // namespace

Grid Grid::parse(std::string_view text, bool degrees) {
  const auto c1 = text.find(':');
  const auto c2 = c1 == std::string_view::npos ? c1 : text.find(':', c1 + 1);
  if (c2 == std::string_view::npos || text.find(':', c2 + 1) != std::string_view::npos)
    throw UsageError("grid '" + std::string(text) + "' is not of the form start:stop:count");
  const double scale = degrees ? kDegree : 1.0;
  Grid g;
  g.start = parse_double(text.substr(0, c1), "grid start") * scale;
  g.stop = parse_double(text.substr(c1 + 1, c2 - c1 - 1), "grid stop") * scale;
  g.count = parse_u64(text.substr(c2 + 1), "grid count");
  g.validate();
  return g;
}

Grid Grid::full_turn_half() { return {0.0, std::numbers::pi, kDefaultGridCount}; }

void Grid::validate() const {
  if (count < 2) throw UsageError("grid count must be at least 2");
  if (!(start < stop)) throw UsageError("grid start must be below grid stop");
}

std::vector<double> Grid::values() const {
  validate();
  std::vector<double> v(count);
  const double step = (stop - start) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) v[i] = start + step * static_cast<double>(i);
  v.back() = stop;
  return v;
}

std::vector<double> parse_angle_list(std::string_view text, bool degrees) {
  std::vector<double> out;
  const double scale = degrees ? kDegree : 1.0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const auto item = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    out.push_back(parse_double(item, "angle list") * scale);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::vector<double> default_curve_angles() {
  constexpr double pi = std::numbers::pi;
  return {0.0, pi / 8.0, pi / 4.0, 3.0 * pi / 8.0, pi / 2.0};
}

void RunConfig::validate() const {
  if (pairs_per_setting < 2) throw UsageError("pairs_per_setting must be at least 2");
  if (replications < 1) throw UsageError("replications must be at least 1");
  try {
    noise.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

void apply_config(std::istream& in, RunConfig& cfg) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view s = line;
    if (const auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string_view::npos)
      throw UsageError("config line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key(trim(s.substr(0, eq)));
    const std::string_view value = trim(s.substr(eq + 1));
    if (key == "visibility") {
      cfg.noise.visibility = parse_double(value, key);
    } else if (key == "analyzer_offset_a") {
      cfg.noise.analyzer_offset_a = parse_double(value, key);
    } else if (key == "analyzer_offset_b") {
      cfg.noise.analyzer_offset_b = parse_double(value, key);
    } else if (key == "accidental_fraction") {
      cfg.noise.accidental_fraction = parse_double(value, key);
    } else if (key == "pairs_per_setting") {
      cfg.pairs_per_setting = parse_u64(value, key);
    } else if (key == "replications") {
      cfg.replications = parse_u64(value, key);
    } else if (key == "seed") {
      cfg.seed = parse_u64(value, key);
    } else {
      throw UsageError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
}

void load_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  apply_config(in, cfg);
}

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_surface(const Grid& theta_grid, const Grid& xi_grid, std::ostream& out) {
  const auto thetas = theta_grid.values();
  const auto xis = xi_grid.values();
  out << "theta,xi,s\n";
  for (double t : thetas) {
    const chsh::ThetaParam theta(t);
    for (double x : xis) write_row(out, {t, x, chsh::s_parameter(theta, chsh::XiParam(x))});
  }
}

void write_sweep_xi(const std::vector<double>& thetas, const Grid& xi_grid, std::ostream& out) {
  if (thetas.empty()) throw UsageError("sweep-xi needs at least one theta value");
  const auto xis = xi_grid.values();
  out << "theta,xi,s,classical_limit,cirelson_limit\n";
  for (double t : thetas) {
    const chsh::ThetaParam theta(t);
    for (double x : xis)
      write_row(out, {t, x, chsh::s_parameter(theta, chsh::XiParam(x)), chsh::kClassicalBound, chsh::kCirelsonBound});
  }
}

void write_sweep_theta(const std::vector<double>& xis, const Grid& theta_grid, std::ostream& out) {
  if (xis.empty()) throw UsageError("sweep-theta needs at least one xi value");
  const auto thetas = theta_grid.values();
  std::vector<chsh::QuantumBounds> bounds;
  bounds.reserve(thetas.size());
  for (double t : thetas) bounds.push_back(chsh::quantum_bounds(chsh::ThetaParam(t)));

  out << "xi,theta,s,s_qmin,s_qmax\n";
  for (double x : xis) {
    const chsh::XiParam xi(x);
    for (std::size_t i = 0; i < thetas.size(); ++i)
      write_row(out, {x, thetas[i], chsh::s_parameter(chsh::ThetaParam(thetas[i]), xi), bounds[i].s_min,
                      bounds[i].s_max});
  }
}

void write_bounds(const Grid& theta_grid, std::ostream& out) {
  out << "theta,classical_bound,quantum_max,cirelson,superquantum_gap\n";
  for (double t : theta_grid.values()) {
    const double qmax = chsh::quantum_bounds(chsh::ThetaParam(t)).s_max;
    write_row(out, {t, chsh::classical_bound(), qmax, chsh::kCirelsonBound, chsh::kCirelsonBound - qmax});
  }
}

void write_simulate(const std::vector<double>& thetas, const std::vector<double>& xis, const RunConfig& cfg,
                    std::ostream& out) {
  if (thetas.empty() || xis.empty()) throw UsageError("simulate needs at least one theta and one xi value");
  cfg.validate();
  out << "theta,xi,s_hat,std_err,s_ideal\n";
  std::uint64_t point = 0;
  for (double t : thetas) {
    const chsh::ThetaParam theta(t);
    for (double x : xis) {
      const chsh::XiParam xi(x);
      const double ideal = chsh::s_parameter(theta, xi);
      const std::uint64_t point_seed = derive_seed(cfg.seed, point++);
      for (std::uint64_t r = 0; r < cfg.replications; ++r) {
        const auto est = expsim::estimate_s(theta, xi, cfg.pairs_per_setting, cfg.noise, derive_seed(point_seed, r));
        write_row(out, {t, x, est.s_hat, est.std_err, ideal});
      }
    }
  }
}

void write_sample(double theta, std::size_t n, std::uint64_t seed, std::ostream& out) {
  if (n == 0) throw UsageError("sample count must be at least 1");
  const chsh::ThetaParam th(theta);
  const auto samples = chsh::haar_sample_s(th, n, seed);
  const auto bounds = chsh::quantum_bounds(th);
  out << "index,s_sample\n";
  for (std::size_t i = 0; i < samples.size(); ++i) out << i << ',' << format_number(samples[i]) << '\n';
  const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
  out << "min," << format_number(*lo) << '\n';
  out << "max," << format_number(*hi) << '\n';
  out << "s_qmin," << format_number(bounds.s_min) << '\n';
  out << "s_qmax," << format_number(bounds.s_max) << '\n';
}

void write_output(const std::string& path, const std::function<void(std::ostream&)>& body) {
  if (path.empty() || path == "-") {
    body(std::cout);
    std::cout.flush();
    if (!std::cout) throw IoError("failed writing to standard output");
    return;
  }
  // Render first so a validation error leaves no partial file behind.
  std::ostringstream buffer;
  body(buffer);
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open output file '" + path + "'");
  file << buffer.str();
  file.close();
  if (!file) throw IoError("failed writing output file '" + path + "'");
}

void cmd_surface(const SweepSpec& spec) {
  write_output(spec.output_path, [&](std::ostream& o) { write_surface(spec.theta_grid, spec.xi_grid, o); });
}

void cmd_sweep_xi(const std::vector<double>& thetas, const Grid& xi_grid, const std::string& out) {
  write_output(out, [&](std::ostream& o) { write_sweep_xi(thetas, xi_grid, o); });
}

void cmd_sweep_theta(const std::vector<double>& xis, const Grid& theta_grid, const std::string& out) {
  write_output(out, [&](std::ostream& o) { write_sweep_theta(xis, theta_grid, o); });
}

void cmd_bounds(const Grid& theta_grid, const std::string& out) {
  write_output(out, [&](std::ostream& o) { write_bounds(theta_grid, o); });
}

void cmd_simulate(const std::vector<double>& thetas, const std::vector<double>& xis, const RunConfig& cfg,
                  const std::string& out) {
  write_output(out, [&](std::ostream& o) { write_simulate(thetas, xis, cfg, o); });
}

void cmd_sample(double theta, std::size_t n, std::uint64_t seed, const std::string& out) {
  write_output(out, [&](std::ostream& o) { write_sample(theta, n, seed, o); });
}

}  // namespace qbound::cli
