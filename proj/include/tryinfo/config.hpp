#pragma once
#include <tryinfo/grid.hpp>

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace tryinfo {

/// Parsed INI text: sections of ordered key=value pairs. Repeated keys are
/// kept in order, which is how slit lists are written.
struct IniFile {
  std::map<std::string, std::vector<std::pair<std::string, std::string>>>
      sections;
};

/// Accepts [section] headers, key = value lines, blank lines, and comments
/// starting with '#' or ';'. Errors name the source and line.
IniFile parse_ini(std::istream& is, const std::string& source_name);

struct GridConfig {
  double x_lo = -3.0;
  double x_hi = 3.0;
  std::size_t x_n = 512;
  double y_lo = -3.0;
  double y_hi = 3.0;
  std::size_t y_n = 512;
};

struct KernelConfig {
  std::string type = "two_path_beta";
  // two_path_beta
  double beta = 0.0;
  double d = 1.3;
  double sigma = 0.65;
  // shared Fresnel geometry
  double k = 20.0;
  double Ls = 8.0;
  double Ld = 8.0;
  // discrete_slits: u, amp_re, amp_im, phase per entry
  std::vector<std::array<double, 4>> slits;
  double norm_re = 1.0;
  double norm_im = 0.0;
  // general_aperture: center, width, amp_re, amp_im per entry
  std::vector<std::array<double, 4>> tophats;
  std::size_t samples_per_width = 16;
};

struct PriorConfig {
  std::string type = "uniform";  // uniform | gaussian
  double mean = 0.0;
  double sigma = 1.0;
};

struct DetectorConfig {
  std::string type = "full";  // full | point | window
  double x0 = 0.0;
  double window_lo = -0.5;
  double window_hi = 0.5;
};

struct BetaSweepConfig {
  double beta_lo = 0.0;
  double beta_hi = 2.5;
  std::size_t beta_count = 51;
};

struct NullConfig {
  double eps_lo = 0.005;
  double eps_hi = 0.35;
  std::size_t eps_count = 60;
  std::string spacing = "log";  // log | linear
  std::vector<double> b_values = {1e-3};
  double y_lo = -1.0;
  double y_hi = 1.0;
  std::size_t y_n = 201;
  double curvature = 0.12;
  double q_sin = 1.0;
  double q_lin = 0.35;
  double efficiency = 1.0;
};

struct CoherenceConfig {
  std::size_t n = 12;
  std::size_t m_lo = 1;
  std::size_t m_hi = 12;
  std::uint64_t seed = 7;
};

struct RunConfig {
  GridConfig grid;
  KernelConfig kernel;
  PriorConfig prior;
  DetectorConfig detector;
  BetaSweepConfig beta_sweep;
  NullConfig null;
  CoherenceConfig coherence;
  double fd_delta = 1e-5;
  double tolerance = 0.0;  // 0 = per-check defaults
  unsigned threads = 0;    // 0 = hardware concurrency
  bool stamp = false;      // embed a wall-clock line in outputs
  std::string out;
};

/// Applies an INI file on top of the defaults. Unknown sections or keys
/// and malformed values are errors naming section.key.
RunConfig config_from_ini(const IniFile& ini, const std::string& source_name);
RunConfig load_config_file(const std::string& path);

Grid1D x_grid(const RunConfig& cfg);
Grid1D y_grid(const RunConfig& cfg);

} // namespace tryinfo
