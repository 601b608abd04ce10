#include <tryinfo/config.hpp>
#include <tryinfo/sweep.hpp>

#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace tryinfo {
namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw std::invalid_argument("config: " + where + ": " + what);
}

double to_double(const std::string& where, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument("trailing text");
    return v;
  } catch (const std::exception&) {
    fail(where, "cannot parse '" + text + "' as a number");
  }
}

std::size_t to_count(const std::string& where, const std::string& text) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(text, &used);
    if (used != text.size()) throw std::invalid_argument("trailing text");
    if (v < 0) throw std::invalid_argument("negative");
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    fail(where, "cannot parse '" + text + "' as a nonnegative integer");
  }
}

std::uint64_t to_seed(const std::string& where, const std::string& text) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(text, &used);
    if (used != text.size()) throw std::invalid_argument("trailing text");
    return v;
  } catch (const std::exception&) {
    fail(where, "cannot parse '" + text + "' as a seed");
  }
}

bool to_bool(const std::string& where, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  fail(where, "cannot parse '" + text + "' as a boolean");
}

std::vector<double> split_numbers(const std::string& where,
                                  const std::string& text,
                                  std::size_t expect_min,
                                  std::size_t expect_max) {
  std::vector<double> out;
  std::string token;
  // comma or whitespace separated
  std::string normalized = text;
  for (char& c : normalized) {
    if (c == ',') c = ' ';
  }
  std::istringstream ns(normalized);
  while (ns >> token) out.push_back(to_double(where, token));
  if (out.size() < expect_min || out.size() > expect_max) {
    fail(where, "expected between " + std::to_string(expect_min) + " and " +
                    std::to_string(expect_max) + " numbers, got " +
                    std::to_string(out.size()));
  }
  return out;
}

} // namespace

IniFile parse_ini(std::istream& is, const std::string& source_name) {
  IniFile ini;
  std::string line;
  std::string section;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::string where = source_name + ":" + std::to_string(lineno);
    const std::size_t cut = line.find_first_of("#;");
    if (cut != std::string::npos) line.erase(cut);
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '[') {
      if (t.back() != ']') fail(where, "unterminated section header");
      section = trim(t.substr(1, t.size() - 2));
      if (section.empty()) fail(where, "empty section name");
      ini.sections.try_emplace(section);
      continue;
    }
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos) fail(where, "expected key = value");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty()) fail(where, "empty key");
    if (section.empty()) fail(where, "key '" + key + "' outside any section");
    ini.sections[section].emplace_back(key, value);
  }
  return ini;
}

RunConfig config_from_ini(const IniFile& ini, const std::string& source_name) {
  RunConfig cfg;
  const std::set<std::string> known_sections = {
      "grid", "kernel", "prior", "detector", "sweep_beta",
      "null", "coherence", "run"};
  for (const auto& [section, entries] : ini.sections) {
    if (!known_sections.count(section)) {
      fail(source_name, "unknown section [" + section + "]");
    }
    for (const auto& [key, value] : entries) {
      const std::string where = source_name + ": " + section + "." + key;
      if (section == "grid") {
        if (key == "x_lo") cfg.grid.x_lo = to_double(where, value);
        else if (key == "x_hi") cfg.grid.x_hi = to_double(where, value);
        else if (key == "x_n") cfg.grid.x_n = to_count(where, value);
        else if (key == "y_lo") cfg.grid.y_lo = to_double(where, value);
        else if (key == "y_hi") cfg.grid.y_hi = to_double(where, value);
        else if (key == "y_n") cfg.grid.y_n = to_count(where, value);
        else if (key == "n") {
          cfg.grid.x_n = to_count(where, value);
          cfg.grid.y_n = cfg.grid.x_n;
        } else fail(where, "unknown key");
      } else if (section == "kernel") {
        if (key == "type") cfg.kernel.type = value;
        else if (key == "beta") cfg.kernel.beta = to_double(where, value);
        else if (key == "d") cfg.kernel.d = to_double(where, value);
        else if (key == "sigma") cfg.kernel.sigma = to_double(where, value);
        else if (key == "k") cfg.kernel.k = to_double(where, value);
        else if (key == "Ls") cfg.kernel.Ls = to_double(where, value);
        else if (key == "Ld") cfg.kernel.Ld = to_double(where, value);
        else if (key == "norm_re") cfg.kernel.norm_re = to_double(where, value);
        else if (key == "norm_im") cfg.kernel.norm_im = to_double(where, value);
        else if (key == "samples_per_width")
          cfg.kernel.samples_per_width = to_count(where, value);
        else if (key == "slit") {
          const auto v = split_numbers(where, value, 1, 4);
          std::array<double, 4> s{0.0, 1.0, 0.0, 0.0};
          for (std::size_t i = 0; i < v.size(); ++i) s[i] = v[i];
          cfg.kernel.slits.push_back(s);
        } else if (key == "tophat") {
          const auto v = split_numbers(where, value, 2, 4);
          std::array<double, 4> s{0.0, 0.1, 1.0, 0.0};
          for (std::size_t i = 0; i < v.size(); ++i) s[i] = v[i];
          cfg.kernel.tophats.push_back(s);
        } else fail(where, "unknown key");
      } else if (section == "prior") {
        if (key == "type") cfg.prior.type = value;
        else if (key == "mean") cfg.prior.mean = to_double(where, value);
        else if (key == "sigma") cfg.prior.sigma = to_double(where, value);
        else fail(where, "unknown key");
      } else if (section == "detector") {
        if (key == "type") cfg.detector.type = value;
        else if (key == "x0") cfg.detector.x0 = to_double(where, value);
        else if (key == "window_lo")
          cfg.detector.window_lo = to_double(where, value);
        else if (key == "window_hi")
          cfg.detector.window_hi = to_double(where, value);
        else fail(where, "unknown key");
      } else if (section == "sweep_beta") {
        if (key == "beta_lo") cfg.beta_sweep.beta_lo = to_double(where, value);
        else if (key == "beta_hi")
          cfg.beta_sweep.beta_hi = to_double(where, value);
        else if (key == "beta_count")
          cfg.beta_sweep.beta_count = to_count(where, value);
        else fail(where, "unknown key");
      } else if (section == "null") {
        if (key == "eps_lo") cfg.null.eps_lo = to_double(where, value);
        else if (key == "eps_hi") cfg.null.eps_hi = to_double(where, value);
        else if (key == "eps_count")
          cfg.null.eps_count = to_count(where, value);
        else if (key == "spacing") cfg.null.spacing = value;
        else if (key == "b")
          cfg.null.b_values = split_numbers(where, value, 1, 16);
        else if (key == "y_lo") cfg.null.y_lo = to_double(where, value);
        else if (key == "y_hi") cfg.null.y_hi = to_double(where, value);
        else if (key == "y_n") cfg.null.y_n = to_count(where, value);
        else if (key == "curvature")
          cfg.null.curvature = to_double(where, value);
        else if (key == "q_sin") cfg.null.q_sin = to_double(where, value);
        else if (key == "q_lin") cfg.null.q_lin = to_double(where, value);
        else if (key == "efficiency")
          cfg.null.efficiency = to_double(where, value);
        else fail(where, "unknown key");
      } else if (section == "coherence") {
        if (key == "n") cfg.coherence.n = to_count(where, value);
        else if (key == "m_lo") cfg.coherence.m_lo = to_count(where, value);
        else if (key == "m_hi") cfg.coherence.m_hi = to_count(where, value);
        else if (key == "seed") cfg.coherence.seed = to_seed(where, value);
        else fail(where, "unknown key");
      } else {  // run
        if (key == "fd_delta") cfg.fd_delta = to_double(where, value);
        else if (key == "tolerance") cfg.tolerance = to_double(where, value);
        else if (key == "threads")
          cfg.threads = static_cast<unsigned>(to_count(where, value));
        else if (key == "stamp") cfg.stamp = to_bool(where, value);
        else if (key == "out") cfg.out = value;
        else fail(where, "unknown key");
      }
    }
  }
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) {
    throw IoError("cannot open config file " + path);
  }
  const IniFile ini = parse_ini(is, path);
  return config_from_ini(ini, path);
}

Grid1D x_grid(const RunConfig& cfg) {
  return make_grid(cfg.grid.x_lo, cfg.grid.x_hi, cfg.grid.x_n);
}

Grid1D y_grid(const RunConfig& cfg) {
  return make_grid(cfg.grid.y_lo, cfg.grid.y_hi, cfg.grid.y_n);
}

} // namespace tryinfo
