#include <tryinfo/commands.hpp>
#include <tryinfo/config.hpp>
#include <tryinfo/sweep.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <string>

namespace {

// Exit codes: 0 ok, 1 validation, 2 identity failure, 3 I/O.
constexpr int kOk = 0;
constexpr int kValidation = 1;
constexpr int kIdentity = 2;
constexpr int kIo = 3;

std::string default_out(const std::string& command) {
  if (command == "sweep-beta") return "sweep_beta.csv";
  if (command == "null-sweep") return "null_sweep.csv";
  if (command == "coherence") return "coherence.csv";
  return "kernel.csv";
}

std::string b_suffix(double b) {
  std::string s = "b" + tryinfo::format_float(b);
  for (char& c : s) {
    if (c == '.') c = 'p';
    if (c == '+') c = 'P';
  }
  return s;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Reciprocal source-detector statistics for time-reversed "
      "interferometry: entropy and Fisher sweeps, identity checks, kernel "
      "tables"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string out_path;
  std::size_t grid_n = 0;
  double fd_delta = -1.0;
  double tolerance = -1.0;
  long threads = -1;
  bool stamp = false;

  app.add_option("--config", config_path, "INI config file");
  app.add_option("--out", out_path, "output file path");
  app.add_option("--grid-n", grid_n, "points per axis for both grids");
  app.add_option("--fd-delta", fd_delta, "finite-difference step");
  app.add_option("--tolerance", tolerance,
                 "override per-check tolerances (check-identities)");
  app.add_option("--threads", threads, "worker threads (0 = all cores)");
  app.add_flag("--stamp", stamp, "embed a timestamp in output metadata");

  auto* sweep_beta = app.add_subcommand(
      "sweep-beta", "entropy and mutual-information sweep over beta");
  double beta_lo = 0.0, beta_hi = 0.0, x0 = 0.0;
  std::size_t beta_count = 0;
  auto* beta_lo_opt = sweep_beta->add_option("--beta-lo", beta_lo, "sweep start");
  auto* beta_hi_opt = sweep_beta->add_option("--beta-hi", beta_hi, "sweep end");
  auto* beta_count_opt =
      sweep_beta->add_option("--beta-count", beta_count, "sweep points");
  auto* x0_opt =
      sweep_beta->add_option("--x0", x0, "detector point for conditionals");

  auto* null_sweep = app.add_subcommand(
      "null-sweep", "regularized-null tradeoff sweep over eps_bar");
  std::vector<double> b_values;
  double eps_lo = 0.0, eps_hi = 0.0;
  std::size_t eps_count = 0;
  null_sweep->add_option("--b", b_values, "background values, one table each");
  auto* eps_lo_opt =
      null_sweep->add_option("--eps-lo", eps_lo, "smallest eps_bar");
  auto* eps_hi_opt =
      null_sweep->add_option("--eps-hi", eps_hi, "largest eps_bar");
  auto* eps_count_opt =
      null_sweep->add_option("--eps-count", eps_count, "sweep points");

  auto* coherence = app.add_subcommand(
      "coherence", "mode-truncation entropy table with eigensolver check");
  std::size_t modes = 0, m_lo = 0, m_hi = 0;
  std::uint64_t seed = 0;
  coherence->add_option("--modes", modes, "spectrum size");
  coherence->add_option("--m-lo", m_lo, "smallest truncation");
  coherence->add_option("--m-hi", m_hi, "largest truncation");
  auto* seed_opt =
      coherence->add_option("--seed", seed, "unitary scramble seed");

  auto* check = app.add_subcommand("check-identities",
                                   "run every exact-identity suite");

  auto* dump =
      app.add_subcommand("kernel-dump", "write the kernel table and metadata");
  double dump_beta = 0.0;
  auto* dump_beta_opt =
      dump->add_option("--beta", dump_beta, "two-path phase parameter");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kValidation;
  }

  try {
    tryinfo::RunConfig cfg;
    if (!config_path.empty()) {
      cfg = tryinfo::load_config_file(config_path);
    }
    if (grid_n != 0) {
      cfg.grid.x_n = grid_n;
      cfg.grid.y_n = grid_n;
    }
    if (fd_delta >= 0.0) cfg.fd_delta = fd_delta;
    if (tolerance >= 0.0) cfg.tolerance = tolerance;
    if (threads >= 0) cfg.threads = static_cast<unsigned>(threads);
    if (stamp) cfg.stamp = true;
    if (!out_path.empty()) cfg.out = out_path;

    if (sweep_beta->parsed()) {
      if (beta_lo_opt->count() > 0) cfg.beta_sweep.beta_lo = beta_lo;
      if (beta_hi_opt->count() > 0) cfg.beta_sweep.beta_hi = beta_hi;
      if (beta_count_opt->count() > 0) cfg.beta_sweep.beta_count = beta_count;
      if (x0_opt->count() > 0) cfg.detector.x0 = x0;
      const tryinfo::SweepTable t = tryinfo::cmd_sweep_beta(cfg);
      const std::string path =
          cfg.out.empty() ? default_out("sweep-beta") : cfg.out;
      tryinfo::write_csv_file(t, path);
      std::printf("wrote %zu rows to %s\n", t.rows.size(), path.c_str());
      return kOk;
    }

    if (null_sweep->parsed()) {
      if (!b_values.empty()) cfg.null.b_values = b_values;
      if (eps_lo_opt->count() > 0) cfg.null.eps_lo = eps_lo;
      if (eps_hi_opt->count() > 0) cfg.null.eps_hi = eps_hi;
      if (eps_count_opt->count() > 0) cfg.null.eps_count = eps_count;
      const auto tables = tryinfo::cmd_null_sweep(cfg);
      const std::string base =
          cfg.out.empty() ? default_out("null-sweep") : cfg.out;
      for (std::size_t i = 0; i < tables.size(); ++i) {
        const std::string path =
            tables.size() == 1
                ? base
                : tryinfo::suffixed_path(base,
                                         b_suffix(cfg.null.b_values[i]));
        tryinfo::write_csv_file(tables[i], path);
        std::printf("wrote %zu rows to %s\n", tables[i].rows.size(),
                    path.c_str());
      }
      return kOk;
    }

    if (coherence->parsed()) {
      if (modes != 0) {
        cfg.coherence.n = modes;
        if (m_hi == 0 && cfg.coherence.m_hi > modes) {
          cfg.coherence.m_hi = modes;
        }
      }
      if (m_lo != 0) cfg.coherence.m_lo = m_lo;
      if (m_hi != 0) cfg.coherence.m_hi = m_hi;
      if (seed_opt->count() > 0) cfg.coherence.seed = seed;
      if (cfg.coherence.m_hi > cfg.coherence.n) {
        cfg.coherence.m_hi = cfg.coherence.n;
      }
      const tryinfo::SweepTable t = tryinfo::cmd_coherence(cfg);
      const std::string path =
          cfg.out.empty() ? default_out("coherence") : cfg.out;
      tryinfo::write_csv_file(t, path);
      std::printf("wrote %zu rows to %s\n", t.rows.size(), path.c_str());
      return kOk;
    }

    if (check->parsed()) {
      const tryinfo::IdentityCheckReport rep =
          tryinfo::cmd_check_identities(cfg);
      for (const tryinfo::IdentityCheck& c : rep.checks) {
        std::printf("[%s] %-24s residual=%.3e tolerance=%.3e\n",
                    c.pass ? "PASS" : "FAIL", c.name.c_str(), c.residual,
                    c.tolerance);
      }
      std::printf("%zu checks, %s\n", rep.checks.size(),
                  rep.all_pass ? "all passed" : "FAILURES PRESENT");
      return rep.all_pass ? kOk : kIdentity;
    }

    if (dump->parsed()) {
      if (dump_beta_opt->count() > 0) cfg.kernel.beta = dump_beta;
      const std::string path =
          cfg.out.empty() ? default_out("kernel-dump") : cfg.out;
      tryinfo::cmd_kernel_dump(cfg, path);
      std::printf("wrote kernel table to %s and metadata to %s.meta\n",
                  path.c_str(), path.c_str());
      return kOk;
    }

    std::fprintf(stderr, "no subcommand selected\n");
    return kValidation;
  } catch (const tryinfo::IoError& e) {
    std::fprintf(stderr, "io error: %s\n", e.what());
    return kIo;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kValidation;
  }
}
