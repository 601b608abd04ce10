#pragma once
#include <tryinfo/config.hpp>
#include <tryinfo/dist.hpp>
#include <tryinfo/kernel.hpp>
#include <tryinfo/sweep.hpp>

#include <string>
#include <vector>

namespace tryinfo {

KernelSpec kernel_from_config(const RunConfig& cfg);
Dist1D prior_from_config(const RunConfig& cfg, const Grid1D& ygrid);
Acceptance acceptance_from_config(const RunConfig& cfg, const Grid1D& xgrid);

/// Reciprocal-pair sweep over the two-path phase parameter: entropies,
/// mutual information, and the entropy-gain identity per beta. Rows are
/// computed in parallel into per-index slots, so the table is identical
/// for any worker count.
SweepTable cmd_sweep_beta(const RunConfig& cfg);

/// Regularized-null tradeoff sweep, one table per background value.
std::vector<SweepTable> cmd_null_sweep(const RunConfig& cfg);

/// Mode-truncation entropy table with a conjugated-matrix cross-check
/// per row.
SweepTable cmd_coherence(const RunConfig& cfg);

struct IdentityCheck {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct IdentityCheckReport {
  std::vector<IdentityCheck> checks;
  bool all_pass = true;
};

/// Runs every exact-identity suite on the configured models. A positive
/// cfg.tolerance overrides each check's own default.
IdentityCheckReport cmd_check_identities(const RunConfig& cfg);

/// Writes the complex kernel table (x, y, re, im, abs2) to path and its
/// parameter metadata to path + ".meta".
void cmd_kernel_dump(const RunConfig& cfg, const std::string& path);

/// Inserts a suffix before the extension: table.csv + b1e-3 ->
/// table_b1e-3.csv.
std::string suffixed_path(const std::string& path, const std::string& suffix);

} // namespace tryinfo
