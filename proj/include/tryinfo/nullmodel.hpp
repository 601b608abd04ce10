#pragma once
#include <tryinfo/fisher.hpp>
#include <tryinfo/grid.hpp>
#include <tryinfo/sweep.hpp>

#include <cstddef>
#include <span>
#include <vector>

namespace tryinfo {

/// Near-null interferometer response on a source grid. The regularized
/// null floor eps(y) = eps_bar + curvature * y^2 keeps the response
/// strictly positive; the signal perturbation is
/// q(y) = q_sin * sin(pi y) + q_lin * y, entering as
/// R(y) = (eps(y) + theta q(y))^2 + b with background b > 0.
struct NullModelSpec {
  double eps_bar = 0.05;
  double b = 1e-3;
  double curvature = 0.12;
  double q_sin = 1.0;
  double q_lin = 0.35;
  Grid1D ygrid{-1.0, 1.0, 201};
  double theta = 0.0;
  double efficiency = 1.0;
};

/// Requires eps_bar > 0, b > 0, efficiency in (0, 1].
void validate(const NullModelSpec& spec);

std::vector<double> null_epsilon(const NullModelSpec& spec);
std::vector<double> null_perturbation(const NullModelSpec& spec);
std::vector<double> null_response(const NullModelSpec& spec);

/// dR/dtheta = 2 (eps + theta q) q, exact.
std::vector<double> null_response_derivative(const NullModelSpec& spec);

/// Log-derivative of the response at theta = 0:
/// 2 eps(y) q(y) / (eps(y)^2 + b).
std::vector<double> null_log_derivative_at_null(const NullModelSpec& spec);

/// Profile-level forms for custom eps(y), q(y) tables (b = 0 is allowed
/// here; the spec-level constructor keeps b > 0).
std::vector<double> null_response_profile(std::span<const double> eps,
                                          std::span<const double> q, double b,
                                          double theta);
std::vector<double> null_response_derivative_profile(
    std::span<const double> eps, std::span<const double> q, double theta);

/// Response family in theta with the analytic derivative attached.
ParamModel null_param_model(const NullModelSpec& spec);

/// Source-side Fisher summary of the model at its theta.
FisherReport null_fisher_report(const NullModelSpec& spec, double fd_delta);

/// n points spaced evenly in log between lo and hi, requiring 0 < lo < hi.
std::vector<double> log_spaced(double lo, double hi, std::size_t n);

struct NullSweepOptions {
  double curvature = 0.12;
  double q_sin = 1.0;
  double q_lin = 0.35;
  double efficiency = 1.0;
  double fd_delta = 1e-5;
};

/// Sweeps eps_bar at fixed b over the regularized-null tradeoff. Columns:
/// eps_bar, H_cond, F_cond, F_cond_norm, P_det, P_det_norm, F_launch,
/// PF_norm (norms are relative to the row with the largest raw value).
SweepTable null_sweep(std::span<const double> eps_values, double b,
                      const Grid1D& ygrid, const NullSweepOptions& opt = {});

} // namespace tryinfo
