#pragma once
#include <tryinfo/dist.hpp>

#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace tryinfo {

/// One-parameter response family over a fixed grid. evaluate returns the
/// nonnegative response table at a parameter value; analytic_derivative is
/// optional and, when absent, finite differences stand in for it.
struct ParamModel {
  std::function<std::vector<double>(double)> evaluate;
  std::function<std::vector<double>(double)> analytic_derivative;
  double domain_lo = -std::numeric_limits<double>::infinity();
  double domain_hi = std::numeric_limits<double>::infinity();
};

/// Step used by the central difference: base * max(1, |theta|).
double default_fd_delta(double theta, double base = 1e-5);

/// Central-difference derivative of the response table. Throws when the
/// stencil would leave the model's domain.
std::vector<double> fd_derivative(const ParamModel& model, double theta,
                                  double delta);

/// Sup-norm relative disagreement between the analytic derivative and the
/// central difference at theta.
double fd_vs_analytic_max_rel_error(const ParamModel& model, double theta,
                                    double delta);

/// Centered log-derivative of the conditional under the prior: the score
/// of the source-side distribution for a detected event. Points where both
/// response and derivative vanish are excluded (score 0); a nonzero
/// derivative on a vanishing response has no finite score and throws
/// "score singular at null".
std::vector<double> try_score(std::span<const double> response,
                              std::span<const double> derivative,
                              const Dist1D& prior);

/// Variance of the score under the detected-event conditional.
double try_fisher(std::span<const double> response,
                  std::span<const double> derivative, const Dist1D& prior);

/// Residual of the zero-mean score invariant. Near machine epsilon by
/// construction; reported so it can be asserted.
double score_mean_residual(std::span<const double> response,
                           std::span<const double> derivative,
                           const Dist1D& prior);

/// Detector-plane Fisher information of the acceptance-weighted intensity
/// distribution. A point detector has a deterministic outcome and carries
/// zero information.
double std_fisher(std::span<const double> intensity,
                  std::span<const double> derivative, const Acceptance& acc,
                  const Grid1D& xgrid);

/// Expected detection probability sum_y prior(y) response(y) * efficiency.
double detection_probability(std::span<const double> response,
                             const Dist1D& prior, double efficiency = 1.0);

/// Per-launched-event information: conditional source information gated by
/// the detection channel, F = P F_cond + (dP)^2 / (P (1 - P)). Requires
/// 0 < P < 1, else "degenerate detection channel".
double launched_fisher(double p_det, double dp_det, double f_cond);

/// Full launched-event Fisher computed directly on the outcome space
/// {no detection} + {detection at y_j}; equals launched_fisher exactly
/// and serves as its independent cross-check.
double launched_fisher_direct(std::span<const double> response,
                              std::span<const double> derivative,
                              const Dist1D& prior, double efficiency = 1.0);

/// Curvature estimate 2 KL[p || p_shifted] / delta^2; approaches the
/// Fisher information as delta -> 0.
double fisher_from_kl(const Dist1D& p, const Dist1D& p_shifted, double delta);

struct FisherReport {
  double F_try = 0.0;
  double F_std = 0.0;   // filled by detector-plane callers
  double F_cond = 0.0;  // equals F_try: both are the per-detection Fisher
  double P_det = 0.0;
  double dP_det = 0.0;
  double F_launch = 0.0;
  double score_mean_residual = 0.0;
  double fd_delta = 0.0;
};

/// Evaluates a model at theta and assembles the source-side quantities.
/// The derivative is analytic when the model provides one, otherwise a
/// central difference with the given step.
FisherReport fisher_report(const ParamModel& model, double theta,
                           const Dist1D& prior, double fd_delta,
                           double efficiency = 1.0);

} // namespace tryinfo
