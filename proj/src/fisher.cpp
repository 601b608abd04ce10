#include <tryinfo/fisher.hpp>
#include <tryinfo/info.hpp>
#include <tryinfo/numeric.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace tryinfo {
namespace {

void check_sizes(std::span<const double> response,
                 std::span<const double> derivative, const Dist1D& prior) {
  if (response.size() != prior.p.size() ||
      derivative.size() != prior.p.size()) {
    throw std::invalid_argument(
        "response, derivative and prior sizes disagree: " +
        std::to_string(response.size()) + ", " +
        std::to_string(derivative.size()) + ", " +
        std::to_string(prior.p.size()));
  }
  for (std::size_t i = 0; i < response.size(); ++i) {
    if (!(response[i] >= 0.0)) {
      throw std::invalid_argument("response has a negative or non-finite "
                                  "entry at index " +
                                  std::to_string(i));
    }
  }
}

// Posterior weights pi r / Z and the posterior mean of d/r. Points with
// pi r = 0 never occur and are skipped; a nonzero derivative where the
// response vanishes (on the prior's support) is a genuine singularity.
struct ScoreContext {
  std::vector<double> posterior;
  double mean = 0.0;
};

ScoreContext score_context(std::span<const double> response,
                           std::span<const double> derivative,
                           const Dist1D& prior) {
  check_sizes(response, derivative, prior);
  const std::size_t n = prior.p.size();
  ScoreContext ctx;
  ctx.posterior.assign(n, 0.0);
  NeumaierSum z;
  for (std::size_t i = 0; i < n; ++i) {
    if (prior.p[i] > 0.0 && response[i] == 0.0 && derivative[i] != 0.0) {
      throw std::invalid_argument(
          "score singular at null: derivative is nonzero where the response "
          "vanishes (index " +
          std::to_string(i) + ")");
    }
    ctx.posterior[i] = prior.p[i] * response[i];
    z.add(ctx.posterior[i]);
  }
  const double total = z.value();
  if (total <= 0.0) {
    throw std::invalid_argument(
        "detector sees nothing: response is zero on the prior's support");
  }
  NeumaierSum mean;
  for (std::size_t i = 0; i < n; ++i) {
    ctx.posterior[i] /= total;
    if (ctx.posterior[i] > 0.0) {
      mean.add(ctx.posterior[i] * (derivative[i] / response[i]));
    }
  }
  ctx.mean = mean.value();
  return ctx;
}

} // namespace

double default_fd_delta(double theta, double base) {
  return base * std::max(1.0, std::abs(theta));
}

std::vector<double> fd_derivative(const ParamModel& model, double theta,
                                  double delta) {
  if (!model.evaluate) {
    throw std::invalid_argument("model has no evaluate function");
  }
  if (!(delta > 0.0)) {
    throw std::invalid_argument("finite-difference step must be positive");
  }
  if (theta - delta < model.domain_lo || theta + delta > model.domain_hi) {
    throw std::invalid_argument(
        "finite-difference stencil leaves the model domain at theta = " +
        std::to_string(theta));
  }
  const std::vector<double> hi = model.evaluate(theta + delta);
  const std::vector<double> lo = model.evaluate(theta - delta);
  if (hi.size() != lo.size()) {
    throw std::invalid_argument("model returned tables of different sizes");
  }
  std::vector<double> d(hi.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    d[i] = (hi[i] - lo[i]) / (2.0 * delta);
  }
  return d;
}

double fd_vs_analytic_max_rel_error(const ParamModel& model, double theta,
                                    double delta) {
  if (!model.analytic_derivative) {
    throw std::invalid_argument("model has no analytic derivative");
  }
  const std::vector<double> fd = fd_derivative(model, theta, delta);
  const std::vector<double> an = model.analytic_derivative(theta);
  if (fd.size() != an.size()) {
    throw std::invalid_argument("model returned tables of different sizes");
  }
  double scale = 0.0;
  for (double v : an) scale = std::max(scale, std::abs(v));
  double worst = 0.0;
  for (std::size_t i = 0; i < fd.size(); ++i) {
    worst = std::max(worst, std::abs(fd[i] - an[i]));
  }
  return scale > 0.0 ? worst / scale : worst;
}

std::vector<double> try_score(std::span<const double> response,
                              std::span<const double> derivative,
                              const Dist1D& prior) {
  const ScoreContext ctx = score_context(response, derivative, prior);
  std::vector<double> s(prior.p.size(), 0.0);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (ctx.posterior[i] > 0.0) {
      s[i] = derivative[i] / response[i] - ctx.mean;
    }
  }
  return s;
}

double try_fisher(std::span<const double> response,
                  std::span<const double> derivative, const Dist1D& prior) {
  const ScoreContext ctx = score_context(response, derivative, prior);
  NeumaierSum f;
  for (std::size_t i = 0; i < prior.p.size(); ++i) {
    if (ctx.posterior[i] > 0.0) {
      const double s = derivative[i] / response[i] - ctx.mean;
      f.add(ctx.posterior[i] * s * s);
    }
  }
  return f.value();
}

double score_mean_residual(std::span<const double> response,
                           std::span<const double> derivative,
                           const Dist1D& prior) {
  const ScoreContext ctx = score_context(response, derivative, prior);
  NeumaierSum m;
  for (std::size_t i = 0; i < prior.p.size(); ++i) {
    if (ctx.posterior[i] > 0.0) {
      m.add(ctx.posterior[i] * (derivative[i] / response[i] - ctx.mean));
    }
  }
  return std::abs(m.value());
}

double std_fisher(std::span<const double> intensity,
                  std::span<const double> derivative, const Acceptance& acc,
                  const Grid1D& xgrid) {
  validate_acceptance(acc, xgrid);
  if (std::holds_alternative<PointDetector>(acc)) {
    return 0.0;
  }
  const auto& win = std::get<WindowDetector>(acc);
  const Dist1D weight = dist_from_weights(xgrid, win.eta);
  return try_fisher(intensity, derivative, weight);
}

double detection_probability(std::span<const double> response,
                             const Dist1D& prior, double efficiency) {
  if (response.size() != prior.p.size()) {
    throw std::invalid_argument("response size " +
                                std::to_string(response.size()) +
                                " does not match prior size " +
                                std::to_string(prior.p.size()));
  }
  if (!(efficiency > 0.0) || efficiency > 1.0) {
    throw std::invalid_argument("efficiency must lie in (0, 1]");
  }
  NeumaierSum s;
  for (std::size_t i = 0; i < response.size(); ++i) {
    s.add(prior.p[i] * response[i]);
  }
  const double p = efficiency * s.value();
  if (p > 1.0) {
    throw std::invalid_argument("detection probability exceeds 1: response "
                                "is not a valid per-event probability");
  }
  return p;
}

double launched_fisher(double p_det, double dp_det, double f_cond) {
  if (!(p_det > 0.0) || !(p_det < 1.0)) {
    throw std::invalid_argument("degenerate detection channel: P_det = " +
                                std::to_string(p_det));
  }
  if (!(f_cond >= 0.0)) {
    throw std::invalid_argument("conditional Fisher information must be "
                                "nonnegative");
  }
  return p_det * f_cond + dp_det * dp_det / (p_det * (1.0 - p_det));
}

double launched_fisher_direct(std::span<const double> response,
                              std::span<const double> derivative,
                              const Dist1D& prior, double efficiency) {
  const double p_det = detection_probability(response, prior, efficiency);
  if (!(p_det > 0.0) || !(p_det < 1.0)) {
    throw std::invalid_argument("degenerate detection channel: P_det = " +
                                std::to_string(p_det));
  }
  NeumaierSum dp;
  for (std::size_t i = 0; i < response.size(); ++i) {
    dp.add(prior.p[i] * derivative[i]);
  }
  const double dp_det = efficiency * dp.value();

  // Score of the detection outcome at y_j is d_j / r_j; prior and
  // efficiency cancel in the log.
  NeumaierSum f;
  for (std::size_t i = 0; i < response.size(); ++i) {
    const double mass = efficiency * prior.p[i] * response[i];
    if (mass > 0.0) {
      const double s = derivative[i] / response[i];
      f.add(mass * s * s);
    } else if (prior.p[i] > 0.0 && derivative[i] != 0.0) {
      throw std::invalid_argument(
          "score singular at null: derivative is nonzero where the response "
          "vanishes (index " +
          std::to_string(i) + ")");
    }
  }
  return f.value() + dp_det * dp_det / (1.0 - p_det);
}

double fisher_from_kl(const Dist1D& p, const Dist1D& p_shifted, double delta) {
  if (!(delta != 0.0)) {
    throw std::invalid_argument("curvature step must be nonzero");
  }
  const KlResult kl = kl_divergence(p, p_shifted);
  if (kl.infinite) {
    throw std::invalid_argument(
        "shifted distribution loses support: KL curvature is undefined");
  }
  return 2.0 * kl.nats / (delta * delta);
}

FisherReport fisher_report(const ParamModel& model, double theta,
                           const Dist1D& prior, double fd_delta,
                           double efficiency) {
  if (!model.evaluate) {
    throw std::invalid_argument("model has no evaluate function");
  }
  FisherReport rep;
  rep.fd_delta = fd_delta;
  const std::vector<double> r = model.evaluate(theta);
  const std::vector<double> d = model.analytic_derivative
                                    ? model.analytic_derivative(theta)
                                    : fd_derivative(model, theta, fd_delta);
  rep.F_try = try_fisher(r, d, prior);
  rep.F_cond = rep.F_try;
  rep.score_mean_residual = score_mean_residual(r, d, prior);
  rep.P_det = detection_probability(r, prior, efficiency);
  NeumaierSum dp;
  for (std::size_t i = 0; i < d.size(); ++i) dp.add(prior.p[i] * d[i]);
  rep.dP_det = efficiency * dp.value();
  rep.F_launch = launched_fisher(rep.P_det, rep.dP_det, rep.F_cond);
  return rep;
}

} // namespace tryinfo
