#include <tryinfo/info.hpp>
#include <tryinfo/nullmodel.hpp>
#include <tryinfo/numeric.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tryinfo {
namespace {

constexpr double pi = 3.14159265358979323846;

} // namespace

void validate(const NullModelSpec& spec) {
  if (!(spec.eps_bar > 0.0)) {
    throw std::invalid_argument("null floor eps_bar must be positive");
  }
  if (!(spec.b > 0.0)) {
    throw std::invalid_argument("background b must be positive");
  }
  if (!(spec.efficiency > 0.0) || spec.efficiency > 1.0) {
    throw std::invalid_argument("efficiency must lie in (0, 1]");
  }
  if (spec.ygrid.n < 2) {
    throw std::invalid_argument("null model needs a grid of at least 2 points");
  }
}

std::vector<double> null_epsilon(const NullModelSpec& spec) {
  validate(spec);
  std::vector<double> eps(spec.ygrid.n);
  for (std::size_t i = 0; i < eps.size(); ++i) {
    const double y = spec.ygrid.point(i);
    eps[i] = spec.eps_bar + spec.curvature * y * y;
  }
  return eps;
}

std::vector<double> null_perturbation(const NullModelSpec& spec) {
  validate(spec);
  std::vector<double> q(spec.ygrid.n);
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double y = spec.ygrid.point(i);
    q[i] = spec.q_sin * std::sin(pi * y) + spec.q_lin * y;
  }
  return q;
}

std::vector<double> null_response_profile(std::span<const double> eps,
                                          std::span<const double> q, double b,
                                          double theta) {
  if (eps.size() != q.size()) {
    throw std::invalid_argument("eps and q tables have different sizes");
  }
  if (!(b >= 0.0)) {
    throw std::invalid_argument("background b must be nonnegative");
  }
  std::vector<double> r(eps.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double a = eps[i] + theta * q[i];
    r[i] = a * a + b;
  }
  return r;
}

std::vector<double> null_response_derivative_profile(
    std::span<const double> eps, std::span<const double> q, double theta) {
  if (eps.size() != q.size()) {
    throw std::invalid_argument("eps and q tables have different sizes");
  }
  std::vector<double> d(eps.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    d[i] = 2.0 * (eps[i] + theta * q[i]) * q[i];
  }
  return d;
}

std::vector<double> null_response(const NullModelSpec& spec) {
  return null_response_profile(null_epsilon(spec), null_perturbation(spec),
                               spec.b, spec.theta);
}

std::vector<double> null_response_derivative(const NullModelSpec& spec) {
  return null_response_derivative_profile(null_epsilon(spec),
                                          null_perturbation(spec), spec.theta);
}

std::vector<double> null_log_derivative_at_null(const NullModelSpec& spec) {
  const std::vector<double> eps = null_epsilon(spec);
  const std::vector<double> q = null_perturbation(spec);
  std::vector<double> s(eps.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    s[i] = 2.0 * eps[i] * q[i] / (eps[i] * eps[i] + spec.b);
  }
  return s;
}

ParamModel null_param_model(const NullModelSpec& spec) {
  validate(spec);
  ParamModel m;
  m.evaluate = [spec](double theta) {
    NullModelSpec s = spec;
    s.theta = theta;
    return null_response(s);
  };
  m.analytic_derivative = [spec](double theta) {
    NullModelSpec s = spec;
    s.theta = theta;
    return null_response_derivative(s);
  };
  return m;
}

FisherReport null_fisher_report(const NullModelSpec& spec, double fd_delta) {
  validate(spec);
  const Dist1D prior = uniform_dist(spec.ygrid);
  return fisher_report(null_param_model(spec), spec.theta, prior, fd_delta,
                       spec.efficiency);
}

std::vector<double> log_spaced(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0) || !(hi > lo)) {
    throw std::invalid_argument("log spacing requires 0 < lo < hi");
  }
  if (n < 2) {
    throw std::invalid_argument("log spacing needs at least 2 points");
  }
  const double llo = std::log(lo);
  const double lhi = std::log(hi);
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(n - 1);
    xs[i] = std::exp(llo + t * (lhi - llo));
  }
  xs.front() = lo;
  xs.back() = hi;
  return xs;
}

SweepTable null_sweep(std::span<const double> eps_values, double b,
                      const Grid1D& ygrid, const NullSweepOptions& opt) {
  if (eps_values.empty()) {
    throw std::invalid_argument("null sweep needs at least one eps value");
  }
  for (std::size_t i = 1; i < eps_values.size(); ++i) {
    if (!(eps_values[i] > eps_values[i - 1])) {
      throw std::invalid_argument("eps values must be strictly increasing");
    }
  }

  const Dist1D prior = uniform_dist(ygrid);
  struct Row {
    double h_cond = 0.0;
    FisherReport rep;
  };
  std::vector<Row> raw(eps_values.size());
  for (std::size_t i = 0; i < eps_values.size(); ++i) {
    NullModelSpec spec;
    spec.eps_bar = eps_values[i];
    spec.b = b;
    spec.curvature = opt.curvature;
    spec.q_sin = opt.q_sin;
    spec.q_lin = opt.q_lin;
    spec.efficiency = opt.efficiency;
    spec.ygrid = ygrid;
    spec.theta = 0.0;
    raw[i].rep = null_fisher_report(spec, opt.fd_delta);
    raw[i].h_cond =
        shannon_entropy(conditional_y_given_x0(null_response(spec), prior));
  }

  double f_max = 0.0;
  double p_max = 0.0;
  double fl_max = 0.0;
  for (const Row& r : raw) {
    f_max = std::max(f_max, r.rep.F_cond);
    p_max = std::max(p_max, r.rep.P_det);
    fl_max = std::max(fl_max, r.rep.F_launch);
  }

  SweepTable t;
  t.command = "null-sweep";
  t.metadata = {
      {"b", format_float(b)},
      {"eps_lo", format_float(eps_values.front())},
      {"eps_hi", format_float(eps_values.back())},
      {"eps_count", std::to_string(eps_values.size())},
      {"grid_y_lo", format_float(ygrid.lo)},
      {"grid_y_hi", format_float(ygrid.hi)},
      {"grid_y_n", std::to_string(ygrid.n)},
      {"curvature", format_float(opt.curvature)},
      {"q_sin", format_float(opt.q_sin)},
      {"q_lin", format_float(opt.q_lin)},
      {"efficiency", format_float(opt.efficiency)},
      {"fd_delta", format_float(opt.fd_delta)},
  };
  t.columns = {"eps_bar", "H_cond",     "F_cond",   "F_cond_norm",
               "P_det",   "P_det_norm", "F_launch", "PF_norm"};
  t.rows.reserve(eps_values.size());
  for (std::size_t i = 0; i < eps_values.size(); ++i) {
    const Row& r = raw[i];
    t.rows.push_back({eps_values[i], r.h_cond, r.rep.F_cond,
                      f_max > 0.0 ? r.rep.F_cond / f_max : 0.0, r.rep.P_det,
                      p_max > 0.0 ? r.rep.P_det / p_max : 0.0, r.rep.F_launch,
                      fl_max > 0.0 ? r.rep.F_launch / fl_max : 0.0});
  }
  validate_table(t);
  return t;
}

} // namespace tryinfo
