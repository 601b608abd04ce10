#include <tryinfo/info.hpp>
#include <tryinfo/numeric.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace tryinfo {

double shannon_entropy(std::span<const double> p) {
  NeumaierSum s;
  for (double v : p) {
    if (v > 0.0) s.add(-v * std::log(v));
  }
  return s.value();
}

double shannon_entropy(const Dist1D& d) { return shannon_entropy(d.p); }

double differential_entropy(const Dist1D& d) {
  return shannon_entropy(d.p) + std::log(d.grid.spacing());
}

double joint_entropy(const JointDist& j) { return shannon_entropy(j.p); }

double mutual_information(const JointDist& j) {
  const Dist1D px = marginal_x(j);
  const Dist1D py = marginal_y(j);
  NeumaierSum s;
  for (std::size_t ix = 0; ix < j.xgrid.n; ++ix) {
    for (std::size_t iy = 0; iy < j.ygrid.n; ++iy) {
      const double v = j.at(ix, iy);
      if (v > 0.0) s.add(v * std::log(v / (px.p[ix] * py.p[iy])));
    }
  }
  return s.value();
}

KlResult kl_divergence(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) {
    throw std::invalid_argument("KL arguments have sizes " +
                                std::to_string(p.size()) + " and " +
                                std::to_string(q.size()));
  }
  NeumaierSum s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) {
      if (q[i] <= 0.0) return KlResult{0.0, true};
      s.add(p[i] * std::log(p[i] / q[i]));
    }
  }
  return KlResult{s.value(), false};
}

KlResult kl_divergence(const Dist1D& p, const Dist1D& q) {
  return kl_divergence(std::span<const double>(p.p),
                       std::span<const double>(q.p));
}

double mi_as_average_kl(const JointDist& j) {
  const Dist1D px = marginal_x(j);
  const Dist1D py = marginal_y(j);
  NeumaierSum s;
  std::vector<double> row(j.ygrid.n);
  for (std::size_t ix = 0; ix < j.xgrid.n; ++ix) {
    if (px.p[ix] <= 0.0) continue;
    for (std::size_t iy = 0; iy < j.ygrid.n; ++iy) {
      row[iy] = j.at(ix, iy) / px.p[ix];
    }
    const KlResult kl = kl_divergence(row, py.p);
    if (kl.infinite) {
      throw std::invalid_argument(
          "conditional has mass outside the marginal's support");
    }
    s.add(px.p[ix] * kl.nats);
  }
  return s.value();
}

double conditional_entropy_y_given_x(const JointDist& j) {
  // H(Y|X) = H(X,Y) - H(X), evaluated directly as the mixture average.
  const Dist1D px = marginal_x(j);
  NeumaierSum s;
  for (std::size_t ix = 0; ix < j.xgrid.n; ++ix) {
    if (px.p[ix] <= 0.0) continue;
    NeumaierSum h;
    for (std::size_t iy = 0; iy < j.ygrid.n; ++iy) {
      const double c = j.at(ix, iy) / px.p[ix];
      if (c > 0.0) h.add(-c * std::log(c));
    }
    s.add(px.p[ix] * h.value());
  }
  return s.value();
}

JointDist transpose(const JointDist& j) {
  JointDist t{j.ygrid, j.xgrid, std::vector<double>(j.p.size()),
              j.norm_constant};
  for (std::size_t ix = 0; ix < j.xgrid.n; ++ix) {
    for (std::size_t iy = 0; iy < j.ygrid.n; ++iy) {
      t.p[iy * j.xgrid.n + ix] = j.at(ix, iy);
    }
  }
  return t;
}

double conditional_entropy_x_given_y(const JointDist& j) {
  return conditional_entropy_y_given_x(transpose(j));
}

EntropyReduction entropy_reduction_identity(const Dist1D& cond,
                                            const Dist1D& prior) {
  if (cond.p.size() != prior.p.size()) {
    throw std::invalid_argument("conditional size " +
                                std::to_string(cond.p.size()) +
                                " does not match prior size " +
                                std::to_string(prior.p.size()));
  }
  const KlResult kl = kl_divergence(cond, prior);
  if (kl.infinite) {
    throw std::invalid_argument(
        "conditional has mass outside the prior's support");
  }
  EntropyReduction r;
  r.rhs = kl.nats;

  const double uniform_value = 1.0 / static_cast<double>(prior.p.size());
  r.uniform_prior = true;
  for (double v : prior.p) {
    if (std::abs(v - uniform_value) > 1e-12 * uniform_value) {
      r.uniform_prior = false;
      break;
    }
  }

  const double h_cond = shannon_entropy(cond);
  if (r.uniform_prior) {
    r.lhs = std::log(static_cast<double>(prior.p.size())) - h_cond;
  } else {
    NeumaierSum avg_log_prior;
    for (std::size_t i = 0; i < cond.p.size(); ++i) {
      if (cond.p[i] > 0.0) avg_log_prior.add(cond.p[i] * std::log(prior.p[i]));
    }
    r.lhs = -h_cond - avg_log_prior.value();
  }
  r.residual = std::abs(r.lhs - r.rhs);
  return r;
}

InfoReport full_report(const JointDist& j, std::size_t x0_index,
                       const Dist1D& prior) {
  InfoReport rep;
  const Dist1D px = marginal_x(j);
  const Dist1D py = marginal_y(j);
  rep.H_X = shannon_entropy(px);
  rep.H_Y = shannon_entropy(py);
  rep.I_XY = mutual_information(j);

  const Dist1D cond = conditional_from_joint(j, x0_index);
  rep.H_Y_given_x0 = shannon_entropy(cond);

  IdentityResiduals& res = rep.identity_residuals;
  res.mi_symmetry = std::abs(rep.I_XY - mutual_information(transpose(j)));
  res.chain_rule_x =
      std::abs(rep.I_XY - (rep.H_X - conditional_entropy_x_given_y(j)));
  res.chain_rule_y =
      std::abs(rep.I_XY - (rep.H_Y - conditional_entropy_y_given_x(j)));
  res.avg_kl = std::abs(rep.I_XY - mi_as_average_kl(j));
  res.entropy_reduction = entropy_reduction_identity(cond, prior).residual;
  return rep;
}

} // namespace tryinfo
