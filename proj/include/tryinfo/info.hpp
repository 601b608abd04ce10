#pragma once
#include <tryinfo/dist.hpp>

#include <cstddef>
#include <span>

namespace tryinfo {

/// Shannon entropy -sum p ln p in nats, with 0 ln 0 = 0.
double shannon_entropy(std::span<const double> p);
double shannon_entropy(const Dist1D& d);

/// Discrete entropy shifted by ln(spacing): the grid-independent form
/// that converges under refinement.
double differential_entropy(const Dist1D& d);

double joint_entropy(const JointDist& j);

/// I(X;Y) = sum p(x,y) ln[p(x,y) / (p(x) p(y))], zero-mass cells skipped.
double mutual_information(const JointDist& j);

/// KL divergence in nats. Mass of p on a zero of q makes the divergence
/// infinite; that state is carried explicitly instead of as a float inf.
struct KlResult {
  double nats = 0.0;
  bool infinite = false;
};

KlResult kl_divergence(std::span<const double> p, std::span<const double> q);
KlResult kl_divergence(const Dist1D& p, const Dist1D& q);

/// I(X;Y) recomputed as sum_x p(x) KL[ p(y|x) || p(y) ]; cross-checks
/// mutual_information.
double mi_as_average_kl(const JointDist& j);

/// Mixture-averaged conditional entropies H(X|Y) and H(Y|X).
double conditional_entropy_x_given_y(const JointDist& j);
double conditional_entropy_y_given_x(const JointDist& j);

/// ln-cardinality gain identity for a Bayes update: the entropy drop from
/// the prior to the conditional equals KL[conditional || prior].
/// lhs is ln(support size) - H(cond) for a uniform prior and
/// -H(cond) - <ln prior>_cond otherwise. Throws std::invalid_argument when
/// the conditional has mass outside the prior's support.
struct EntropyReduction {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  bool uniform_prior = true;
};

EntropyReduction entropy_reduction_identity(const Dist1D& cond,
                                            const Dist1D& prior);

/// Residuals of the exact identities every joint table must satisfy.
struct IdentityResiduals {
  double mi_symmetry = 0.0;      // I from (X,Y) vs transposed table
  double chain_rule_x = 0.0;     // I - [H(X) - H(X|Y)]
  double chain_rule_y = 0.0;     // I - [H(Y) - H(Y|X)]
  double avg_kl = 0.0;           // I - average-KL form
  double entropy_reduction = 0.0;
};

struct InfoReport {
  double H_X = 0.0;
  double H_Y = 0.0;
  double H_Y_given_x0 = 0.0;
  double I_XY = 0.0;
  IdentityResiduals identity_residuals;
};

JointDist transpose(const JointDist& j);

/// Computes all summary quantities and the identity residuals for a joint
/// table, its prior, and a fixed detector row.
InfoReport full_report(const JointDist& j, std::size_t x0_index,
                       const Dist1D& prior);

} // namespace tryinfo
