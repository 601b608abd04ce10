#include <doctest.h>

#include <tryinfo/info.hpp>
#include <tryinfo/nullmodel.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

using namespace tryinfo;

namespace {

constexpr double pi = 3.14159265358979323846;

NullModelSpec coarse_spec() {
  NullModelSpec s;
  s.ygrid = Grid1D{-1.0, 1.0, 5};
  return s;
}

} // namespace

TEST_CASE("spec validation enforces positivity") {
  NullModelSpec s;
  CHECK_NOTHROW(validate(s));
  s.eps_bar = 0.0;
  CHECK_THROWS_AS(validate(s), std::invalid_argument);
  s = NullModelSpec{};
  s.b = 0.0;
  CHECK_THROWS_AS(validate(s), std::invalid_argument);
  s = NullModelSpec{};
  s.efficiency = 0.0;
  CHECK_THROWS_AS(validate(s), std::invalid_argument);
  s.efficiency = 1.5;
  CHECK_THROWS_AS(validate(s), std::invalid_argument);
}

TEST_CASE("null floor and perturbation take their defining values") {
  const NullModelSpec s = coarse_spec();
  const std::vector<double> eps = null_epsilon(s);
  const std::vector<double> q = null_perturbation(s);
  REQUIRE(eps.size() == 5);
  // Grid points are -1, -0.5, 0, 0.5, 1.
  CHECK(eps[2] == doctest::Approx(0.05).epsilon(1e-15));
  CHECK(eps[4] == doctest::Approx(0.05 + 0.12).epsilon(1e-15));
  CHECK(eps[0] == doctest::Approx(eps[4]).epsilon(1e-15));
  CHECK(q[2] == 0.0);
  CHECK(q[4] == doctest::Approx(std::sin(pi) + 0.35).epsilon(1e-12));
  CHECK(q[3] == doctest::Approx(1.0 + 0.175).epsilon(1e-12));
  CHECK(q[0] == doctest::Approx(-q[4]).epsilon(1e-12));
}

TEST_CASE("response assembles floor, signal, and background") {
  NullModelSpec s = coarse_spec();
  s.theta = 0.2;
  const std::vector<double> eps = null_epsilon(s);
  const std::vector<double> q = null_perturbation(s);
  const std::vector<double> r = null_response(s);
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double e = eps[i] + s.theta * q[i];
    CHECK(r[i] == doctest::Approx(e * e + s.b).epsilon(1e-14));
  }
  // Profile form is the same computation.
  const std::vector<double> rp = null_response_profile(eps, q, s.b, s.theta);
  for (std::size_t i = 0; i < r.size(); ++i) CHECK(r[i] == rp[i]);
}

TEST_CASE("response derivative is exact for the quadratic family") {
  // R is quadratic in theta, so the central difference equals the analytic
  // derivative up to rounding at any step size.
  NullModelSpec s = coarse_spec();
  s.theta = 0.1;
  const ParamModel m = null_param_model(s);
  CHECK(fd_vs_analytic_max_rel_error(m, s.theta, 1e-3) < 1e-10);
  CHECK(fd_vs_analytic_max_rel_error(m, s.theta, 1e-6) < 1e-7);

  const std::vector<double> d = null_response_derivative(s);
  const std::vector<double> eps = null_epsilon(s);
  const std::vector<double> q = null_perturbation(s);
  for (std::size_t i = 0; i < d.size(); ++i) {
    CHECK(d[i] == doctest::Approx(2.0 * (eps[i] + s.theta * q[i]) * q[i])
                      .epsilon(1e-14));
  }
}

TEST_CASE("log derivative at the null matches response and derivative") {
  const NullModelSpec s = coarse_spec();
  const std::vector<double> ld = null_log_derivative_at_null(s);
  const std::vector<double> r = null_response(s);
  const std::vector<double> d = null_response_derivative(s);
  for (std::size_t i = 0; i < ld.size(); ++i) {
    CHECK(ld[i] == doctest::Approx(d[i] / r[i]).epsilon(1e-13));
  }
}

TEST_CASE("common-mode perturbation carries no information at zero floor") {
  // q proportional to eps only rescales the response when b = 0, so the
  // score is constant and its variance vanishes.
  const Grid1D g{-1.0, 1.0, 201};
  NullModelSpec s;
  s.ygrid = g;
  const std::vector<double> eps = null_epsilon(s);
  std::vector<double> q(eps.size());
  for (std::size_t i = 0; i < q.size(); ++i) q[i] = 0.37 * eps[i];
  const Dist1D prior = uniform_dist(g);
  for (double theta : {0.0, 0.1}) {
    const std::vector<double> r = null_response_profile(eps, q, 0.0, theta);
    const std::vector<double> d =
        null_response_derivative_profile(eps, q, theta);
    CHECK(try_fisher(r, d, prior) < 1e-24);
  }
}

TEST_CASE("proportional response perturbation is invisible at any floor") {
  // dR = c R directly: the log-derivative is constant even with b > 0.
  const Grid1D g{-1.0, 1.0, 201};
  NullModelSpec s;
  s.ygrid = g;
  const std::vector<double> r = null_response(s);
  std::vector<double> d(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) d[i] = 0.37 * r[i];
  const Dist1D prior = uniform_dist(g);
  CHECK(try_fisher(r, d, prior) < 1e-28);
}

TEST_CASE("log spacing pins endpoints and keeps a constant ratio") {
  const std::vector<double> v = log_spaced(0.005, 0.35, 7);
  REQUIRE(v.size() == 7);
  CHECK(v.front() == 0.005);
  CHECK(v.back() == 0.35);
  const double ratio = v[1] / v[0];
  for (std::size_t i = 1; i < v.size(); ++i) {
    CHECK(v[i] > v[i - 1]);
    CHECK(v[i] / v[i - 1] == doctest::Approx(ratio).epsilon(1e-12));
  }
  CHECK_THROWS_AS(log_spaced(0.0, 1.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(log_spaced(2.0, 1.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(log_spaced(1.0, 2.0, 1), std::invalid_argument);
}

TEST_CASE("deeper nulls trade detection rate for information") {
  const Grid1D g{-1.0, 1.0, 201};
  const std::vector<double> eps = log_spaced(0.005, 0.35, 12);
  const SweepTable t = null_sweep(eps, 1e-3, g);
  REQUIRE(t.rows.size() == 12);
  REQUIRE(t.columns.size() == 8);
  CHECK(t.columns[0] == "eps_bar");
  CHECK(t.columns[1] == "H_cond");
  CHECK(t.columns[2] == "F_cond");
  CHECK(t.columns[4] == "P_det");

  for (std::size_t i = 1; i < t.rows.size(); ++i) {
    CHECK(t.rows[i][0] > t.rows[i - 1][0]);  // eps_bar ascending
    CHECK(t.rows[i][1] > t.rows[i - 1][1]);  // H_cond rises
    CHECK(t.rows[i][2] < t.rows[i - 1][2]);  // F_cond falls
    CHECK(t.rows[i][4] > t.rows[i - 1][4]);  // P_det rises
  }

  // Normalized columns peak at exactly 1.
  double fmax = 0.0, pmax = 0.0, pfmax = 0.0;
  for (const auto& row : t.rows) {
    fmax = std::max(fmax, row[3]);
    pmax = std::max(pmax, row[5]);
    pfmax = std::max(pfmax, row[7]);
  }
  CHECK(fmax == 1.0);
  CHECK(pmax == 1.0);
  CHECK(pfmax == 1.0);
}

TEST_CASE("smaller backgrounds sharpen the same null") {
  const Grid1D g{-1.0, 1.0, 201};
  NullModelSpec s;
  s.ygrid = g;
  s.eps_bar = 0.01;
  double prev = std::numeric_limits<double>::infinity();
  for (double b : {1e-4, 1e-3, 1e-2}) {
    s.b = b;
    const FisherReport rep = null_fisher_report(s, 1e-5);
    CHECK(rep.F_cond < prev);
    prev = rep.F_cond;
  }
}

TEST_CASE("detection rate is stationary at the symmetric null") {
  // eps is even and q odd on the symmetric grid, so dP integrates to zero
  // at theta = 0.
  NullModelSpec s;
  const FisherReport rep = null_fisher_report(s, 1e-5);
  CHECK(std::abs(rep.dP_det) < 1e-15);
  CHECK(rep.P_det > 0.0);
  CHECK(rep.P_det < 1.0);
  CHECK(std::abs(rep.score_mean_residual) < 1e-14);
  CHECK(rep.F_launch ==
        doctest::Approx(launched_fisher(rep.P_det, rep.dP_det, rep.F_cond))
            .epsilon(1e-13));
  // With dP ~ 0 the launched information is the gated conditional one.
  CHECK(rep.F_launch == doctest::Approx(rep.P_det * rep.F_cond).epsilon(1e-9));
}

TEST_CASE("sweep table carries its generating parameters") {
  const Grid1D g{-1.0, 1.0, 51};
  const std::vector<double> eps = log_spaced(0.01, 0.1, 4);
  const SweepTable t = null_sweep(eps, 1e-3, g);
  bool saw_b = false;
  for (const auto& [k, v] : t.metadata) {
    if (k == "b") {
      saw_b = true;
      CHECK(v == format_float(1e-3));
    }
  }
  CHECK(saw_b);
  CHECK_THROWS_AS(null_sweep(std::vector<double>{0.1, 0.05}, 1e-3, g),
                  std::invalid_argument);
}
