#include <doctest.h>

#include <tryinfo/dist.hpp>
#include <tryinfo/numeric.hpp>

#include <stdexcept>
#include <string>

using namespace tryinfo;

namespace {

const Grid1D g4 = make_grid(0.0, 3.0, 4);

bool message_contains(const std::invalid_argument& e, const char* text) {
  return std::string(e.what()).find(text) != std::string::npos;
}

} // namespace

TEST_CASE("dist_from_weights normalizes and validates") {
  const Dist1D d = dist_from_weights(g4, {1.0, 2.0, 3.0, 4.0});
  CHECK(neumaier_total(d.p) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(d.p[3] == doctest::Approx(0.4).epsilon(1e-15));

  CHECK_THROWS_AS(dist_from_weights(g4, {1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(dist_from_weights(g4, {1.0, -0.5, 0.0, 0.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(dist_from_weights(g4, {0.0, 0.0, 0.0, 0.0}),
                  std::invalid_argument);
}

TEST_CASE("uniform_dist carries equal mass") {
  const Dist1D u = uniform_dist(g4);
  for (double p : u.p) CHECK(p == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("normalize_joint keeps the raw weight total") {
  const Grid1D gx = make_grid(0.0, 1.0, 2);
  const Grid1D gy = make_grid(0.0, 1.0, 2);
  const JointDist j = normalize_joint({1.0, 1.0, 1.0, 1.0}, gx, gy);
  CHECK(j.norm_constant == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(j.at(1, 0) == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("an all-zero joint is rejected as degenerate") {
  const Grid1D g2 = make_grid(0.0, 1.0, 2);
  try {
    normalize_joint({0.0, 0.0, 0.0, 0.0}, g2, g2);
    FAIL("expected a throw");
  } catch (const std::invalid_argument& e) {
    CHECK(message_contains(e, "degenerate joint"));
  }
}

TEST_CASE("marginals of a hand table") {
  const Grid1D g2 = make_grid(0.0, 1.0, 2);
  // p = [[0.4, 0.1], [0.2, 0.3]]
  const JointDist j = normalize_joint({0.4, 0.1, 0.2, 0.3}, g2, g2);
  const Dist1D px = marginal_x(j);
  const Dist1D py = marginal_y(j);
  CHECK(px.p[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(px.p[1] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(py.p[0] == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(py.p[1] == doctest::Approx(0.4).epsilon(1e-15));
}

TEST_CASE("Bayes update of a uniform prior by a response row") {
  const Dist1D prior = uniform_dist(g4);
  const Dist1D post = conditional_y_given_x0(
      std::vector<double>{0.0, 1.0, 3.0, 0.0}, prior);
  CHECK(post.p[0] == 0.0);
  CHECK(post.p[1] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(post.p[2] == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("nonuniform prior reweights the posterior") {
  const Dist1D prior = dist_from_weights(g4, {4.0, 1.0, 1.0, 2.0});
  const Dist1D post = conditional_y_given_x0(
      std::vector<double>{1.0, 1.0, 1.0, 1.0}, prior);
  // Flat response returns the prior itself.
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(post.p[i] == doctest::Approx(prior.p[i]).epsilon(1e-15));
  }
}

TEST_CASE("a response with no overlap reports a blind detector") {
  const Dist1D prior = dist_from_weights(g4, {1.0, 1.0, 0.0, 0.0});
  try {
    conditional_y_given_x0(std::vector<double>{0.0, 0.0, 5.0, 5.0}, prior);
    FAIL("expected a throw");
  } catch (const std::invalid_argument& e) {
    CHECK(message_contains(e, "detector sees nothing"));
  }
}

TEST_CASE("conditional_from_joint extracts a normalized row") {
  const Grid1D g2 = make_grid(0.0, 1.0, 2);
  const JointDist j = normalize_joint({0.4, 0.1, 0.2, 0.3}, g2, g2);
  const Dist1D c = conditional_from_joint(j, 0);
  CHECK(c.p[0] == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(c.p[1] == doctest::Approx(0.2).epsilon(1e-15));
  CHECK_THROWS_AS(conditional_from_joint(j, 2), std::invalid_argument);
}

TEST_CASE("snap_detector records requested, snapped, index") {
  const Grid1D g = make_grid(-3.0, 3.0, 512);
  const PointDetector p = snap_detector(g, 0.0);
  CHECK(p.requested == 0.0);
  CHECK(p.index == 256);
  CHECK(p.snapped == doctest::Approx(3.0 / 511.0).epsilon(1e-15));
}

TEST_CASE("acceptance validation") {
  const Grid1D g = make_grid(0.0, 1.0, 4);
  CHECK_NOTHROW(validate_acceptance(full_acceptance(g), g));
  CHECK_NOTHROW(validate_acceptance(snap_detector(g, 0.5), g));

  CHECK_THROWS_AS(
      validate_acceptance(WindowDetector{{1.0, 1.0}}, g),
      std::invalid_argument);
  CHECK_THROWS_AS(
      validate_acceptance(WindowDetector{{1.0, -1.0, 0.0, 0.0}}, g),
      std::invalid_argument);
  CHECK_THROWS_AS(
      validate_acceptance(WindowDetector{{0.0, 0.0, 0.0, 0.0}}, g),
      std::invalid_argument);
  CHECK_THROWS_AS(validate_acceptance(PointDetector{0.0, 0.0, 9}, g),
                  std::invalid_argument);
}
