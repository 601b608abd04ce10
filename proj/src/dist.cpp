#include <tryinfo/dist.hpp>
#include <tryinfo/numeric.hpp>

#include <stdexcept>
#include <string>
#include <utility>

namespace tryinfo {
namespace {

void check_weights(std::span<const double> w, const char* what) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!(w[i] >= 0.0)) {
      throw std::invalid_argument(std::string(what) + " has a negative or "
                                  "non-finite entry at index " +
                                  std::to_string(i));
    }
  }
}

} // namespace

Dist1D dist_from_weights(const Grid1D& grid, std::vector<double> weights) {
  if (weights.size() != grid.n) {
    throw std::invalid_argument("weight table size " +
                                std::to_string(weights.size()) +
                                " does not match grid size " +
                                std::to_string(grid.n));
  }
  check_weights(weights, "weight table");
  const double total = neumaier_total(weights);
  if (total <= 0.0) {
    throw std::invalid_argument("weight table sums to zero");
  }
  for (double& w : weights) w /= total;
  return Dist1D{grid, std::move(weights)};
}

Dist1D uniform_dist(const Grid1D& grid) {
  return Dist1D{grid,
                std::vector<double>(grid.n, 1.0 / static_cast<double>(grid.n))};
}

PointDetector snap_detector(const Grid1D& xgrid, double x0) {
  PointDetector d;
  d.requested = x0;
  d.index = xgrid.nearest_index(x0);
  d.snapped = xgrid.point(d.index);
  return d;
}

WindowDetector full_acceptance(const Grid1D& xgrid) {
  return WindowDetector{std::vector<double>(xgrid.n, 1.0)};
}

void validate_acceptance(const Acceptance& acc, const Grid1D& xgrid) {
  if (const auto* pt = std::get_if<PointDetector>(&acc)) {
    if (pt->index >= xgrid.n) {
      throw std::invalid_argument("detector index " +
                                  std::to_string(pt->index) +
                                  " lies outside the grid");
    }
    return;
  }
  const auto& win = std::get<WindowDetector>(acc);
  if (win.eta.size() != xgrid.n) {
    throw std::invalid_argument("acceptance window size " +
                                std::to_string(win.eta.size()) +
                                " does not match grid size " +
                                std::to_string(xgrid.n));
  }
  check_weights(win.eta, "acceptance window");
  if (neumaier_total(win.eta) <= 0.0) {
    throw std::invalid_argument("acceptance window is identically zero");
  }
}

JointDist normalize_joint(std::vector<double> weights, const Grid1D& xgrid,
                          const Grid1D& ygrid) {
  if (weights.size() != xgrid.n * ygrid.n) {
    throw std::invalid_argument("joint weight table size " +
                                std::to_string(weights.size()) +
                                " does not match grid sizes " +
                                std::to_string(xgrid.n) + " x " +
                                std::to_string(ygrid.n));
  }
  check_weights(weights, "joint weight table");
  const double total = neumaier_total(weights);
  if (total <= 0.0) {
    throw std::invalid_argument("degenerate joint: weight table sums to zero");
  }
  for (double& w : weights) w /= total;
  return JointDist{xgrid, ygrid, std::move(weights), total};
}

Dist1D marginal_x(const JointDist& j) {
  std::vector<double> m(j.xgrid.n);
  for (std::size_t ix = 0; ix < j.xgrid.n; ++ix) {
    NeumaierSum s;
    for (std::size_t iy = 0; iy < j.ygrid.n; ++iy) s.add(j.at(ix, iy));
    m[ix] = s.value();
  }
  return Dist1D{j.xgrid, std::move(m)};
}

Dist1D marginal_y(const JointDist& j) {
  std::vector<double> m(j.ygrid.n, 0.0);
  std::vector<NeumaierSum> acc(j.ygrid.n);
  for (std::size_t ix = 0; ix < j.xgrid.n; ++ix) {
    for (std::size_t iy = 0; iy < j.ygrid.n; ++iy) acc[iy].add(j.at(ix, iy));
  }
  for (std::size_t iy = 0; iy < j.ygrid.n; ++iy) m[iy] = acc[iy].value();
  return Dist1D{j.ygrid, std::move(m)};
}

Dist1D conditional_y_given_x0(std::span<const double> response,
                              const Dist1D& prior) {
  if (response.size() != prior.p.size()) {
    throw std::invalid_argument("response row size " +
                                std::to_string(response.size()) +
                                " does not match prior size " +
                                std::to_string(prior.p.size()));
  }
  check_weights(response, "response row");
  std::vector<double> post(response.size());
  for (std::size_t i = 0; i < post.size(); ++i) post[i] = prior.p[i] * response[i];
  const double total = neumaier_total(post);
  if (total <= 0.0) {
    throw std::invalid_argument(
        "detector sees nothing: response is zero on the prior's support");
  }
  for (double& w : post) w /= total;
  return Dist1D{prior.grid, std::move(post)};
}

Dist1D conditional_from_joint(const JointDist& j, std::size_t x_index) {
  if (x_index >= j.xgrid.n) {
    throw std::invalid_argument("x index " + std::to_string(x_index) +
                                " lies outside the grid");
  }
  std::vector<double> row(j.ygrid.n);
  for (std::size_t iy = 0; iy < j.ygrid.n; ++iy) row[iy] = j.at(x_index, iy);
  const double total = neumaier_total(row);
  if (total <= 0.0) {
    throw std::invalid_argument(
        "detector sees nothing: joint row has zero mass");
  }
  for (double& w : row) w /= total;
  return Dist1D{j.ygrid, std::move(row)};
}

} // namespace tryinfo
