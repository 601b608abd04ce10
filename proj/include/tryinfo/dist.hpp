#pragma once
#include <tryinfo/grid.hpp>

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

namespace tryinfo {

/// Probability mass table on a grid: entries nonnegative, unit total.
struct Dist1D {
  Grid1D grid;
  std::vector<double> p;
};

/// Normalizes nonnegative weights into a Dist1D.
/// Rejects negative entries and an all-zero table.
Dist1D dist_from_weights(const Grid1D& grid, std::vector<double> weights);
Dist1D uniform_dist(const Grid1D& grid);

/// Joint mass table over (x_i, y_j), row-major in x.
/// norm_constant records the raw weight total the table was divided by,
/// so intensity-scale information survives normalization.
struct JointDist {
  Grid1D xgrid;
  Grid1D ygrid;
  std::vector<double> p;
  double norm_constant = 1.0;

  double at(std::size_t ix, std::size_t iy) const {
    return p[ix * ygrid.n + iy];
  }
};

/// Pointlike detector snapped to the nearest x-grid sample. Both the
/// requested and the snapped coordinate are kept for reporting.
struct PointDetector {
  double requested = 0.0;
  double snapped = 0.0;
  std::size_t index = 0;
};

/// Finite-acceptance detector: nonnegative weights over the x grid.
struct WindowDetector {
  std::vector<double> eta;
};

using Acceptance = std::variant<PointDetector, WindowDetector>;

PointDetector snap_detector(const Grid1D& xgrid, double x0);
WindowDetector full_acceptance(const Grid1D& xgrid);

/// Throws std::invalid_argument on size mismatch, negative weights, or an
/// all-zero window.
void validate_acceptance(const Acceptance& acc, const Grid1D& xgrid);

/// Normalizes a nonnegative weight table into a joint distribution.
/// An all-zero table raises "degenerate joint".
JointDist normalize_joint(std::vector<double> weights, const Grid1D& xgrid,
                          const Grid1D& ygrid);

Dist1D marginal_x(const JointDist& j);
Dist1D marginal_y(const JointDist& j);

/// Bayes update of the prior by a detector response row r(y) >= 0.
/// A zero posterior mass raises "detector sees nothing".
Dist1D conditional_y_given_x0(std::span<const double> response,
                              const Dist1D& prior);

/// Conditional over y extracted from one x row of a joint table.
Dist1D conditional_from_joint(const JointDist& j, std::size_t x_index);

} // namespace tryinfo
