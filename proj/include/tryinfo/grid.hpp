#pragma once
#include <cstddef>
#include <vector>

namespace tryinfo {

/// Uniform sampling of a closed interval. Both endpoints are grid points
/// and point(i) is computed as lo + i * spacing, never by accumulation.
struct Grid1D {
  double lo = 0.0;
  double hi = 1.0;
  std::size_t n = 2;

  double spacing() const { return (hi - lo) / static_cast<double>(n - 1); }
  double point(std::size_t i) const {
    return lo + static_cast<double>(i) * spacing();
  }
  std::size_t size() const { return n; }
  std::vector<double> points() const;

  /// Index of the grid point nearest to x, clamped to the grid.
  /// Exact midpoints between two samples resolve toward hi.
  std::size_t nearest_index(double x) const;
};

/// Validates lo < hi and n >= 2; throws std::invalid_argument otherwise.
Grid1D make_grid(double lo, double hi, std::size_t n);

} // namespace tryinfo
