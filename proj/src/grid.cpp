#include <tryinfo/grid.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace tryinfo {

std::vector<double> Grid1D::points() const {
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i) xs[i] = point(i);
  return xs;
}

std::size_t Grid1D::nearest_index(double x) const {
  const double t = (x - lo) / spacing();
  long long i = std::llround(t);
  if (i < 0) i = 0;
  const long long last = static_cast<long long>(n) - 1;
  if (i > last) i = last;
  return static_cast<std::size_t>(i);
}

Grid1D make_grid(double lo, double hi, std::size_t n) {
  if (!(lo < hi)) {
    throw std::invalid_argument("grid bounds must satisfy lo < hi, got [" +
                                std::to_string(lo) + ", " + std::to_string(hi) +
                                "]");
  }
  if (n < 2) {
    throw std::invalid_argument("grid needs at least 2 points, got " +
                                std::to_string(n));
  }
  return Grid1D{lo, hi, n};
}

} // namespace tryinfo
