#pragma once
#include <tryinfo/dist.hpp>
#include <tryinfo/grid.hpp>

#include <complex>
#include <cstddef>
#include <variant>
#include <vector>

namespace tryinfo {

/// Aperture transmission sampled on a slit-plane grid, propagated with
/// paraxial quadratic phases. k is the wavenumber, Ls the source-aperture
/// distance, Ld the aperture-detector distance. The slit integral is done
/// with trapezoid weights, so the transmission should vanish at the grid
/// ends or be understood as half-weighted there.
struct GeneralAperture {
  Grid1D ugrid;
  std::vector<std::complex<double>> transmission;
  double k = 1.0;
  double Ls = 1.0;
  double Ld = 1.0;
};

/// Ideal narrow slit: position, complex amplitude, extra phase offset.
/// Parameter families enter by regenerating the slit table per parameter
/// value: a phase perturbation moves `phase`, a tilt adds a phase linear
/// in u, a wavelength shift moves k.
struct Slit {
  double u = 0.0;
  std::complex<double> amplitude{1.0, 0.0};
  double phase = 0.0;
};

struct DiscreteSlits {
  std::vector<Slit> slits;
  double k = 1.0;
  double Ls = 1.0;
  double Ld = 1.0;
  std::complex<double> normalization{1.0, 0.0};
};

/// Dimensionless two-path amplitude: Gaussian envelopes of width sigma
/// centered at x - y = +-d/2, each carrying a quadratic phase with
/// coefficient beta. beta = 0 makes the kernel real and even in (x - y).
struct TwoPathBeta {
  double beta = 0.0;
  double d = 1.3;
  double sigma = 0.65;
};

using KernelSpec = std::variant<GeneralAperture, DiscreteSlits, TwoPathBeta>;

/// Complex source-to-detector amplitude table K(x_i, y_j), row-major in x.
struct ComplexKernel {
  Grid1D xgrid;
  Grid1D ygrid;
  std::vector<std::complex<double>> k;
  KernelSpec spec;

  std::complex<double> at(std::size_t ix, std::size_t iy) const {
    return k[ix * ygrid.n + iy];
  }
};

/// Largest phase advance of the quadratic slit factors between adjacent
/// slit-grid samples, over all detector and source points. Must stay
/// below pi for the trapezoid quadrature to resolve the integrand.
double max_phase_step(const GeneralAperture& spec, const Grid1D& xgrid,
                      const Grid1D& ygrid);

/// Same diagnostic for the two-path kernel's quadratic phase on the
/// source grid at fixed x, and on the detector grid at fixed y.
double max_phase_step(const TwoPathBeta& spec, const Grid1D& xgrid,
                      const Grid1D& ygrid);

/// Trapezoid-quadrature aperture propagation. Throws std::invalid_argument
/// naming the required slit sample count when the phase-resolution guard
/// fails.
ComplexKernel fresnel_aperture_kernel(const GeneralAperture& spec,
                                      const Grid1D& xgrid,
                                      const Grid1D& ygrid);

/// Closed-form sum over ideal slits; no quadrature error.
ComplexKernel discrete_slit_kernel(const DiscreteSlits& spec,
                                   const Grid1D& xgrid, const Grid1D& ygrid);

ComplexKernel two_path_beta_kernel(const TwoPathBeta& spec,
                                   const Grid1D& xgrid, const Grid1D& ygrid);

ComplexKernel build_kernel(const KernelSpec& spec, const Grid1D& xgrid,
                           const Grid1D& ygrid);

/// One rectangular opening of a physical aperture. The transmission inside
/// is amplitude / width, so each slit carries unit integral per unit
/// amplitude and narrowing a slit approaches an ideal one.
struct TopHat {
  double center = 0.0;
  double width = 0.1;
  std::complex<double> amplitude{1.0, 0.0};
};

/// Samples a sum of top-hat slits onto a slit grid for the Fresnel kernel.
/// The grid step is min(width) / samples_per_width, every slit edge must
/// land on a sample (edges take the half value, matching the trapezoid
/// rule exactly), and the grid extends one minimal width past the outer
/// edges so no edge sits at a grid end.
GeneralAperture tophat_aperture(std::span<const TopHat> slits,
                                std::size_t samples_per_width, double k,
                                double Ls, double Ld);

/// |K(x_i, y_j)|^2 for one detector row.
std::vector<double> response_row(const ComplexKernel& K, std::size_t x_index);

/// Joint distribution proportional to prior(y) * eta(x) * |K(x,y)|^2.
/// A point detector restricts the table to its single x row.
JointDist kernel_to_joint(const ComplexKernel& K, const Dist1D& prior,
                          const Acceptance& acc);

/// Source-side conditional for a fixed detection outcome: Bayes update of
/// the prior by the acceptance-weighted detection response.
Dist1D window_conditional(const ComplexKernel& K, const Acceptance& acc,
                          const Dist1D& prior);

} // namespace tryinfo
