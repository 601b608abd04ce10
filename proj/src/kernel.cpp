#include <tryinfo/kernel.hpp>
#include <tryinfo/numeric.hpp>

#include <cmath>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>

namespace tryinfo {
namespace {

constexpr std::complex<double> I{0.0, 1.0};

double quadratic_phase_rate(const GeneralAperture& s, double u, double x,
                            double y) {
  // d/du of k (u - y)^2 / (2 Ls) + k (x - u)^2 / (2 Ld)
  return s.k * (u - y) / s.Ls - s.k * (x - u) / s.Ld;
}

} // namespace

double max_phase_step(const GeneralAperture& spec, const Grid1D& xgrid,
                      const Grid1D& ygrid) {
  // The phase is quadratic in u, so its derivative is extremal at the
  // corners of the (u, x, y) box.
  const double us[2] = {spec.ugrid.lo, spec.ugrid.hi};
  const double xs[2] = {xgrid.lo, xgrid.hi};
  const double ys[2] = {ygrid.lo, ygrid.hi};
  double rate = 0.0;
  for (double u : us)
    for (double x : xs)
      for (double y : ys)
        rate = std::max(rate, std::abs(quadratic_phase_rate(spec, u, x, y)));
  return rate * spec.ugrid.spacing();
}

double max_phase_step(const TwoPathBeta& spec, const Grid1D& xgrid,
                      const Grid1D& ygrid) {
  // Phase beta (x - y -+ d/2)^2; |d(phase)/dy| = |d(phase)/dx| is maximal
  // at the largest |x - y -+ d/2| over the grid corners.
  double reach = 0.0;
  const double xs[2] = {xgrid.lo, xgrid.hi};
  const double ys[2] = {ygrid.lo, ygrid.hi};
  for (double x : xs)
    for (double y : ys)
      for (double s : {-0.5, 0.5})
        reach = std::max(reach, std::abs(x - y + s * spec.d));
  const double rate = 2.0 * std::abs(spec.beta) * reach;
  return rate * std::max(xgrid.spacing(), ygrid.spacing());
}

ComplexKernel fresnel_aperture_kernel(const GeneralAperture& spec,
                                      const Grid1D& xgrid,
                                      const Grid1D& ygrid) {
  if (spec.transmission.size() != spec.ugrid.n) {
    throw std::invalid_argument("transmission table size " +
                                std::to_string(spec.transmission.size()) +
                                " does not match slit grid size " +
                                std::to_string(spec.ugrid.n));
  }
  if (!(spec.k > 0.0) || !(spec.Ls > 0.0) || !(spec.Ld > 0.0)) {
    throw std::invalid_argument("aperture geometry requires k, Ls, Ld > 0");
  }
  const double step = max_phase_step(spec, xgrid, ygrid);
  constexpr double pi = 3.14159265358979323846;
  if (!(step < pi)) {
    const double span = spec.ugrid.hi - spec.ugrid.lo;
    const double rate = step / spec.ugrid.spacing();
    const auto needed =
        static_cast<std::size_t>(std::ceil(span * rate / pi)) + 2;
    throw std::invalid_argument(
        "slit grid too coarse: per-sample phase step " + std::to_string(step) +
        " rad reaches pi; need at least " + std::to_string(needed) +
        " slit samples over the aperture");
  }

  const double du = spec.ugrid.spacing();
  ComplexKernel K{xgrid, ygrid,
                  std::vector<std::complex<double>>(xgrid.n * ygrid.n), spec};
  for (std::size_t ix = 0; ix < xgrid.n; ++ix) {
    const double x = xgrid.point(ix);
    for (std::size_t iy = 0; iy < ygrid.n; ++iy) {
      const double y = ygrid.point(iy);
      std::complex<double> acc{0.0, 0.0};
      for (std::size_t j = 0; j < spec.ugrid.n; ++j) {
        const std::complex<double> t = spec.transmission[j];
        if (t == std::complex<double>{0.0, 0.0}) continue;
        const double u = spec.ugrid.point(j);
        const double w =
            (j == 0 || j + 1 == spec.ugrid.n) ? 0.5 * du : du;
        const double phase = spec.k * (u - y) * (u - y) / (2.0 * spec.Ls) +
                             spec.k * (x - u) * (x - u) / (2.0 * spec.Ld);
        acc += w * t * std::exp(I * phase);
      }
      K.k[ix * ygrid.n + iy] = acc;
    }
  }
  return K;
}

ComplexKernel discrete_slit_kernel(const DiscreteSlits& spec,
                                   const Grid1D& xgrid, const Grid1D& ygrid) {
  if (spec.slits.empty()) {
    throw std::invalid_argument("discrete slit kernel needs at least one slit");
  }
  if (!(spec.k > 0.0) || !(spec.Ls > 0.0) || !(spec.Ld > 0.0)) {
    throw std::invalid_argument("slit geometry requires k, Ls, Ld > 0");
  }
  ComplexKernel K{xgrid, ygrid,
                  std::vector<std::complex<double>>(xgrid.n * ygrid.n), spec};
  for (std::size_t ix = 0; ix < xgrid.n; ++ix) {
    const double x = xgrid.point(ix);
    for (std::size_t iy = 0; iy < ygrid.n; ++iy) {
      const double y = ygrid.point(iy);
      std::complex<double> acc{0.0, 0.0};
      for (const Slit& s : spec.slits) {
        const double phase =
            spec.k * (s.u - y) * (s.u - y) / (2.0 * spec.Ls) +
            spec.k * (x - s.u) * (x - s.u) / (2.0 * spec.Ld) + s.phase;
        acc += s.amplitude * std::exp(I * phase);
      }
      K.k[ix * ygrid.n + iy] = spec.normalization * acc;
    }
  }
  return K;
}

ComplexKernel two_path_beta_kernel(const TwoPathBeta& spec,
                                   const Grid1D& xgrid, const Grid1D& ygrid) {
  if (!(spec.sigma > 0.0)) {
    throw std::invalid_argument("two-path kernel requires sigma > 0");
  }
  const double inv2s2 = 1.0 / (2.0 * spec.sigma * spec.sigma);
  ComplexKernel K{xgrid, ygrid,
                  std::vector<std::complex<double>>(xgrid.n * ygrid.n), spec};
  for (std::size_t ix = 0; ix < xgrid.n; ++ix) {
    const double x = xgrid.point(ix);
    for (std::size_t iy = 0; iy < ygrid.n; ++iy) {
      const double y = ygrid.point(iy);
      const double a = x - y - 0.5 * spec.d;
      const double b = x - y + 0.5 * spec.d;
      const std::complex<double> path1 =
          std::exp(std::complex<double>(-a * a * inv2s2, spec.beta * a * a));
      const std::complex<double> path2 =
          std::exp(std::complex<double>(-b * b * inv2s2, spec.beta * b * b));
      K.k[ix * ygrid.n + iy] = path1 + path2;
    }
  }
  return K;
}

ComplexKernel build_kernel(const KernelSpec& spec, const Grid1D& xgrid,
                           const Grid1D& ygrid) {
  return std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, GeneralAperture>)
          return fresnel_aperture_kernel(s, xgrid, ygrid);
        else if constexpr (std::is_same_v<T, DiscreteSlits>)
          return discrete_slit_kernel(s, xgrid, ygrid);
        else
          return two_path_beta_kernel(s, xgrid, ygrid);
      },
      spec);
}

GeneralAperture tophat_aperture(std::span<const TopHat> slits,
                                std::size_t samples_per_width, double k,
                                double Ls, double Ld) {
  if (slits.empty()) {
    throw std::invalid_argument("aperture needs at least one slit");
  }
  if (samples_per_width < 2) {
    throw std::invalid_argument("need at least 2 samples per slit width");
  }
  double min_width = slits[0].width;
  double lo_edge = slits[0].center - 0.5 * slits[0].width;
  double hi_edge = slits[0].center + 0.5 * slits[0].width;
  for (const TopHat& s : slits) {
    if (!(s.width > 0.0)) {
      throw std::invalid_argument("slit width must be positive");
    }
    min_width = std::min(min_width, s.width);
    lo_edge = std::min(lo_edge, s.center - 0.5 * s.width);
    hi_edge = std::max(hi_edge, s.center + 0.5 * s.width);
  }
  const double du = min_width / static_cast<double>(samples_per_width);
  const double u0 = lo_edge - static_cast<double>(samples_per_width) * du;
  const auto n = static_cast<std::size_t>(
                     std::llround(std::ceil((hi_edge - u0) / du - 1e-9))) +
                 samples_per_width + 1;
  GeneralAperture ap;
  ap.ugrid = Grid1D{u0, u0 + static_cast<double>(n - 1) * du, n};
  ap.transmission.assign(n, std::complex<double>{0.0, 0.0});
  ap.k = k;
  ap.Ls = Ls;
  ap.Ld = Ld;

  auto sample_of = [&](double edge) {
    const double t = (edge - u0) / du;
    const double r = std::round(t);
    if (std::abs(t - r) > 1e-9 * std::max(1.0, std::abs(t))) {
      throw std::invalid_argument(
          "slit edge at u = " + std::to_string(edge) +
          " does not land on a slit-grid sample; choose centers and widths "
          "commensurate with the sample spacing");
    }
    return static_cast<std::size_t>(std::llround(r));
  };

  for (const TopHat& s : slits) {
    const std::size_t jl = sample_of(s.center - 0.5 * s.width);
    const std::size_t jr = sample_of(s.center + 0.5 * s.width);
    const std::complex<double> height = s.amplitude / s.width;
    ap.transmission[jl] += 0.5 * height;
    ap.transmission[jr] += 0.5 * height;
    for (std::size_t j = jl + 1; j < jr; ++j) ap.transmission[j] += height;
  }
  return ap;
}

std::vector<double> response_row(const ComplexKernel& K, std::size_t x_index) {
  if (x_index >= K.xgrid.n) {
    throw std::invalid_argument("x index " + std::to_string(x_index) +
                                " lies outside the grid");
  }
  std::vector<double> r(K.ygrid.n);
  for (std::size_t iy = 0; iy < K.ygrid.n; ++iy) {
    r[iy] = std::norm(K.at(x_index, iy));
  }
  return r;
}

JointDist kernel_to_joint(const ComplexKernel& K, const Dist1D& prior,
                          const Acceptance& acc) {
  if (prior.p.size() != K.ygrid.n) {
    throw std::invalid_argument("prior size " +
                                std::to_string(prior.p.size()) +
                                " does not match kernel source grid size " +
                                std::to_string(K.ygrid.n));
  }
  validate_acceptance(acc, K.xgrid);
  std::vector<double> w(K.xgrid.n * K.ygrid.n, 0.0);
  if (const auto* pt = std::get_if<PointDetector>(&acc)) {
    const std::size_t ix = pt->index;
    for (std::size_t iy = 0; iy < K.ygrid.n; ++iy) {
      w[ix * K.ygrid.n + iy] = prior.p[iy] * std::norm(K.at(ix, iy));
    }
  } else {
    const auto& win = std::get<WindowDetector>(acc);
    for (std::size_t ix = 0; ix < K.xgrid.n; ++ix) {
      if (win.eta[ix] == 0.0) continue;
      for (std::size_t iy = 0; iy < K.ygrid.n; ++iy) {
        w[ix * K.ygrid.n + iy] =
            win.eta[ix] * prior.p[iy] * std::norm(K.at(ix, iy));
      }
    }
  }
  return normalize_joint(std::move(w), K.xgrid, K.ygrid);
}

Dist1D window_conditional(const ComplexKernel& K, const Acceptance& acc,
                          const Dist1D& prior) {
  if (prior.p.size() != K.ygrid.n) {
    throw std::invalid_argument("prior size " +
                                std::to_string(prior.p.size()) +
                                " does not match kernel source grid size " +
                                std::to_string(K.ygrid.n));
  }
  validate_acceptance(acc, K.xgrid);
  std::vector<double> response(K.ygrid.n, 0.0);
  if (const auto* pt = std::get_if<PointDetector>(&acc)) {
    response = response_row(K, pt->index);
  } else {
    const auto& win = std::get<WindowDetector>(acc);
    for (std::size_t iy = 0; iy < K.ygrid.n; ++iy) {
      NeumaierSum s;
      for (std::size_t ix = 0; ix < K.xgrid.n; ++ix) {
        if (win.eta[ix] == 0.0) continue;
        s.add(win.eta[ix] * std::norm(K.at(ix, iy)));
      }
      response[iy] = s.value();
    }
  }
  return conditional_y_given_x0(response, prior);
}

} // namespace tryinfo
