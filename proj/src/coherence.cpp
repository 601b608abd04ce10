#include <tryinfo/coherence.hpp>
#include <tryinfo/info.hpp>
#include <tryinfo/numeric.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace tryinfo {
namespace {

void check_square(const CMatrix& m, const char* what) {
  if (m.n == 0 || m.a.size() != m.n * m.n) {
    throw std::invalid_argument(std::string(what) +
                                " is not a populated square matrix");
  }
}

// SplitMix64: fixed generator so seeded results are identical on every
// platform, unlike the standard library distributions.
struct SplitMix64 {
  std::uint64_t state;
  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  double canonical() {  // [0, 1), 53-bit
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }
};

constexpr double two_pi = 6.28318530717958647692;

} // namespace

CMatrix CMatrix::zero(std::size_t n) {
  return CMatrix{n, std::vector<std::complex<double>>(n * n)};
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m = zero(n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

CMatrix matmul(const CMatrix& x, const CMatrix& y) {
  check_square(x, "matmul lhs");
  check_square(y, "matmul rhs");
  if (x.n != y.n) {
    throw std::invalid_argument("matmul size mismatch: " +
                                std::to_string(x.n) + " vs " +
                                std::to_string(y.n));
  }
  CMatrix r = CMatrix::zero(x.n);
  for (std::size_t i = 0; i < x.n; ++i) {
    for (std::size_t k = 0; k < x.n; ++k) {
      const std::complex<double> xik = x.at(i, k);
      if (xik == std::complex<double>{0.0, 0.0}) continue;
      for (std::size_t j = 0; j < x.n; ++j) {
        r.at(i, j) += xik * y.at(k, j);
      }
    }
  }
  return r;
}

CMatrix adjoint(const CMatrix& m) {
  check_square(m, "adjoint argument");
  CMatrix r = CMatrix::zero(m.n);
  for (std::size_t i = 0; i < m.n; ++i) {
    for (std::size_t j = 0; j < m.n; ++j) {
      r.at(i, j) = std::conj(m.at(j, i));
    }
  }
  return r;
}

CMatrix diag_matrix(std::span<const double> d) {
  CMatrix r = CMatrix::zero(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) r.at(i, i) = d[i];
  return r;
}

double hermiticity_error(const CMatrix& m) {
  check_square(m, "hermiticity argument");
  double worst = 0.0;
  for (std::size_t i = 0; i < m.n; ++i) {
    for (std::size_t j = i; j < m.n; ++j) {
      worst = std::max(worst, std::abs(m.at(i, j) - std::conj(m.at(j, i))));
    }
  }
  return worst;
}

double unitarity_error(const CMatrix& u) {
  check_square(u, "unitarity argument");
  const CMatrix g = matmul(adjoint(u), u);
  double worst = 0.0;
  for (std::size_t i = 0; i < u.n; ++i) {
    for (std::size_t j = 0; j < u.n; ++j) {
      const std::complex<double> want = i == j ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(g.at(i, j) - want));
    }
  }
  return worst;
}

double frobenius_norm(const CMatrix& m) {
  check_square(m, "norm argument");
  NeumaierSum s;
  for (const auto& v : m.a) s.add(std::norm(v));
  return std::sqrt(s.value());
}

CoherenceMatrix normalize_coherence(const CMatrix& gamma) {
  check_square(gamma, "coherence matrix");
  const double scale = frobenius_norm(gamma);
  if (hermiticity_error(gamma) > 1e-12 * std::max(1.0, scale)) {
    throw std::invalid_argument("coherence matrix is not Hermitian");
  }
  NeumaierSum tr;
  for (std::size_t i = 0; i < gamma.n; ++i) tr.add(gamma.at(i, i).real());
  const double trace = tr.value();
  if (!(trace > 0.0)) {
    throw std::invalid_argument("coherence matrix has nonpositive trace");
  }
  CoherenceMatrix rho{gamma};
  for (auto& v : rho.rho.a) v /= trace;
  // Exact Hermitian symmetrization so downstream code sees clean input.
  for (std::size_t i = 0; i < rho.rho.n; ++i) {
    rho.rho.at(i, i) = rho.rho.at(i, i).real();
    for (std::size_t j = i + 1; j < rho.rho.n; ++j) {
      const std::complex<double> avg =
          0.5 * (rho.rho.at(i, j) + std::conj(rho.rho.at(j, i)));
      rho.rho.at(i, j) = avg;
      rho.rho.at(j, i) = std::conj(avg);
    }
  }
  return rho;
}

EigenResult hermitian_eigen(const CMatrix& m, double tol,
                            std::size_t max_sweeps) {
  check_square(m, "eigensolver argument");
  const double scale = frobenius_norm(m);
  if (hermiticity_error(m) > 1e-12 * std::max(1.0, scale)) {
    throw std::invalid_argument("eigensolver input is not Hermitian");
  }
  if (!(tol > 0.0)) {
    throw std::invalid_argument("eigensolver tolerance must be positive");
  }

  const std::size_t n = m.n;
  CMatrix a = m;
  for (std::size_t i = 0; i < n; ++i) {
    a.at(i, i) = a.at(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::complex<double> avg =
          0.5 * (a.at(i, j) + std::conj(a.at(j, i)));
      a.at(i, j) = avg;
      a.at(j, i) = std::conj(avg);
    }
  }
  CMatrix q = CMatrix::identity(n);

  auto off_norm = [&] {
    NeumaierSum s;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) s.add(2.0 * std::norm(a.at(i, j)));
    }
    return std::sqrt(s.value());
  };

  const double goal = tol * std::max(scale, 1e-300);
  std::size_t sweeps = 0;
  bool converged = n < 2 || off_norm() <= goal;
  bool polished = n < 2;

  while (!polished) {
    if (sweeps >= max_sweeps) {
      throw std::runtime_error("eigensolver did not converge within " +
                               std::to_string(max_sweeps) + " sweeps");
    }
    ++sweeps;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t qq = p + 1; qq < n; ++qq) {
        const std::complex<double> h = a.at(p, qq);
        const double habs = std::abs(h);
        if (habs == 0.0) continue;
        const std::complex<double> u = h / habs;  // phase of the pivot
        const double app = a.at(p, p).real();
        const double aqq = a.at(qq, qq).real();

        // Real Jacobi angle on the phase-rotated 2x2 block.
        const double tau = (aqq - app) / (2.0 * habs);
        const double t =
            (tau >= 0.0 ? 1.0 : -1.0) /
            (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // Column rotation V: V[p][p]=c, V[p][q]=s, V[q][p]=-s conj(u),
        // V[q][q]=c conj(u); A <- V^H A V, Q <- Q V.
        const std::complex<double> suc = s * std::conj(u);
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == qq) continue;
          const std::complex<double> akp = a.at(k, p);
          const std::complex<double> akq = a.at(k, qq);
          a.at(k, p) = c * akp - suc * akq;
          a.at(k, qq) = s * akp + c * std::conj(u) * akq;
          a.at(p, k) = std::conj(a.at(k, p));
          a.at(qq, k) = std::conj(a.at(k, qq));
        }
        a.at(p, p) = app - t * habs;
        a.at(qq, qq) = aqq + t * habs;
        a.at(p, qq) = 0.0;
        a.at(qq, p) = 0.0;

        for (std::size_t k = 0; k < n; ++k) {
          const std::complex<double> qkp = q.at(k, p);
          const std::complex<double> qkq = q.at(k, qq);
          q.at(k, p) = c * qkp - suc * qkq;
          q.at(k, qq) = s * qkp + c * std::conj(u) * qkq;
        }
      }
    }
    if (converged) {
      polished = true;  // one full sweep past the tolerance
    } else {
      converged = off_norm() <= goal;
    }
  }

  EigenResult r;
  r.sweeps = sweeps;
  r.values.resize(n);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = a.at(i, i).real();
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return diag[i] > diag[j]; });
  r.vectors = CMatrix::zero(n);
  for (std::size_t col = 0; col < n; ++col) {
    r.values[col] = diag[order[col]];
    for (std::size_t row = 0; row < n; ++row) {
      r.vectors.at(row, col) = q.at(row, order[col]);
    }
  }
  return r;
}

ModeSpectrum spectrum_of(const CoherenceMatrix& rho) {
  const EigenResult e = hermitian_eigen(rho.rho);
  ModeSpectrum s;
  s.lambda.resize(e.values.size());
  for (std::size_t i = 0; i < e.values.size(); ++i) {
    double v = e.values[i];
    if (v < 0.0) {
      if (v < -1e-12) {
        throw std::invalid_argument(
            "coherence matrix has a negative eigenvalue: " +
            std::to_string(v));
      }
      v = 0.0;
    }
    s.lambda[i] = v;
  }
  const double total = neumaier_total(s.lambda);
  if (!(total > 0.0)) {
    throw std::invalid_argument("coherence spectrum has zero mass");
  }
  for (double& v : s.lambda) v /= total;
  return s;
}

double spectrum_entropy(const ModeSpectrum& s) {
  return shannon_entropy(std::span<const double>(s.lambda));
}

double coherence_entropy(const CoherenceMatrix& rho) {
  return spectrum_entropy(spectrum_of(rho));
}

ModeSpectrum geometric_spectrum(std::size_t n) {
  if (n == 0) {
    throw std::invalid_argument("spectrum needs at least one mode");
  }
  ModeSpectrum s;
  s.lambda.resize(n);
  NeumaierSum z;
  for (std::size_t k = 0; k < n; ++k) {
    s.lambda[k] = std::exp(-0.5 * static_cast<double>(k));
    z.add(s.lambda[k]);
  }
  for (double& v : s.lambda) v /= z.value();
  return s;
}

CoherenceMatrix from_spectrum(const ModeSpectrum& s) {
  if (s.lambda.empty()) {
    throw std::invalid_argument("spectrum needs at least one mode");
  }
  for (double v : s.lambda) {
    if (!(v >= 0.0)) {
      throw std::invalid_argument("spectrum has a negative weight");
    }
  }
  const double total = neumaier_total(s.lambda);
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("spectrum weights must sum to 1, got " +
                                std::to_string(total));
  }
  return CoherenceMatrix{diag_matrix(s.lambda)};
}

CoherenceMatrix apply_unitary(const CoherenceMatrix& rho, const CMatrix& u) {
  if (u.n != rho.rho.n) {
    throw std::invalid_argument("unitary size " + std::to_string(u.n) +
                                " does not match matrix size " +
                                std::to_string(rho.rho.n));
  }
  if (unitarity_error(u) > 1e-12) {
    throw std::invalid_argument("matrix is not unitary");
  }
  return CoherenceMatrix{matmul(matmul(u, rho.rho), adjoint(u))};
}

ModeSpectrum truncate_modes(const ModeSpectrum& s, std::size_t m) {
  if (m == 0 || m > s.lambda.size()) {
    throw std::invalid_argument("truncation order " + std::to_string(m) +
                                " is outside [1, " +
                                std::to_string(s.lambda.size()) + "]");
  }
  ModeSpectrum t;
  t.lambda.assign(s.lambda.begin(),
                  s.lambda.begin() + static_cast<std::ptrdiff_t>(m));
  const double total = neumaier_total(t.lambda);
  if (!(total > 0.0)) {
    throw std::invalid_argument("truncated spectrum has zero mass");
  }
  for (double& v : t.lambda) v /= total;
  return t;
}

CMatrix random_unitary(std::size_t n, std::uint64_t seed) {
  if (n == 0) {
    throw std::invalid_argument("unitary needs at least one dimension");
  }
  SplitMix64 rng{seed};
  CMatrix q = CMatrix::identity(n);
  // Column phases, then one cyclic pass of random Givens rotations.
  for (std::size_t j = 0; j < n; ++j) {
    const double phi = two_pi * rng.canonical();
    const std::complex<double> e{std::cos(phi), std::sin(phi)};
    for (std::size_t i = 0; i < n; ++i) q.at(i, j) *= e;
  }
  for (std::size_t p = 0; p + 1 < n; ++p) {
    for (std::size_t r = p + 1; r < n; ++r) {
      const double theta = std::asin(std::sqrt(rng.canonical()));
      const double phi = two_pi * rng.canonical();
      const double c = std::cos(theta);
      const double s = std::sin(theta);
      const std::complex<double> e{std::cos(phi), std::sin(phi)};
      for (std::size_t k = 0; k < n; ++k) {
        const std::complex<double> qkp = q.at(k, p);
        const std::complex<double> qkr = q.at(k, r);
        q.at(k, p) = c * qkp - s * std::conj(e) * qkr;
        q.at(k, r) = s * e * qkp + c * qkr;
      }
    }
  }
  return q;
}

} // namespace tryinfo
