#pragma once
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace tryinfo {

/// Dense complex square matrix, row-major.
struct CMatrix {
  std::size_t n = 0;
  std::vector<std::complex<double>> a;

  static CMatrix zero(std::size_t n);
  static CMatrix identity(std::size_t n);

  std::complex<double>& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
  std::complex<double> at(std::size_t i, std::size_t j) const {
    return a[i * n + j];
  }
};

CMatrix matmul(const CMatrix& x, const CMatrix& y);
CMatrix adjoint(const CMatrix& m);
CMatrix diag_matrix(std::span<const double> d);

/// max |A_ij - conj(A_ji)|.
double hermiticity_error(const CMatrix& m);
/// max |(U^H U - I)_ij|.
double unitarity_error(const CMatrix& u);
double frobenius_norm(const CMatrix& m);

/// Hermitian unit-trace mode correlation matrix.
struct CoherenceMatrix {
  CMatrix rho;
};

/// Occupation spectrum: nonnegative, descending, unit sum.
struct ModeSpectrum {
  std::vector<double> lambda;
};

struct EigenResult {
  std::vector<double> values;  // descending
  CMatrix vectors;             // column k pairs with values[k]
  std::size_t sweeps = 0;
};

/// Divides a Hermitian matrix by its trace. Throws on non-Hermitian input
/// or nonpositive trace.
CoherenceMatrix normalize_coherence(const CMatrix& gamma);

/// Cyclic Jacobi diagonalization. Converged when the off-diagonal
/// Frobenius mass falls below tol relative to the matrix norm; one extra
/// sweep then polishes the result toward machine precision. Throws when
/// max_sweeps passes do not reach tol.
EigenResult hermitian_eigen(const CMatrix& m, double tol = 1e-13,
                            std::size_t max_sweeps = 100);

/// Eigenvalues of a coherence matrix as an occupation spectrum.
/// Eigenvalues in [-1e-12, 0) clamp to zero; anything lower is a genuine
/// negativity and throws.
ModeSpectrum spectrum_of(const CoherenceMatrix& rho);

/// -sum lambda ln lambda in nats.
double spectrum_entropy(const ModeSpectrum& s);
double coherence_entropy(const CoherenceMatrix& rho);

/// lambda_k proportional to exp(-k/2), k = 0..n-1, normalized.
ModeSpectrum geometric_spectrum(std::size_t n);

CoherenceMatrix from_spectrum(const ModeSpectrum& s);

/// rho -> U rho U^H. Throws when u is not unitary within 1e-12.
CoherenceMatrix apply_unitary(const CoherenceMatrix& rho, const CMatrix& u);

/// Keeps the m largest modes and renormalizes.
ModeSpectrum truncate_modes(const ModeSpectrum& s, std::size_t m);

/// Reproducible dense unitary built from seeded Givens rotations and
/// phases. The generator is fixed (not the platform's), so the same seed
/// gives the same matrix everywhere.
CMatrix random_unitary(std::size_t n, std::uint64_t seed);

} // namespace tryinfo
