#include <doctest.h>

#include <tryinfo/coherence.hpp>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

using namespace tryinfo;

namespace {

using cd = std::complex<double>;

bool message_contains(const std::exception& e, const char* piece) {
  return std::string(e.what()).find(piece) != std::string::npos;
}

double max_abs_diff(const CMatrix& x, const CMatrix& y) {
  double worst = 0.0;
  for (std::size_t i = 0; i < x.a.size(); ++i) {
    worst = std::max(worst, std::abs(x.a[i] - y.a[i]));
  }
  return worst;
}

} // namespace

TEST_CASE("matrix primitives behave on small cases") {
  CMatrix m = CMatrix::zero(2);
  m.at(0, 0) = {1.0, 0.0};
  m.at(0, 1) = {0.0, 2.0};
  m.at(1, 0) = {3.0, 0.0};
  m.at(1, 1) = {0.0, -1.0};

  const CMatrix id = CMatrix::identity(2);
  CHECK(max_abs_diff(matmul(m, id), m) == 0.0);
  CHECK(max_abs_diff(matmul(id, m), m) == 0.0);

  const CMatrix mh = adjoint(m);
  CHECK(mh.at(0, 1) == cd{3.0, 0.0});
  CHECK(mh.at(1, 0) == cd{0.0, -2.0});
  CHECK(mh.at(1, 1) == cd{0.0, 1.0});

  const std::vector<double> d = {2.0, 5.0};
  const CMatrix dm = diag_matrix(d);
  CHECK(dm.at(0, 0) == cd{2.0, 0.0});
  CHECK(dm.at(1, 1) == cd{5.0, 0.0});
  CHECK(dm.at(0, 1) == cd{0.0, 0.0});

  // (M D)_ij = M_ij d_j.
  const CMatrix md = matmul(m, dm);
  CHECK(md.at(0, 1) == cd{0.0, 10.0});
  CHECK(md.at(1, 0) == cd{6.0, 0.0});

  CHECK(frobenius_norm(id) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("hermiticity and unitarity diagnostics") {
  CMatrix h = CMatrix::zero(2);
  h.at(0, 0) = {1.0, 0.0};
  h.at(0, 1) = {0.0, 1.0};
  h.at(1, 0) = {0.0, -1.0};
  h.at(1, 1) = {2.0, 0.0};
  CHECK(hermiticity_error(h) == 0.0);
  h.at(1, 0) = {0.0, -0.5};
  CHECK(hermiticity_error(h) == doctest::Approx(0.5).epsilon(1e-15));

  CHECK(unitarity_error(CMatrix::identity(3)) == 0.0);
  CMatrix u = CMatrix::identity(2);
  u.at(0, 0) = {2.0, 0.0};
  CHECK(unitarity_error(u) == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("normalization divides by the trace") {
  CMatrix g = CMatrix::zero(2);
  g.at(0, 0) = {3.0, 0.0};
  g.at(0, 1) = {0.0, 1.0};
  g.at(1, 0) = {0.0, -1.0};
  g.at(1, 1) = {1.0, 0.0};
  const CoherenceMatrix rho = normalize_coherence(g);
  CHECK(rho.rho.at(0, 0).real() == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(rho.rho.at(0, 1) == cd{0.0, 0.25});
  // Normalization symmetrizes exactly.
  CHECK(hermiticity_error(rho.rho) == 0.0);

  CMatrix bad = g;
  bad.at(0, 1) = {5.0, 0.0};
  CHECK_THROWS_AS(normalize_coherence(bad), std::invalid_argument);

  CMatrix negative = CMatrix::zero(2);
  negative.at(0, 0) = {-1.0, 0.0};
  negative.at(1, 1) = {-1.0, 0.0};
  CHECK_THROWS_AS(normalize_coherence(negative), std::invalid_argument);
}

TEST_CASE("eigen of a diagonal matrix sorts descending") {
  const std::vector<double> d = {0.2, 0.7, 0.1};
  const EigenResult e = hermitian_eigen(diag_matrix(d));
  REQUIRE(e.values.size() == 3);
  CHECK(e.values[0] == doctest::Approx(0.7).epsilon(1e-14));
  CHECK(e.values[1] == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(e.values[2] == doctest::Approx(0.1).epsilon(1e-14));
  // Eigenvector columns form a permutation of the identity.
  for (std::size_t k = 0; k < 3; ++k) {
    double col_norm = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      col_norm += std::norm(e.vectors.at(i, k));
    }
    CHECK(col_norm == doctest::Approx(1.0).epsilon(1e-14));
  }
  CHECK(std::abs(e.vectors.at(1, 0)) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("eigen of a rank-one projector pair") {
  // [[1, i], [-i, 1]] has eigenvalues 2 and 0.
  CMatrix m = CMatrix::zero(2);
  m.at(0, 0) = {1.0, 0.0};
  m.at(0, 1) = {0.0, 1.0};
  m.at(1, 0) = {0.0, -1.0};
  m.at(1, 1) = {1.0, 0.0};
  const EigenResult e = hermitian_eigen(m);
  CHECK(e.values[0] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(std::abs(e.values[1]) < 1e-14);
  CHECK(unitarity_error(e.vectors) < 1e-13);

  // Reassembly V diag(w) V^H returns the input.
  const CMatrix rebuilt =
      matmul(matmul(e.vectors, diag_matrix(e.values)), adjoint(e.vectors));
  CHECK(max_abs_diff(rebuilt, m) < 1e-13);
}

TEST_CASE("eigen rejects non-Hermitian input and tight sweep budgets") {
  CMatrix m = CMatrix::zero(2);
  m.at(0, 1) = {1.0, 0.0};
  CHECK_THROWS_AS(hermitian_eigen(m), std::invalid_argument);

  // A dense Hermitian matrix cannot converge in a single sweep at this
  // tolerance.
  const CMatrix u = random_unitary(12, 99);
  const std::vector<double> diag = geometric_spectrum(12).lambda;
  const CMatrix dense = matmul(matmul(u, diag_matrix(diag)), adjoint(u));
  try {
    hermitian_eigen(dense, 1e-13, 1);
    FAIL("expected a throw");
  } catch (const std::runtime_error& e) {
    CHECK(message_contains(e, "did not converge"));
  }
  CHECK_NOTHROW(hermitian_eigen(dense));
}

TEST_CASE("spectrum extraction clamps rounding-level negativity only") {
  CMatrix g = CMatrix::zero(2);
  g.at(0, 0) = {1.0 + 5e-13, 0.0};
  g.at(1, 1) = {-5e-13, 0.0};
  CoherenceMatrix rho{g};
  const ModeSpectrum s = spectrum_of(rho);
  CHECK(s.lambda[1] == 0.0);
  CHECK(s.lambda[0] == doctest::Approx(1.0).epsilon(1e-12));

  CMatrix worse = CMatrix::zero(2);
  worse.at(0, 0) = {1.5, 0.0};
  worse.at(1, 1) = {-0.5, 0.0};
  try {
    spectrum_of(CoherenceMatrix{worse});
    FAIL("expected a throw");
  } catch (const std::invalid_argument& e) {
    CHECK(message_contains(e, "negative eigenvalue"));
  }
}

TEST_CASE("geometric spectrum has fixed shape and entropy") {
  const ModeSpectrum s = geometric_spectrum(12);
  REQUIRE(s.lambda.size() == 12);
  double total = 0.0;
  for (std::size_t k = 0; k < 12; ++k) {
    total += s.lambda[k];
    if (k > 0) {
      CHECK(s.lambda[k] < s.lambda[k - 1]);
      CHECK(s.lambda[k - 1] / s.lambda[k] ==
            doctest::Approx(std::exp(0.5)).epsilon(1e-13));
    }
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
  const double S = spectrum_entropy(s);
  CHECK(S == doctest::Approx(1.6861078715255606).epsilon(1e-13));
  CHECK(S < std::log(12.0));

  // A flat spectrum saturates the entropy bound.
  ModeSpectrum flat;
  flat.lambda.assign(12, 1.0 / 12.0);
  CHECK(spectrum_entropy(flat) ==
        doctest::Approx(std::log(12.0)).epsilon(1e-14));
}

TEST_CASE("truncation keeps leading modes and lowers the entropy") {
  const ModeSpectrum s = geometric_spectrum(12);
  const ModeSpectrum t = truncate_modes(s, 6);
  REQUIRE(t.lambda.size() == 6);
  double total = 0.0;
  for (double v : t.lambda) total += v;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(spectrum_entropy(t) ==
        doctest::Approx(1.4952429004191181).epsilon(1e-13));
  CHECK(spectrum_entropy(t) < spectrum_entropy(s));

  const ModeSpectrum one = truncate_modes(s, 1);
  CHECK(spectrum_entropy(one) == 0.0);

  CHECK_THROWS_AS(truncate_modes(s, 0), std::invalid_argument);
  CHECK_THROWS_AS(truncate_modes(s, 13), std::invalid_argument);
}

TEST_CASE("unitary conjugation preserves the spectrum and entropy") {
  const ModeSpectrum s = geometric_spectrum(8);
  const CoherenceMatrix rho = from_spectrum(s);
  const double S0 = coherence_entropy(rho);
  CHECK(S0 == doctest::Approx(spectrum_entropy(s)).epsilon(1e-13));

  const CMatrix u = random_unitary(8, 4242);
  const CoherenceMatrix rotated = apply_unitary(rho, u);
  CHECK(std::abs(coherence_entropy(rotated) - S0) < 1e-12);
  const ModeSpectrum back = spectrum_of(rotated);
  for (std::size_t k = 0; k < 8; ++k) {
    CHECK(back.lambda[k] == doctest::Approx(s.lambda[k]).epsilon(1e-10));
  }

  CMatrix not_unitary = CMatrix::identity(8);
  not_unitary.at(0, 0) = {1.1, 0.0};
  try {
    apply_unitary(rho, not_unitary);
    FAIL("expected a throw");
  } catch (const std::invalid_argument& e) {
    CHECK(message_contains(e, "not unitary"));
  }
}

TEST_CASE("from_spectrum requires a unit-sum spectrum") {
  ModeSpectrum bad;
  bad.lambda = {0.7, 0.7};
  CHECK_THROWS_AS(from_spectrum(bad), std::invalid_argument);
}

TEST_CASE("seeded unitaries are reproducible and properly unitary") {
  for (std::size_t n : {2u, 5u, 12u}) {
    for (std::uint64_t seed : {1ull, 7ull, 1234567ull}) {
      const CMatrix u = random_unitary(n, seed);
      CHECK(unitarity_error(u) < 1e-12);
    }
  }
  const CMatrix a = random_unitary(6, 31);
  const CMatrix b = random_unitary(6, 31);
  CHECK(max_abs_diff(a, b) == 0.0);  // bitwise reproducible
  const CMatrix c = random_unitary(6, 32);
  CHECK(max_abs_diff(a, c) > 1e-3);  // different seeds really differ
}
