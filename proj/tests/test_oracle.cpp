#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "qschur/oracle.hpp"
#include "qschur/schur.hpp"
#include "test_support.hpp"

using namespace qschur;
using namespace qschur::testsupport;

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

ComplexMatrix cmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix c(a.rows(), b.cols());
  for (int j = 0; j < b.cols(); ++j)
    for (int k = 0; k < a.cols(); ++k)
      for (int i = 0; i < a.rows(); ++i) c(i, j) += a(i, k) * b(k, j);
  return c;
}

double cdiff(const ComplexMatrix& a, const ComplexMatrix& b) {
  double m = 0.0;
  for (int j = 0; j < a.cols(); ++j)
    for (int i = 0; i < a.rows(); ++i) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

double cnorm_frob(const ComplexMatrix& a) {
  double s = 0.0;
  for (int j = 0; j < a.cols(); ++j)
    for (int i = 0; i < a.rows(); ++i) s += std::norm(a(i, j));
  return std::sqrt(s);
}

}  // namespace

TEST_CASE("complex form of the second imaginary unit") {
  QMatrix a(1, 1);
  a(0, 0) = Quaternion(0, 0, 1, 0);
  const ComplexMatrix m = complex_adjoint(a);
  REQUIRE(m.rows() == 2);
  REQUIRE(m.cols() == 2);
  CHECK(m(0, 0) == Complex(0, 0));
  CHECK(m(0, 1) == Complex(1, 0));
  CHECK(m(1, 0) == Complex(-1, 0));
  CHECK(m(1, 1) == Complex(0, 0));
}

TEST_CASE("complex form of the identity") {
  const ComplexMatrix m = complex_adjoint(QMatrix::identity(3));
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) CHECK(m(i, j) == (i == j ? Complex(1, 0) : Complex(0, 0)));
}

TEST_CASE("complex form respects products") {
  const QMatrix a = fullrand(4, 2);
  const QMatrix b = fullrand(4, 3);
  const ComplexMatrix lhs = complex_adjoint(matmul(a, b));
  const ComplexMatrix rhs = cmul(complex_adjoint(a), complex_adjoint(b));
  const double scale = frob_norm(a) * frob_norm(b);
  CHECK(cdiff(lhs, rhs) <= 16.0 * 4 * kEps * scale);
}

TEST_CASE("complex form doubles the squared norm") {
  const QMatrix a = fullrand(5, 4);
  const double qn = frob_norm(a);
  const double cn = cnorm_frob(complex_adjoint(a));
  CHECK(std::abs(cn * cn - 2.0 * qn * qn) <= 8.0 * kEps * cn * cn);
}

TEST_CASE("reference spectrum of a diagonal embedding") {
  QMatrix a(2, 2);
  a(0, 0) = Quaternion(1.0);
  a(1, 1) = Quaternion(0, 1, 0, 0);
  const std::vector<Complex> eigs = reference_spectrum(complex_adjoint(a));
  const std::vector<Complex> expect = {Complex(1, 0), Complex(1, 0), Complex(0, 1),
                                       Complex(0, -1)};
  CHECK(match_spectra(eigs, expect) <= 1e-12);
}

TEST_CASE("representatives of the known two by two system") {
  const QMatrix a = sample_2x2();
  const std::vector<Complex> eigs = reference_spectrum(complex_adjoint(a));
  int near_real = 0;
  const std::vector<Complex> reps = cplus_representatives(eigs, &near_real);
  REQUIRE(reps.size() == 2);
  CHECK(std::abs(reps[0] - Complex(0, 1)) <= 1e-10);
  CHECK(std::abs(reps[1] - Complex(1, 0)) <= 1e-10);
  CHECK(near_real == 1);
}

TEST_CASE("spectrum of an embedding is conjugation closed") {
  const QMatrix a = fullrand(6, 41);
  const std::vector<Complex> eigs = reference_spectrum(complex_adjoint(a));
  REQUIRE(eigs.size() == 12);
  const double scale = frob_norm(a);
  for (const Complex& e : eigs) {
    double best = std::numeric_limits<double>::max();
    for (const Complex& f : eigs) best = std::min(best, std::abs(std::conj(e) - f));
    CHECK(best <= 1e-8 * scale);
  }
}

TEST_CASE("reference spectrum handles larger inputs and enforces its cap") {
  const QMatrix a = fullrand(16, 7);
  CHECK_NOTHROW(reference_spectrum(complex_adjoint(a)));
  CHECK_THROWS_AS(reference_spectrum(ComplexMatrix(129, 129)), dimension_error);
  CHECK_THROWS_AS(reference_spectrum(ComplexMatrix(2, 3)), dimension_error);
}

TEST_CASE("representative folding") {
  const std::vector<Complex> eigs = {Complex(1, 2), Complex(1, -2), Complex(3, 0),
                                     Complex(3, 0)};
  int near_real = -1;
  const std::vector<Complex> reps = cplus_representatives(eigs, &near_real);
  REQUIRE(reps.size() == 2);
  CHECK(reps[0] == Complex(1, 2));
  CHECK(reps[1] == Complex(3, 0));
  CHECK(near_real == 1);
  CHECK_THROWS_AS(cplus_representatives({Complex(1, 0)}), dimension_error);
}

TEST_CASE("spectrum matching distance") {
  const std::vector<Complex> a = {Complex(1, 1), Complex(2, 0), Complex(0, 3)};
  std::vector<Complex> b = {Complex(0, 3), Complex(1, 1), Complex(2, 0)};
  CHECK(match_spectra(a, b) == 0.0);
  b[0] += Complex(0, 1e-3);
  CHECK(match_spectra(a, b) >= 0.5e-3);
  CHECK_THROWS_AS(match_spectra(a, {Complex(0, 0)}), dimension_error);
}

TEST_CASE("decomposition metrics on exact inputs") {
  const QMatrix a = fullrand(4, 19);
  CHECK(unitarity_error(QMatrix::identity(4)) == 0.0);
  CHECK(similarity_error(a, QMatrix::identity(4), a) == 0.0);

  QMatrix u = QMatrix::identity(4);
  const double delta = 1e-6;
  u(1, 1) = Quaternion(1.0 + delta);
  const double e1 = unitarity_error(u);
  CHECK(e1 >= delta / 2.0);
  CHECK(e1 <= 4.0 * delta / 2.0);
}

TEST_CASE("similarity metric is basis consistent") {
  const QMatrix a = fullrand(6, 23);
  const SchurDecomposition d = schur_decompose(a);
  QuatRng rng(57);
  const QMatrix w = random_unitary(rng, 6);
  const QMatrix u2 = matmul(d.u, w);
  const QMatrix t2 = matmul(adjoint(w), matmul(d.t, w));
  CHECK(similarity_error(a, u2, t2) <= 100.0 * 6 * kEps);
}
