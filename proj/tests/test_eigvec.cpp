#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "qschur/eigvec.hpp"
#include "qschur/oracle.hpp"
#include "qschur/schur.hpp"
#include "test_support.hpp"

using namespace qschur;
using namespace qschur::testsupport;

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Frobenius norm of T x - x * lambda for one column.
double column_residual(const QMatrix& t, const QMatrix& x, int k, Complex lambda) {
  const int n = t.rows();
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    Quaternion r;
    for (int j = i; j < n; ++j) r = r + t(i, j) * x(j, k);
    r = r - x(i, k) * lambda;
    acc += abs(r) * abs(r);
  }
  return std::sqrt(acc);
}

double column_norm(const QMatrix& x, int k) {
  double acc = 0.0;
  for (int i = 0; i < x.rows(); ++i) acc += abs(x(i, k)) * abs(x(i, k));
  return std::sqrt(acc);
}

}  // namespace

TEST_CASE("diagonal input yields the identity basis") {
  QMatrix t(3, 3);
  t(0, 0) = Quaternion(1.0);
  t(1, 1) = Quaternion(2, 1, 0, 0);
  t(2, 2) = Quaternion(-1, 3, 0, 0);
  const EigenSystem es = triangular_eigenvectors(t);
  CHECK(es.x == QMatrix::identity(3));
  REQUIRE(es.lambdas.size() == 3);
  CHECK(es.lambdas[0] == Complex(1, 0));
  CHECK(es.lambdas[1] == Complex(2, 1));
  CHECK(es.lambdas[2] == Complex(-1, 3));
}

TEST_CASE("two by two column matches the scalar relation") {
  // T = [[1, g], [0, 2]] with quaternion g: the second eigenvector solves
  // 1*x0 - x0*2 = -g, giving x0 = g exactly since the gap is -1.
  const Quaternion g(0.5, -1, 2, 0.25);
  QMatrix t(2, 2);
  t(0, 0) = Quaternion(1.0);
  t(0, 1) = g;
  t(1, 1) = Quaternion(2.0);
  const EigenSystem es = triangular_eigenvectors(t);
  CHECK(es.x(0, 0) == Quaternion(1.0));
  CHECK(es.x(1, 0) == Quaternion());
  CHECK(es.x(0, 1) == g);  // -g / (1 - 2), computed exactly
  CHECK(es.x(1, 1) == Quaternion(1.0));
  CHECK(column_residual(t, es.x, 1, es.lambdas[1]) <= 1e-15);
}

TEST_CASE("known two by two system end to end") {
  const QMatrix a = sample_2x2();
  const SchurDecomposition d = schur_decompose(a);
  const EigenSystem tri = triangular_eigenvectors(d.t);
  const QMatrix x = full_eigenvectors(d.u, tri).x;

  // Spectrum {1, i} in some order.
  std::vector<Complex> got = tri.lambdas;
  if (got[0].real() < got[1].real()) std::swap(got[0], got[1]);
  CHECK(std::abs(got[0] - Complex(1, 0)) <= 1e-14);
  CHECK(std::abs(got[1] - Complex(0, 1)) <= 1e-14);

  CHECK(eigenpair_error(a, x, tri.lambdas) <= 1e-14);

  // The eigenvector of the class of i is known: (1 - j + k, 2 - j + k) up to
  // right scaling. Compare directions after normalizing by the first entry.
  const int ki = (std::abs(tri.lambdas[0].imag()) > 0.5) ? 0 : 1;
  const Quaternion known0(1, 0, -1, 1);
  const Quaternion known1(2, 0, -1, 1);
  const Quaternion scale = inv(x(0, ki)) * known0;
  CHECK(abs(x(0, ki) * scale - known0) <= 1e-13);
  CHECK(abs(x(1, ki) * scale - known1) <= 1e-13);
}

TEST_CASE("right scaling of an eigenvector stays an eigenvector") {
  const QMatrix a = sample_2x2();
  const SchurDecomposition d = schur_decompose(a);
  const EigenSystem tri = triangular_eigenvectors(d.t);
  const QMatrix x = full_eigenvectors(d.u, tri).x;
  QuatRng rng(11);
  const Quaternion q = rng.unit_quaternion();
  for (int k = 0; k < 2; ++k) {
    const Quaternion lam = from_complex(tri.lambdas[k]);
    const Quaternion mu = conj(q) * lam * q;  // class representative moves
    double acc = 0.0;
    for (int i = 0; i < 2; ++i) {
      Quaternion r;
      for (int j = 0; j < 2; ++j) r = r + a(i, j) * (x(j, k) * q);
      r = r - (x(i, k) * q) * mu;
      acc += abs(r) * abs(r);
    }
    CHECK(std::sqrt(acc) <= 1e-13);
  }
}

TEST_CASE("repeated eigenvalue classes are rejected") {
  QMatrix t(2, 2);
  t(0, 0) = Quaternion(3.0);
  t(0, 1) = Quaternion(1, 1, 0, 0);
  t(1, 1) = Quaternion(3.0);
  CHECK_THROWS_AS(triangular_eigenvectors(t), nondistinct_spectrum_error);
  try {
    triangular_eigenvectors(t);
  } catch (const nondistinct_spectrum_error& e) {
    CHECK(e.first == 0);
    CHECK(e.second == 1);
  }

  // A conjugate pair denotes the same class and is rejected too.
  QMatrix s(2, 2);
  s(0, 0) = Quaternion(2, 1, 0, 0);
  s(1, 1) = Quaternion(2, 1, 0, 0);
  s(0, 1) = Quaternion(1.0);
  CHECK_THROWS_AS(triangular_eigenvectors(s), nondistinct_spectrum_error);
}

TEST_CASE("normalization gives unit columns") {
  QuatRng rng(5);
  const QMatrix t = random_triangular(rng, 9);
  const EigenSystem es = triangular_eigenvectors(t, true);
  for (int k = 0; k < 9; ++k) {
    CHECK(std::abs(column_norm(es.x, k) - 1.0) <= 1e-14);
    CHECK(column_residual(t, es.x, k, es.lambdas[k]) <=
          100.0 * 9 * kEps * frob_norm(t) * column_norm(es.x, k));
  }
}

TEST_CASE("residual bound holds on a larger triangular matrix") {
  QuatRng rng(23);
  const int n = 24;
  const QMatrix t = random_triangular(rng, n);
  const EigenSystem es = triangular_eigenvectors(t);
  const double tnorm = frob_norm(t);
  for (int k = 0; k < n; ++k) {
    CHECK(es.x(k, k).x == 0.0);  // diagonal entry is the real rescue scale
    CHECK(column_residual(t, es.x, k, es.lambdas[k]) <=
          100.0 * n * kEps * tnorm * column_norm(es.x, k));
  }
}

TEST_CASE("basis transform checks its shapes") {
  QMatrix t(2, 2);
  t(0, 0) = Quaternion(1.0);
  t(1, 1) = Quaternion(2.0);
  const EigenSystem es = triangular_eigenvectors(t);
  CHECK_THROWS_AS(full_eigenvectors(QMatrix::identity(3), es), dimension_error);
}
