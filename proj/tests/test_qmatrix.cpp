#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "qschur/errors.hpp"
#include "qschur/qmatrix.hpp"
#include "test_support.hpp"

using namespace qschur;
using namespace qschur::testsupport;

namespace {
const Quaternion kJ(0, 0, 1, 0);

/** Dense reflector matrix I - v tau v^H, for cross-checking the fast paths. */
QMatrix reflector_matrix(const Reflector& r) {
  const int n = int(r.v.size());
  QMatrix p = QMatrix::identity(n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) p(i, j) -= r.v[i] * r.tau * conj(r.v[j]);
  return p;
}
}  // namespace

TEST_CASE("identity and multiplication") {
  QMatrix a(1, 1);
  a(0, 0) = kJ;
  const QMatrix sq = matmul(a, a);
  CHECK(sq(0, 0) == Quaternion(-1.0));

  const QMatrix id = QMatrix::identity(3);
  const QMatrix b = fullrand(3, 17);
  CHECK(max_abs_diff(matmul(id, b), b) == 0.0);
  CHECK(max_abs_diff(matmul(b, id), b) == 0.0);
}

TEST_CASE("matmul is associative and adjoint reverses products") {
  const QMatrix a = fullrand(5, 1);
  const QMatrix b = fullrand(5, 2);
  const QMatrix c = fullrand(5, 3);
  CHECK(max_abs_diff(matmul(matmul(a, b), c), matmul(a, matmul(b, c))) <= 1e-13);
  CHECK(max_abs_diff(adjoint(matmul(a, b)), matmul(adjoint(b), adjoint(a))) <= 1e-14);
}

TEST_CASE("frobenius norm of the worked fixture is exactly 6") {
  CHECK(frob_norm(sample_2x2()) == 6.0);
}

TEST_CASE("frobenius norm is overflow safe") {
  QMatrix a(2, 2);
  a(0, 0) = Quaternion(1e200, 1e200, 0, 0);
  a(1, 1) = Quaternion(1e200, 0, 0, 0);
  CHECK(std::isfinite(frob_norm(a)));
  CHECK(frob_norm(a) == doctest::Approx(std::sqrt(3.0) * 1e200));
}

TEST_CASE("block extraction and insertion round trip") {
  const QMatrix a = fullrand(6, 9);
  const QMatrix b = block(a, 1, 2, 3, 4);
  CHECK(b.rows() == 3);
  CHECK(b.cols() == 4);
  CHECK(b(0, 0) == a(1, 2));
  CHECK(b(2, 3) == a(3, 5));
  QMatrix c = a;
  set_block(c, 1, 2, b);
  CHECK(max_abs_diff(c, a) == 0.0);
}

TEST_CASE("reflector: already aligned input gives the exact identity") {
  Quaternion x[2] = {Quaternion(3.0), Quaternion()};
  const auto [r, beta] = make_reflector(x, 2);
  CHECK(r.tau == Quaternion());
  CHECK(beta == 3.0);

  Quaternion z[3] = {Quaternion(), Quaternion(), Quaternion()};
  const auto [rz, bz] = make_reflector(z, 3);
  CHECK(rz.tau == Quaternion());
  CHECK(bz == 0.0);
}

TEST_CASE("reflector: rotates a lagging entry to the front") {
  Quaternion x[2] = {Quaternion(), Quaternion(3.0)};
  const auto [r, beta] = make_reflector(x, 2);
  CHECK(beta == doctest::Approx(3.0));
  QMatrix a(2, 1);
  a(1, 0) = Quaternion(3.0);
  apply_reflector_left(r, a, 0, 0, 1);
  CHECK(abs(a(0, 0) - Quaternion(3.0)) <= 1e-14);
  CHECK(abs(a(1, 0)) <= 1e-14);
}

TEST_CASE("reflector: quaternion entries map to a real nonnegative leader") {
  Quaternion x[2] = {Quaternion(0, 0, 1, 0), Quaternion(0, 0, 0, 1)};  // (j, k)
  const auto [r, beta] = make_reflector(x, 2);
  CHECK(beta == doctest::Approx(std::sqrt(2.0)));
  QMatrix a(2, 1);
  a(0, 0) = x[0];
  a(1, 0) = x[1];
  apply_reflector_left(r, a, 0, 0, 1);
  CHECK(abs(a(0, 0) - Quaternion(std::sqrt(2.0))) <= 1e-14);
  CHECK(abs(a(1, 0)) <= 1e-14);
}

TEST_CASE("reflector: unitary and maps x to beta e1, random inputs") {
  QuatRng rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + int(rng.uniform01() * 6);
    std::vector<Quaternion> x(n);
    for (auto& q : x) q = rng.unit_quaternion() * (rng.uniform01() * 3.0);
    const auto [r, beta] = make_reflector(x.data(), n);
    CHECK(beta >= 0.0);

    const QMatrix p = reflector_matrix(r);
    const QMatrix gram = matmul(adjoint(p), p);
    CHECK(max_abs_diff(gram, QMatrix::identity(n)) <= 1e-13);

    QMatrix col(n, 1);
    for (int i = 0; i < n; ++i) col(i, 0) = x[i];
    apply_reflector_left(r, col, 0, 0, 1);
    double xn = 0.0;
    for (const auto& q : x) xn = std::max(xn, abs(q));
    CHECK(abs(col(0, 0) - Quaternion(beta)) <= 1e-13 * (xn + 1.0));
    for (int i = 1; i < n; ++i) CHECK(abs(col(i, 0)) <= 1e-13 * (xn + 1.0));
  }
}

TEST_CASE("reflector application agrees with the dense product") {
  QuatRng rng(31);
  std::vector<Quaternion> x(3);
  for (auto& q : x) q = rng.unit_quaternion() * (rng.uniform01() + 0.2);
  const auto [r, beta] = make_reflector(x.data(), 3);
  (void)beta;
  const QMatrix p = reflector_matrix(r);

  const QMatrix a = fullrand(3, 77);
  QMatrix left = a;
  apply_reflector_left(r, left, 0, 0, 3);
  CHECK(max_abs_diff(left, matmul(adjoint(p), a)) <= 1e-14);

  QMatrix right = a;
  apply_reflector_right(r, right, 0, 0, 3);
  CHECK(max_abs_diff(right, matmul(a, p)) <= 1e-14);
}

TEST_CASE("reflector applies to interior windows") {
  QuatRng rng(33);
  std::vector<Quaternion> x(2);
  for (auto& q : x) q = rng.unit_quaternion();
  const auto [r, beta] = make_reflector(x.data(), 2);
  (void)beta;
  QMatrix pfull = QMatrix::identity(4);
  const QMatrix p2 = reflector_matrix(r);
  for (int j = 0; j < 2; ++j)
    for (int i = 0; i < 2; ++i) pfull(1 + i, 1 + j) = p2(i, j);

  const QMatrix a = fullrand(4, 5);
  QMatrix left = a;
  apply_reflector_left(r, left, 1, 0, 4);
  CHECK(max_abs_diff(left, matmul(adjoint(pfull), a)) <= 1e-14);

  QMatrix right = a;
  apply_reflector_right(r, right, 1, 0, 4);
  CHECK(max_abs_diff(right, matmul(a, pfull)) <= 1e-14);
}

TEST_CASE("rotation application agrees with the dense product") {
  QuatRng rng(41);
  const Quaternion raw = rng.unit_quaternion();
  const double s = 0.6;
  const Quaternion c = raw * 0.8;  // |c|^2 + s^2 = 1
  const Rotation2 g{c, s};

  QMatrix gfull = QMatrix::identity(4);
  gfull(1, 1) = c;
  gfull(1, 2) = -Quaternion(s);
  gfull(2, 1) = Quaternion(s);
  gfull(2, 2) = conj(c);

  const QMatrix a = fullrand(4, 6);
  QMatrix left = a;
  apply_rotation_left(g, left, 1, 0, 4);
  CHECK(max_abs_diff(left, matmul(adjoint(gfull), a)) <= 1e-14);

  QMatrix right = a;
  apply_rotation_right(g, right, 1, 0, 4);
  CHECK(max_abs_diff(right, matmul(a, gfull)) <= 1e-14);
}

TEST_CASE("random generators are deterministic and shaped") {
  const QMatrix a = fullrand(5, 42);
  const QMatrix b = fullrand(5, 42);
  CHECK(a == b);
  CHECK_FALSE(fullrand(5, 43) == a);

  const QMatrix h = hessrand(6, 42);
  CHECK(exactly_hessenberg(h));
  bool some_nonzero = true;
  for (int i = 0; i + 1 < 6; ++i) some_nonzero = some_nonzero && !(h(i + 1, i) == Quaternion());
  CHECK(some_nonzero);

  QuatRng rng(9);
  for (int i = 0; i < 50; ++i) CHECK(std::abs(abs(rng.unit_quaternion()) - 1.0) <= 1e-14);
}

TEST_CASE("qmat file round trip is bitwise") {
  const QMatrix a = fullrand(4, 1234);
  const std::string path = "qmat_roundtrip_tmp.qmat";
  write_qmatrix(a, path);
  const QMatrix b = read_qmatrix(path);
  CHECK(a == b);
  std::remove(path.c_str());
}

TEST_CASE("qmat reader rejects malformed input") {
  const std::string path = "qmat_bad_tmp.qmat";
  auto write_text = [&](const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    f << text;
  };

  CHECK_THROWS_AS(read_qmatrix("no_such_file.qmat"), io_error);

  write_text("QMAX 1 1\n0 0 0 0\n");
  CHECK_THROWS_AS(read_qmatrix(path), io_error);

  write_text("QMAT 2 2\n1 0 0 0\n");  // too short
  CHECK_THROWS_AS(read_qmatrix(path), io_error);

  write_text("QMAT 1 1\n1 0 0\n");  // short row
  CHECK_THROWS_AS(read_qmatrix(path), io_error);

  write_text("QMAT 1 1\n1 0 0 0 9\n");  // long row
  CHECK_THROWS_AS(read_qmatrix(path), io_error);

  write_text("QMAT 1 1\n1 0 0 zebra\n");
  CHECK_THROWS_AS(read_qmatrix(path), io_error);

  write_text("QMAT 1 1\n1 0 0 0\ntrailing\n");
  CHECK_THROWS_AS(read_qmatrix(path), io_error);

  write_text("QMAT 1 1\n1 0 0 inf\n");
  CHECK_THROWS_AS(read_qmatrix(path), io_error);

  std::remove(path.c_str());
}

TEST_CASE("qmat writer refuses non-finite entries") {
  QMatrix a(1, 1);
  a(0, 0) = Quaternion(std::numeric_limits<double>::infinity(), 0, 0, 0);
  CHECK_THROWS_AS(write_qmatrix(a, "qmat_inf_tmp.qmat"), io_error);
}
