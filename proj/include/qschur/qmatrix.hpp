#pragma once

#include <cassert>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "qschur/errors.hpp"
#include "qschur/quaternion.hpp"

namespace qschur {

/** @brief Dense quaternion matrix with column-major storage. */
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), d_(static_cast<std::size_t>(rows) * cols) {
    assert(rows >= 0 && cols >= 0);
  }

  static QMatrix identity(int n) {
    QMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = Quaternion(1.0);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Quaternion& operator()(int i, int j) {
    assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
    return d_[static_cast<std::size_t>(i) + static_cast<std::size_t>(j) * rows_];
  }
  const Quaternion& operator()(int i, int j) const {
    assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
    return d_[static_cast<std::size_t>(i) + static_cast<std::size_t>(j) * rows_];
  }

  bool operator==(const QMatrix& r) const {
    return rows_ == r.rows_ && cols_ == r.cols_ && d_ == r.d_;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Quaternion> d_;
};

QMatrix matmul(const QMatrix& a, const QMatrix& b);
QMatrix adjoint(const QMatrix& a);

/** @brief Frobenius norm, scaled against overflow like abs(). */
double frob_norm(const QMatrix& a);

/** @brief Copy of the nr x nc block of a starting at (r0, c0). */
QMatrix block(const QMatrix& a, int r0, int c0, int nr, int nc);

void set_block(QMatrix& a, int r0, int c0, const QMatrix& b);

/**
 * @brief Householder transform P = I - v * tau * v^H.
 *
 * tau is a quaternion satisfying 2*Re(tau) = |tau|^2 * ||v||^2, which makes P
 * unitary; tau = 0 encodes the identity.
 */
struct Reflector {
  std::vector<Quaternion> v;
  Quaternion tau;
};

/**
 * @brief Builds the reflector taking x to beta * e1 with beta = ||x||_2 >= 0 real.
 *
 * Applying the result on the left (P^H * x) yields beta * e1. A zero vector, or
 * one already of that form, produces the identity reflector.
 */
std::pair<Reflector, double> make_reflector(const Quaternion* x, int n);
std::pair<Reflector, double> make_reflector(const std::vector<Quaternion>& x);

/** @brief A(row0 : row0+len, col0 : col1) <- P^H * (that block), len = v.size(). */
void apply_reflector_left(const Reflector& r, QMatrix& a, int row0, int col0, int col1);

/** @brief A(row0 : row1, col0 : col0+len) <- (that block) * P. */
void apply_reflector_right(const Reflector& r, QMatrix& a, int col0, int row0, int row1);

/**
 * @brief Unitary 2x2 rotation G = [[c, -s], [s, conj(c)]] with s real,
 * |c|^2 + s^2 = 1.
 */
struct Rotation2 {
  Quaternion c;
  double s = 0.0;
};

/** @brief Rows (k, k+1) of A over columns [col0, col1) <- G^H * (those rows). */
void apply_rotation_left(const Rotation2& g, QMatrix& a, int k, int col0, int col1);

/** @brief Columns (k, k+1) of A over rows [row0, row1) <- (those columns) * G. */
void apply_rotation_right(const Rotation2& g, QMatrix& a, int k, int row0, int row1);

/**
 * @brief Deterministic random stream used by the matrix generators.
 *
 * Built on std::mt19937_64 (bit-exact across platforms); uniforms take the top
 * 53 bits, normals come from Box-Muller with the second variate cached. A unit
 * quaternion consumes four normals (two Box-Muller pairs) and a matrix entry
 * consumes one unit quaternion followed by one uniform magnitude.
 */
class QuatRng {
 public:
  explicit QuatRng(std::uint64_t seed) : eng_(seed) {}

  double uniform01();
  double normal();
  Quaternion unit_quaternion();

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/**
 * @brief Dense n x n matrix; every entry is a uniform unit quaternion scaled by
 * a uniform magnitude in [0, 1). Entries are drawn in column-major order from a
 * fresh stream seeded with seed.
 */
QMatrix fullrand(int n, std::uint64_t seed);

/**
 * @brief Upper Hessenberg variant of fullrand: entries below the first
 * subdiagonal are exact zeros and consume nothing from the stream.
 */
QMatrix hessrand(int n, std::uint64_t seed);

/**
 * @brief Text format: "QMAT <rows> <cols>" then rows*cols lines in row-major
 * order, each "w x y z" printed with 17 significant digits (bit-exact round
 * trip). Non-finite values and malformed files raise io_error.
 */
QMatrix read_qmatrix(const std::string& path);
void write_qmatrix(const QMatrix& a, const std::string& path);

}  // namespace qschur
